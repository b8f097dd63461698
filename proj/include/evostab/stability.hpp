#pragma once

// Decision procedures for Nash, strict Nash, ESS, stability against multiple
// simultaneous mutations (M-ESS) and (strict) local dominance. Everything is
// reduced to finitely many exact comparisons except the ESS test on boundary
// best-response cones with three or more free directions, which falls back to
// a certified grid.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "evostab/game.hpp"
#include "evostab/grid.hpp"
#include "evostab/linalg.hpp"

namespace evostab {

struct PureWitness {
  std::size_t j = 0;
  std::optional<std::size_t> l;
  bool operator==(const PureWitness&) const = default;
};

struct StrategyWitness {
  MixedStrategy q;
  bool operator==(const StrategyWitness&) const = default;
};

struct Witness {
  std::string flag;
  std::string reason;
  std::variant<PureWitness, StrategyWitness> detail;
  bool operator==(const Witness&) const = default;
};

struct Decision {
  bool holds = false;
  std::optional<Witness> witness;
};

enum class EssStatus { stable, not_stable, indeterminate };

struct EssDecision {
  EssStatus status = EssStatus::indeterminate;
  std::optional<Witness> witness;
  // Grid denominator that settled the question; 0 when decided in closed form.
  int grid_denominator = 0;
};

struct EssOptions {
  // Certified grid runs at denominators 2, 4, ... up to this value.
  int max_denominator = 64;
};

struct StabilityReport {
  bool is_nash = false;
  bool is_strict_nash = false;
  bool is_ess = false;
  bool is_mess = false;
  bool is_locally_dominant = false;
  bool is_strictly_locally_dominant = false;
  std::optional<Witness> witness;
  bool operator==(const StabilityReport&) const = default;
};

namespace detail {

inline bool contains(const std::vector<std::size_t>& sorted, std::size_t x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

inline Witness pure_witness(std::string flag, std::string reason, std::size_t j,
                            std::optional<std::size_t> l = std::nullopt) {
  return Witness{std::move(flag), std::move(reason), PureWitness{j, l}};
}

// Negated symmetric part of U evaluated on two direction vectors:
//   N(a, b) = -(a^T U b + b^T U a) / 2.
inline Rational neg_sym_form(const SymmetricGame& g, const linalg::Vector& a, const linalg::Vector& b) {
  Rational total = 0;
  const std::size_t k = g.k();
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] == 0 && b[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (a[i] != 0 && b[j] != 0) total += a[i] * g(i, j) * b[j];
      if (b[i] != 0 && a[j] != 0) total += b[i] * g(i, j) * a[j];
    }
  }
  return -total / 2;
}

// q = p + t z with the largest t <= 1 keeping q in the simplex.
inline MixedStrategy step_along(const MixedStrategy& p, const linalg::Vector& z) {
  Rational t = 1;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] < 0) t = std::min(t, Rational(p[i] / -z[i]));
  std::vector<Rational> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = p[i] + t * z[i];
  return MixedStrategy(std::move(w));
}

struct CopositivityResult {
  EssStatus status = EssStatus::indeterminate;
  linalg::Vector witness;  // y >= 0, y != 0, y^T M y <= 0 when not_stable
  int grid_denominator = 0;
};

// Strict copositivity of M: y^T M y > 0 for all y >= 0, y != 0.
inline CopositivityResult strict_copositivity(const linalg::Matrix& m, int max_denominator) {
  const std::size_t n = m.size();
  CopositivityResult out;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i] <= 0) {
      out.status = EssStatus::not_stable;
      out.witness.assign(n, Rational(0));
      out.witness[i] = 1;
      return out;
    }
  }
  if (n == 1) {
    out.status = EssStatus::stable;
    return out;
  }
  if (n == 2) {
    const auto& a = m[0][0];
    const auto& b = m[0][1];
    const auto& c = m[1][1];
    if (b >= 0 || b * b < a * c) {
      out.status = EssStatus::stable;
    } else {
      out.status = EssStatus::not_stable;
      out.witness = {Rational(-b), a};
    }
    return out;
  }
  Rational max_abs = 0;
  for (const auto& row : m)
    for (const auto& x : row) max_abs = std::max(max_abs, abs(x));
  // |g(y) - g(y')| <= ||y - y'||_1 * 2 max|M|, and every simplex point lies
  // within L1 distance n/d of the grid of denominator d.
  for (int d = 2; d <= max_denominator; d *= 2) {
    std::optional<Rational> min_value;
    linalg::Vector y(n);
    bool refuted = false;
    for_each_composition(n, d, [&](const std::vector<int>& counts) {
      for (std::size_t i = 0; i < n; ++i) y[i] = counts[i];
      Rational v = linalg::quadratic_form(m, y);
      if (v <= 0) {
        refuted = true;
        return false;
      }
      if (!min_value || v < *min_value) min_value = v;
      return true;
    });
    out.grid_denominator = d;
    if (refuted) {
      out.status = EssStatus::not_stable;
      out.witness = y;
      return out;
    }
    // Grid values are d^2 g(y); compare with d^2 * 2 max|M| n / d.
    if (*min_value > 2 * max_abs * static_cast<long>(n) * d) {
      out.status = EssStatus::stable;
      return out;
    }
  }
  out.status = EssStatus::indeterminate;
  return out;
}

}  // namespace detail

inline Decision decide_nash(const SymmetricGame& g, const MixedStrategy& p) {
  const auto J = best_response_set(g, p);
  for (std::size_t i : p.support())
    if (!detail::contains(J, i))
      return {false, detail::pure_witness("nash", "pure strategy j earns more against p than support member l", J.front(), i)};
  return {true, std::nullopt};
}

inline Decision decide_strict_nash(const SymmetricGame& g, const MixedStrategy& p) {
  const auto J = best_response_set(g, p);
  const auto idx = p.pure_index();
  if (idx && J.size() == 1 && J.front() == *idx) return {true, std::nullopt};
  for (std::size_t j : J)
    if (!idx || j != *idx)
      return {false, detail::pure_witness("strict_nash", "e^j is a best reply to p other than p", j)};
  throw std::logic_error("unreachable: best-response set exhausted");
}

// ESS via "p is Nash and u(p,q) > u(q,q) on BR(p) \ {p}". On the face
// F = hull{e^j : j in J} we have u(p,q) - u(q,q) = -(q-p)^T U (q-p), so the
// question is strict negativity of the symmetrized form on the cone of
// feasible directions: free zero-sum moves inside supp(p), nonnegative moves
// toward J \ supp(p). The free part is minimized out exactly (Schur
// complement), leaving strict copositivity of a |J \ supp(p)|-square matrix.
inline EssDecision decide_ess(const SymmetricGame& g, const MixedStrategy& p, const EssOptions& opts = {}) {
  EssDecision out;
  const auto nash = decide_nash(g, p);
  if (!nash.holds) {
    out.status = EssStatus::not_stable;
    out.witness = nash.witness;
    out.witness->flag = "ess";
    return out;
  }
  const std::size_t k = g.k();
  const auto J = best_response_set(g, p);
  const auto S = p.support();
  std::vector<std::size_t> T;
  for (std::size_t j : J)
    if (!detail::contains(S, j)) T.push_back(j);

  const std::size_t anchor = S.front();
  auto direction = [&](std::size_t to) {
    linalg::Vector v(k, Rational(0));
    v[to] += 1;
    v[anchor] -= 1;
    return v;
  };
  std::vector<linalg::Vector> free_dirs, cone_dirs;
  for (std::size_t a : S)
    if (a != anchor) free_dirs.push_back(direction(a));
  for (std::size_t t : T) cone_dirs.push_back(direction(t));

  auto combine = [&](const linalg::Vector& x, const linalg::Vector& y) {
    linalg::Vector z(k, Rational(0));
    for (std::size_t a = 0; a < free_dirs.size(); ++a)
      for (std::size_t i = 0; i < k; ++i) z[i] += x[a] * free_dirs[a][i];
    for (std::size_t b = 0; b < cone_dirs.size(); ++b)
      for (std::size_t i = 0; i < k; ++i) z[i] += y[b] * cone_dirs[b][i];
    return z;
  };
  auto fail_with = [&](const linalg::Vector& z) {
    out.status = EssStatus::not_stable;
    out.witness = Witness{"ess", "q in BR(p) \\ {p} with u(p,q) <= u(q,q)",
                          StrategyWitness{detail::step_along(p, z)}};
    return out;
  };

  const std::size_t nf = free_dirs.size(), nc = cone_dirs.size();
  linalg::Matrix nxx = linalg::zeros(nf, nf), nxy = linalg::zeros(nf, nc), nyy = linalg::zeros(nc, nc);
  for (std::size_t a = 0; a < nf; ++a)
    for (std::size_t b = 0; b < nf; ++b) nxx[a][b] = detail::neg_sym_form(g, free_dirs[a], free_dirs[b]);
  for (std::size_t a = 0; a < nf; ++a)
    for (std::size_t b = 0; b < nc; ++b) nxy[a][b] = detail::neg_sym_form(g, free_dirs[a], cone_dirs[b]);
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = 0; b < nc; ++b) nyy[a][b] = detail::neg_sym_form(g, cone_dirs[a], cone_dirs[b]);

  const auto pd = linalg::check_positive_definite(nxx);
  if (!pd.positive_definite) return fail_with(combine(pd.witness, linalg::Vector(nc, Rational(0))));
  if (nc == 0) {
    out.status = EssStatus::stable;
    return out;
  }

  // M = Nyy - Nxy^T Nxx^{-1} Nxy.
  linalg::Matrix reduced = nyy;
  std::vector<linalg::Vector> solved(nc);
  for (std::size_t b = 0; b < nc; ++b) {
    linalg::Vector col(nf);
    for (std::size_t a = 0; a < nf; ++a) col[a] = nxy[a][b];
    solved[b] = linalg::solve(pd.factor, col);
  }
  for (std::size_t b1 = 0; b1 < nc; ++b1)
    for (std::size_t b2 = 0; b2 < nc; ++b2)
      for (std::size_t a = 0; a < nf; ++a) reduced[b1][b2] -= nxy[a][b1] * solved[b2][a];

  const auto cop = detail::strict_copositivity(reduced, opts.max_denominator);
  out.grid_denominator = cop.grid_denominator;
  if (cop.status == EssStatus::stable) {
    out.status = EssStatus::stable;
    return out;
  }
  if (cop.status == EssStatus::indeterminate) {
    out.status = EssStatus::indeterminate;
    return out;
  }
  // Minimizing free part: x = -Nxx^{-1} Nxy y.
  linalg::Vector x(nf, Rational(0));
  for (std::size_t b = 0; b < nc; ++b)
    for (std::size_t a = 0; a < nf; ++a) x[a] -= solved[b][a] * cop.witness[b];
  return fail_with(combine(x, cop.witness));
}

// Robustness against multiple mutations, as three finite checks over the pure
// best replies J of p:
//   (1) p is Nash;
//   (2) u(p, e^l) >= u(e^j, e^l) for every j in J with e^j != p and every l;
//   (3) u(p, e^j) >  u(e^j, e^j) for every such j.
inline Decision decide_mess(const SymmetricGame& g, const MixedStrategy& p) {
  const auto nash = decide_nash(g, p);
  if (!nash.holds) {
    Decision d = nash;
    d.witness->flag = "mess";
    return d;
  }
  const std::size_t k = g.k();
  const auto J = best_response_set(g, p);
  const auto idx = p.pure_index();
  const auto up = [&] {
    // u(p, e^l) for every l.
    std::vector<Rational> v(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i)
      if (p[i] != 0)
        for (std::size_t l = 0; l < k; ++l) v[l] += p[i] * g(i, l);
    return v;
  }();
  for (std::size_t j : J) {
    if (idx && *idx == j) continue;
    for (std::size_t l = 0; l < k; ++l)
      if (up[l] < g(j, l))
        return {false, detail::pure_witness("mess", "best reply e^j beats p against e^l", j, l)};
    if (!(up[j] > g(j, j)))
      return {false, detail::pure_witness("mess", "best reply e^j does at least as well as p against itself", j)};
  }
  return {true, std::nullopt};
}

// Local dominance is equivalent to M-ESS.
inline Decision decide_local_dominance(const SymmetricGame& g, const MixedStrategy& p) {
  auto d = decide_mess(g, p);
  if (d.witness) d.witness->flag = "locally_dominant";
  return d;
}

// p = e^k is strictly locally dominant iff for every j != k either
// u_jk < u_kk, or u_jk = u_kk and u_jl < u_kl for every l != k.
inline Decision decide_strict_local_dominance(const SymmetricGame& g, const MixedStrategy& p) {
  const auto idx = p.pure_index();
  if (!idx) {
    detail::require_dim(g, p);
    const auto S = p.support();
    return {false, detail::pure_witness("strictly_locally_dominant", "mixed strategies are never strictly locally dominant", S[0], S[1])};
  }
  detail::require_dim(g, p);
  const std::size_t k = *idx;
  for (std::size_t j = 0; j < g.k(); ++j) {
    if (j == k) continue;
    if (g(j, k) < g(k, k)) continue;
    if (g(j, k) > g(k, k))
      return {false, detail::pure_witness("strictly_locally_dominant", "e^j is a better reply to p", j)};
    for (std::size_t l = 0; l < g.k(); ++l)
      if (l != k && !(g(j, l) < g(k, l)))
        return {false, detail::pure_witness("strictly_locally_dominant", "tied best reply e^j is not beaten by p against e^l", j, l)};
  }
  return {true, std::nullopt};
}

inline bool is_ess(const SymmetricGame& g, const MixedStrategy& p, const EssOptions& opts = {}) {
  const auto d = decide_ess(g, p, opts);
  if (d.status == EssStatus::indeterminate)
    throw IndeterminateError("ESS test exhausted grid resolution " + std::to_string(opts.max_denominator));
  return d.status == EssStatus::stable;
}
inline bool is_mess(const SymmetricGame& g, const MixedStrategy& p) { return decide_mess(g, p).holds; }
inline bool is_locally_dominant(const SymmetricGame& g, const MixedStrategy& p) {
  return decide_local_dominance(g, p).holds;
}
inline bool is_strictly_locally_dominant(const SymmetricGame& g, const MixedStrategy& p) {
  return decide_strict_local_dominance(g, p).holds;
}

inline void check_report_invariants(const StabilityReport& r) {
  auto implies = [](bool a, bool b) { return !a || b; };
  const bool ok = implies(r.is_strict_nash, r.is_strictly_locally_dominant) &&
                  implies(r.is_strictly_locally_dominant, r.is_locally_dominant) &&
                  r.is_mess == r.is_locally_dominant && implies(r.is_mess, r.is_ess) &&
                  implies(r.is_ess, r.is_nash);
  if (!ok) throw std::logic_error("stability flags violate the implication chain");
  const bool all = r.is_nash && r.is_strict_nash && r.is_ess && r.is_mess && r.is_locally_dominant &&
                   r.is_strictly_locally_dominant;
  if (!all && !r.witness) throw std::logic_error("false flag without witness");
}

// Runs every predicate; the witness explains the first false flag in the
// order nash, strict_nash, ess, mess, locally_dominant, strictly_locally_dominant.
inline StabilityReport analyze(const SymmetricGame& g, const MixedStrategy& p, const EssOptions& opts = {}) {
  StabilityReport r;
  const auto nash = decide_nash(g, p);
  const auto strict = decide_strict_nash(g, p);
  const auto ess = decide_ess(g, p, opts);
  if (ess.status == EssStatus::indeterminate)
    throw IndeterminateError("ESS test for " + to_string(p) + " exhausted grid resolution " +
                             std::to_string(opts.max_denominator));
  const auto mess = decide_mess(g, p);
  const auto ld = decide_local_dominance(g, p);
  const auto sld = decide_strict_local_dominance(g, p);
  r.is_nash = nash.holds;
  r.is_strict_nash = strict.holds;
  r.is_ess = ess.status == EssStatus::stable;
  r.is_mess = mess.holds;
  r.is_locally_dominant = ld.holds;
  r.is_strictly_locally_dominant = sld.holds;
  for (const auto* w : {&nash.witness, &strict.witness, &ess.witness, &mess.witness, &ld.witness, &sld.witness}) {
    if (*w) {
      r.witness = **w;
      break;
    }
  }
  check_report_invariants(r);
  return r;
}

struct DisjointSupportCheck {
  bool holds = true;
  // (s, r) with u(p, r) <= u(s, r).
  std::optional<std::pair<MixedStrategy, MixedStrategy>> counterexample;
};

inline Rational l1_distance(const MixedStrategy& a, const MixedStrategy& b) {
  Rational d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += abs(Rational(a[i] - b[i]));
  return d;
}

// Empirical check that u(p, r) > u(s, r) for grid points r != p within L1
// distance `radius` of p and every grid point s whose support misses supp(p).
// Not used by any decision procedure.
inline DisjointSupportCheck check_disjoint_support_strictness(const SymmetricGame& g, const MixedStrategy& p,
                                                              const Rational& radius, int denom) {
  if (!is_mess(g, p)) throw PreconditionError("p is not M-ESS");
  if (radius <= 0 || denom < 1) throw PreconditionError("radius and denominator must be positive");
  const std::size_t k = g.k();
  const auto S = p.support();
  std::vector<MixedStrategy> near, disjoint;
  for_each_composition(k, denom, [&](const std::vector<int>& c) {
    std::vector<Rational> w(k);
    for (std::size_t i = 0; i < k; ++i) w[i] = Rational(c[i], denom);
    MixedStrategy s(std::move(w));
    bool misses = true;
    for (std::size_t i : S) misses = misses && s[i] == 0;
    if (misses) disjoint.push_back(s);
    if (s != p && l1_distance(s, p) <= radius) near.push_back(std::move(s));
    return true;
  });
  DisjointSupportCheck out;
  for (const auto& r : near) {
    const auto ur = pure_payoffs(g, r);
    Rational upr = 0;
    for (std::size_t i = 0; i < k; ++i) upr += p[i] * ur[i];
    for (const auto& s : disjoint) {
      Rational usr = 0;
      for (std::size_t i = 0; i < k; ++i) usr += s[i] * ur[i];
      if (!(upr > usr)) {
        out.holds = false;
        out.counterexample = std::make_pair(s, r);
        return out;
      }
    }
  }
  return out;
}

}  // namespace evostab
