#pragma once

// Invasion margins h_i and invasion barriers.
//
// With w = sum_j eps_j r^j + (1 - sum_j eps_j) p, the margin of mutant i is
//   h_i(eps) = u(p, w) - u(r^i, w) = B_i + sum_j eps_j (A_ij - B_i),
//   B_i = u(p, p) - u(r^i, p),   A_ij = u(p, r^j) - u(r^i, r^j),
// which is affine in eps, so positivity on a box (0, e]^m is decided exactly
// at its corners.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evostab/game.hpp"
#include "evostab/stability.hpp"

namespace evostab {

class MutationSet {
 public:
  MutationSet(MixedStrategy incumbent, std::vector<MixedStrategy> mutants)
      : incumbent_(std::move(incumbent)), mutants_(std::move(mutants)) {
    if (mutants_.empty()) throw PreconditionError("mutation set needs at least one mutant");
    for (const auto& r : mutants_) {
      if (r.size() != incumbent_.size()) throw DimensionError("mutant dimension mismatch");
      if (r == incumbent_) throw PreconditionError("mutant equals the incumbent");
    }
  }

  const MixedStrategy& incumbent() const noexcept { return incumbent_; }
  const std::vector<MixedStrategy>& mutants() const noexcept { return mutants_; }
  std::size_t m() const noexcept { return mutants_.size(); }

 private:
  MixedStrategy incumbent_;
  std::vector<MixedStrategy> mutants_;
};

// Affine coefficients of every h_i: h_i(eps) = base[i] + sum_j slope[i][j] eps_j.
struct MarginCoefficients {
  std::vector<Rational> base;
  std::vector<std::vector<Rational>> slope;
};

inline MarginCoefficients margin_coefficients(const SymmetricGame& g, const MutationSet& ms) {
  const auto& p = ms.incumbent();
  detail::require_dim(g, p);
  const std::size_t m = ms.m();
  // Column payoffs u(., x) as vectors, then dot with the row strategy.
  auto dot = [](const MixedStrategy& a, const std::vector<Rational>& col) {
    Rational t = 0;
    for (std::size_t i = 0; i < col.size(); ++i)
      if (a[i] != 0) t += a[i] * col[i];
    return t;
  };
  const auto up = pure_payoffs(g, p);
  std::vector<std::vector<Rational>> ur;
  ur.reserve(m);
  for (const auto& r : ms.mutants()) ur.push_back(pure_payoffs(g, r));
  MarginCoefficients c;
  c.base.resize(m);
  c.slope.assign(m, std::vector<Rational>(m));
  const Rational upp = dot(p, up);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& ri = ms.mutants()[i];
    c.base[i] = upp - dot(ri, up);
    for (std::size_t j = 0; j < m; ++j) c.slope[i][j] = dot(p, ur[j]) - dot(ri, ur[j]) - c.base[i];
  }
  return c;
}

namespace detail {

inline void check_proportions(std::span<const Rational> eps, std::size_t m, bool strictly_positive) {
  if (eps.size() != m) throw DimensionError("expected one proportion per mutant");
  Rational total = 0;
  for (const auto& e : eps) {
    if (e < 0 || (strictly_positive && e == 0))
      throw InfeasibleProportions("mutant proportions must be positive");
    total += e;
  }
  if (total > 1) throw InfeasibleProportions("mutant proportions sum to " + to_string(total) + " > 1");
}

}  // namespace detail

// h_i = u(p, w) - u(r^i, w), evaluated directly through the payoff function.
inline std::vector<Rational> h_values(const SymmetricGame& g, const MutationSet& ms, std::span<const Rational> eps) {
  detail::check_proportions(eps, ms.m(), false);
  const auto w = population_state(ms.incumbent(), ms.mutants(), eps);
  const auto uw = pure_payoffs(g, w);
  auto dot = [&](const MixedStrategy& a) {
    Rational t = 0;
    for (std::size_t i = 0; i < uw.size(); ++i) t += a[i] * uw[i];
    return t;
  };
  const Rational upw = dot(ms.incumbent());
  std::vector<Rational> h;
  h.reserve(ms.m());
  for (const auto& r : ms.mutants()) h.push_back(upw - dot(r));
  return h;
}

inline bool check_robust_at(const SymmetricGame& g, const MutationSet& ms, std::span<const Rational> eps) {
  detail::check_proportions(eps, ms.m(), true);
  const auto h = h_values(g, ms, eps);
  return std::all_of(h.begin(), h.end(), [](const Rational& x) { return x > 0; });
}

struct BarrierResult {
  enum class Kind { barrier, none };
  Kind kind = Kind::none;
  // kind == barrier: h_i > 0 on (0, epsilon]^m, or on (0, epsilon)^m when
  // `open` is set (the supremum is not attained).
  Rational epsilon;
  bool open = false;
  bool cap_applied = false;
  // kind == none: proportions where mutant `violated_index` has h <= 0.
  std::vector<Rational> counter_proportions;
  std::size_t violated_index = 0;
  Rational counter_h;

  bool is_barrier() const noexcept { return kind == Kind::barrier; }
  bool operator==(const BarrierResult&) const = default;
};

namespace detail {

// Per-mutant bound from the corner rule: whether any positive barrier exists,
// its value (unbounded when empty) and whether the bound itself is valid.
struct MutantBound {
  bool exists = false;
  std::optional<Rational> value;  // nullopt: unbounded
  bool inclusive = true;
};

inline MutantBound corner_rule(const Rational& base, const std::vector<Rational>& slope,
                               bool inclusive_if_any_positive, std::optional<std::size_t> own_index) {
  Rational negative_sum = 0;
  bool any_positive = false;
  for (std::size_t j = 0; j < slope.size(); ++j) {
    if (slope[j] < 0) negative_sum += slope[j];
    if (slope[j] > 0 && (inclusive_if_any_positive || (own_index && *own_index == j))) any_positive = true;
  }
  MutantBound b;
  if (base < 0) return b;
  if (negative_sum < 0) {
    if (base == 0) return b;
    b.exists = true;
    b.value = base / -negative_sum;
    b.inclusive = any_positive;
    return b;
  }
  if (base > 0 || any_positive) {
    b.exists = true;
    return b;
  }
  return b;  // h_i vanishes identically
}

}  // namespace detail

// Largest e in (0, 1/m] with h_i > 0 for all i on (0, e]^m.
inline BarrierResult max_box_barrier(const SymmetricGame& g, const MutationSet& ms) {
  const std::size_t m = ms.m();
  const auto c = margin_coefficients(g, ms);
  const Rational cap = Rational(1, static_cast<long>(m));
  BarrierResult out;
  std::optional<Rational> best;
  bool best_open = false;
  for (std::size_t i = 0; i < m; ++i) {
    const auto bound = detail::corner_rule(c.base[i], c.slope[i], true, std::nullopt);
    if (!bound.exists) {
      // Build explicit violating proportions: eps_j = delta on negative
      // slopes, smaller on positive ones so the sum stays <= 0.
      Rational delta = Rational(1, static_cast<long>(2 * m));
      Rational neg = 0, pos = 0;
      for (const auto& s : c.slope[i]) (s < 0 ? neg : pos) += s;
      std::vector<Rational> eps(m, delta);
      if (c.base[i] < 0) {
        Rational total = neg + pos;
        if (total > 0) delta = std::min(delta, Rational(-c.base[i] / total));
        std::fill(eps.begin(), eps.end(), delta);
      } else if (pos > 0) {
        const Rational shrink = std::min(Rational(1), Rational(-neg / pos));
        for (std::size_t j = 0; j < m; ++j)
          if (c.slope[i][j] > 0) eps[j] = delta * shrink;
      }
      out.kind = BarrierResult::Kind::none;
      out.violated_index = i;
      out.counter_h = h_values(g, ms, eps)[i];
      out.counter_proportions = std::move(eps);
      return out;
    }
    if (!bound.value) continue;
    if (!best || *bound.value < *best) {
      best = bound.value;
      best_open = !bound.inclusive;
    } else if (*bound.value == *best) {
      best_open = best_open || !bound.inclusive;
    }
  }
  out.kind = BarrierResult::Kind::barrier;
  if (!best || cap < *best) {
    out.epsilon = cap;
    out.cap_applied = true;
  } else {
    out.epsilon = *best;
    out.open = best_open;
    out.cap_applied = *best == cap;
  }
  return out;
}

struct UniformBarrier {
  // Valid proportion bound for each of m arbitrary mutants.
  Rational per_mutant;
  // Bound on the total mutant fraction, independent of m.
  Rational total_fraction;
  bool open = false;
  bool cap_applied = false;
  std::size_t m = 1;
  bool operator==(const UniformBarrier&) const = default;
};

// Barrier for the pure mutants {e^j : j != k} around p = e^k that stays valid
// when any subset of them is absent. This lets w = sum beta_j e^j + (1 - sum
// beta_j) p represent every population created by m mutants with
// proportions <= total/m.
inline UniformBarrier uniform_barrier(const SymmetricGame& g, const MixedStrategy& p, std::size_t m) {
  if (m < 1) throw PreconditionError("m must be positive");
  if (!is_mess(g, p)) throw PreconditionError("no uniform barrier guaranteed: p is not M-ESS");
  const std::size_t k = g.k();
  const std::size_t home = *p.pure_index();
  UniformBarrier u;
  u.m = m;
  Rational total = 1;
  if (k > 1) {
    std::vector<MixedStrategy> pure;
    for (std::size_t j = 0; j < k; ++j)
      if (j != home) pure.push_back(MixedStrategy::pure(k, j));
    const MutationSet ms(p, pure);
    const auto c = margin_coefficients(g, ms);
    const Rational cap = Rational(1, static_cast<long>(pure.size()));
    std::optional<Rational> best;
    bool open = false;
    for (std::size_t i = 0; i < pure.size(); ++i) {
      // Only mutant i's own proportion is guaranteed positive.
      const auto bound = detail::corner_rule(c.base[i], c.slope[i], false, i);
      if (!bound.exists) throw std::logic_error("M-ESS without a pure-mutant barrier");
      if (!bound.value) continue;
      if (!best || *bound.value < *best) {
        best = bound.value;
        open = !bound.inclusive;
      } else if (*bound.value == *best) {
        open = open || !bound.inclusive;
      }
    }
    if (!best || cap < *best) {
      total = cap;
      u.cap_applied = true;
    } else {
      total = *best;
      u.open = open;
      u.cap_applied = *best == cap;
    }
  }
  u.total_fraction = total;
  u.per_mutant = total / static_cast<long>(m);
  return u;
}

}  // namespace evostab
