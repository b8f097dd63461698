#pragma once

// Brute-force searches straight from the definitions. These are the ground
// truth the decision procedures are checked against: a hit is a concrete
// violation, while an empty result only means "nothing found at this
// resolution".

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "evostab/barriers.hpp"
#include "evostab/game.hpp"
#include "evostab/grid.hpp"
#include "evostab/parallel.hpp"

namespace evostab {

struct GridSpec {
  int denom = 4;
  std::vector<Rational> eps_list;
  std::size_t m = 2;
};

struct Counterexample {
  std::vector<MixedStrategy> mutants;
  std::vector<Rational> proportions;
  std::size_t violated_index = 0;
  Rational h_value;
  bool operator==(const Counterexample&) const = default;
};

// All strategies with weights in {0, 1/denom, ..., 1}, lexicographic.
inline std::vector<MixedStrategy> simplex_grid(std::size_t k, int denom) {
  if (k < 1 || denom < 1) throw PreconditionError("simplex grid needs k >= 1 and denom >= 1");
  std::vector<MixedStrategy> out;
  for_each_composition(k, denom, [&](const std::vector<int>& c) {
    std::vector<Rational> w(k);
    for (std::size_t i = 0; i < k; ++i) w[i] = Rational(c[i], denom);
    out.emplace_back(std::move(w));
    return true;
  });
  return out;
}

// Proportions 1e-6 and 1e-4: small enough that mutants outside BR(p) cannot
// produce spurious hits in games with modest payoffs, and a ratio of 100 so
// that unequal proportions expose vertex-dominance failures.
inline std::vector<Rational> default_eps_list() { return {Rational(1, 1000000), Rational(1, 10000)}; }

namespace detail {

inline void validate(const GridSpec& spec) {
  if (spec.denom < 1) throw PreconditionError("grid denominator must be >= 1");
  if (spec.m < 1) throw PreconditionError("m must be >= 1");
  if (spec.eps_list.empty()) throw PreconditionError("eps list is empty");
  for (const auto& e : spec.eps_list)
    if (e <= 0) throw PreconditionError("eps values must be positive");
}

// Every length-m vector over eps_list (first coordinate slowest) with sum <= 1.
inline std::vector<std::vector<Rational>> proportion_vectors(const std::vector<Rational>& eps_list, std::size_t m) {
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> cur(m);
  auto rec = [&](auto&& self, std::size_t pos, const Rational& sum) -> void {
    if (pos == m) {
      out.push_back(cur);
      return;
    }
    for (const auto& e : eps_list) {
      Rational next = sum + e;
      if (next > 1) continue;
      cur[pos] = e;
      self(self, pos + 1, next);
    }
  };
  rec(rec, 0, Rational(0));
  return out;
}

}  // namespace detail

// Searches m-tuples (with repetition) of grid mutants != p and proportion
// vectors from eps_list^m for some h_i <= 0. Mutants are ordered by L1
// distance from p, ties in grid order; tuples are lexicographic in that
// order, then proportions. The first hit in this order is returned no matter
// how many threads run.
inline std::optional<Counterexample> search_mess_counterexample(const SymmetricGame& g, const MixedStrategy& p,
                                                                const GridSpec& spec, unsigned threads = 0) {
  detail::validate(spec);
  detail::require_dim(g, p);
  const std::size_t k = g.k();
  const std::size_t m = spec.m;
  std::vector<MixedStrategy> mutants;
  for (auto& s : simplex_grid(k, spec.denom))
    if (s != p) mutants.push_back(std::move(s));
  std::stable_sort(mutants.begin(), mutants.end(), [&](const MixedStrategy& a, const MixedStrategy& b) {
    return l1_distance(a, p) < l1_distance(b, p);
  });
  const std::size_t n = mutants.size();
  if (n == 0) return std::nullopt;

  // gain[a][b] = u(p, r^b) - u(r^a, r^b); base[a] = u(p, p) - u(r^a, p).
  auto dot = [](const MixedStrategy& x, const std::vector<Rational>& col) {
    Rational t = 0;
    for (std::size_t i = 0; i < col.size(); ++i)
      if (x[i] != 0) t += x[i] * col[i];
    return t;
  };
  std::vector<std::vector<Rational>> gain(n, std::vector<Rational>(n));
  std::vector<Rational> base(n);
  {
    const auto col_p = pure_payoffs(g, p);
    const Rational upp = dot(p, col_p);
    for (std::size_t b = 0; b < n; ++b) {
      const auto col = pure_payoffs(g, mutants[b]);
      const Rational upb = dot(p, col);
      for (std::size_t a = 0; a < n; ++a) gain[a][b] = upb - dot(mutants[a], col);
      base[b] = upp - dot(mutants[b], col_p);
    }
  }
  const auto proportions = detail::proportion_vectors(spec.eps_list, m);
  std::vector<Rational> rest(proportions.size());
  for (std::size_t v = 0; v < proportions.size(); ++v) {
    rest[v] = 1;
    for (const auto& e : proportions[v]) rest[v] -= e;
  }

  struct Hit {
    std::vector<std::size_t> tuple;
    std::size_t proportion = 0;
    std::size_t violated = 0;
  };
  std::atomic<std::size_t> best_block{n};
  std::mutex mu;
  std::vector<std::optional<Hit>> hits(n);

  auto run_block = [&](std::size_t first) -> bool {
    std::vector<std::size_t> tuple(m);
    tuple[0] = first;
    std::optional<Hit> found;
    auto rec = [&](auto&& self, std::size_t pos, std::size_t lo) -> bool {
      if (pos == m) {
        for (std::size_t v = 0; v < proportions.size(); ++v) {
          const auto& eps = proportions[v];
          for (std::size_t i = 0; i < m; ++i) {
            const std::size_t a = tuple[i];
            Rational h = rest[v] * base[a];
            for (std::size_t j = 0; j < m; ++j) h += eps[j] * gain[a][tuple[j]];
            if (h <= 0) {
              found = Hit{tuple, v, i};
              return false;
            }
          }
        }
        return true;
      }
      for (std::size_t b = lo; b < n; ++b) {
        tuple[pos] = b;
        if (!self(self, pos + 1, b)) return false;
      }
      return true;
    };
    rec(rec, 1, first);
    if (!found) return false;
    std::lock_guard<std::mutex> lock(mu);
    hits[first] = std::move(found);
    std::size_t cur = best_block.load();
    while (first < cur && !best_block.compare_exchange_weak(cur, first)) {
    }
    return true;
  };

  if (threads == 0) threads = thread_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  auto worker = [&](unsigned t) {
    for (std::size_t first = t; first < n; first += threads) {
      if (first > best_block.load()) return;
      if (run_block(first)) return;
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  const std::size_t block = best_block.load();
  if (block == n) return std::nullopt;
  const Hit& hit = *hits[block];

  Counterexample cx;
  for (std::size_t a : hit.tuple) cx.mutants.push_back(mutants[a]);
  cx.proportions = proportions[hit.proportion];
  cx.violated_index = hit.violated;
  const MutationSet ms(p, cx.mutants);
  cx.h_value = h_values(g, ms, cx.proportions)[cx.violated_index];
  if (cx.h_value > 0) throw std::logic_error("oracle hit does not replay through h_values");
  return cx;
}

struct EscalationStep {
  int denom = 2;
  std::size_t m = 2;
};

inline std::vector<EscalationStep> default_escalation() { return {{2, 2}, {4, 2}, {8, 2}, {2, 3}, {4, 3}}; }

struct EscalationResult {
  std::optional<Counterexample> counterexample;
  // The resolution that produced the hit, or the last one searched.
  GridSpec resolution;
};

// Runs the schedule in order and stops at the first counterexample.
inline EscalationResult escalate_mess_search(const SymmetricGame& g, const MixedStrategy& p,
                                             const std::vector<EscalationStep>& schedule = default_escalation(),
                                             const std::vector<Rational>& eps_list = default_eps_list(),
                                             unsigned threads = 0) {
  EscalationResult out;
  for (const auto& step : schedule) {
    out.resolution = GridSpec{step.denom, eps_list, step.m};
    out.counterexample = search_mess_counterexample(g, p, out.resolution, threads);
    if (out.counterexample) break;
  }
  return out;
}

struct LocalDominanceViolation {
  MixedStrategy s;
  MixedStrategy r;
};

// Grid points s, r != p within L1 distance `radius` of p; the first pair (r
// outer, s inner, grid order) with u(p,r) < u(s,r) or u(p,r) <= u(r,r).
inline std::optional<LocalDominanceViolation> search_local_dominance_violation(const SymmetricGame& g,
                                                                               const MixedStrategy& p,
                                                                               const Rational& radius, int denom) {
  detail::require_dim(g, p);
  std::vector<MixedStrategy> near;
  for (auto& s : simplex_grid(g.k(), denom))
    if (s != p && l1_distance(s, p) <= radius) near.push_back(std::move(s));
  for (const auto& r : near) {
    const auto col = pure_payoffs(g, r);
    auto u_against_r = [&](const MixedStrategy& x) {
      Rational t = 0;
      for (std::size_t i = 0; i < col.size(); ++i) t += x[i] * col[i];
      return t;
    };
    const Rational upr = u_against_r(p);
    const bool self_fail = !(upr > u_against_r(r));
    for (const auto& s : near)
      if (self_fail || upr < u_against_r(s)) return LocalDominanceViolation{s, r};
  }
  return std::nullopt;
}

}  // namespace evostab
