#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evostab/errors.hpp"
#include "evostab/rational.hpp"

namespace evostab {

// A point of the probability simplex with exact weights.
class MixedStrategy {
 public:
  MixedStrategy() = default;

  explicit MixedStrategy(std::vector<Rational> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw InvalidStrategy("strategy has no weights");
    Rational total = 0;
    for (const auto& w : weights_) {
      if (w < 0) throw InvalidStrategy("negative weight " + to_string(w));
      total += w;
    }
    if (total != 1) throw InvalidStrategy("weights sum to " + to_string(total) + ", not 1");
  }

  static MixedStrategy pure(std::size_t k, std::size_t index) {
    if (index >= k) throw DimensionError("pure strategy index out of range");
    std::vector<Rational> w(k, Rational(0));
    w[index] = 1;
    return MixedStrategy(std::move(w));
  }

  std::size_t size() const noexcept { return weights_.size(); }
  const Rational& operator[](std::size_t i) const { return weights_[i]; }
  std::span<const Rational> weights() const noexcept { return weights_; }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < weights_.size(); ++i)
      if (weights_[i] > 0) s.push_back(i);
    return s;
  }

  // Index i when this is the vertex e^i.
  std::optional<std::size_t> pure_index() const {
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (weights_[i] == 1) return i;
      if (weights_[i] != 0) return std::nullopt;
    }
    return std::nullopt;
  }

  bool is_pure() const { return pure_index().has_value(); }

  bool operator==(const MixedStrategy&) const = default;

 private:
  std::vector<Rational> weights_;
};

inline std::string to_string(const MixedStrategy& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += to_string(s[i]);
  }
  return out + "]";
}

// Symmetric two-player game; entry (i, j) is u(e^i, e^j).
class SymmetricGame {
 public:
  SymmetricGame() = default;

  SymmetricGame(const std::vector<std::vector<Rational>>& payoffs,
                std::vector<std::string> labels = {})
      : k_(payoffs.size()), labels_(std::move(labels)) {
    if (k_ == 0) throw DimensionError("game needs at least one pure strategy");
    entries_.reserve(k_ * k_);
    for (const auto& row : payoffs) {
      if (row.size() != k_) throw DimensionError("payoff matrix is not square");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
    if (!labels_.empty() && labels_.size() != k_)
      throw DimensionError("labels must have length k");
  }

  std::size_t k() const noexcept { return k_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * k_ + j]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::vector<std::vector<Rational>> rows() const {
    std::vector<std::vector<Rational>> out(k_);
    for (std::size_t i = 0; i < k_; ++i)
      out[i].assign(entries_.begin() + i * k_, entries_.begin() + (i + 1) * k_);
    return out;
  }

  bool operator==(const SymmetricGame&) const = default;

 private:
  std::size_t k_ = 0;
  std::vector<Rational> entries_;
  std::vector<std::string> labels_;
};

namespace detail {

inline void require_dim(const SymmetricGame& g, const MixedStrategy& s) {
  if (s.size() != g.k())
    throw DimensionError("strategy of length " + std::to_string(s.size()) +
                         " used with a game of size " + std::to_string(g.k()));
}

}  // namespace detail

// (U q)_i = u(e^i, q) for every pure strategy i.
inline std::vector<Rational> pure_payoffs(const SymmetricGame& g, const MixedStrategy& q) {
  detail::require_dim(g, q);
  std::vector<Rational> out(g.k(), Rational(0));
  for (std::size_t j = 0; j < g.k(); ++j) {
    if (q[j] == 0) continue;
    for (std::size_t i = 0; i < g.k(); ++i) out[i] += g(i, j) * q[j];
  }
  return out;
}

// u(p, q) = sum_ij p_i q_j U_ij.
inline Rational payoff(const SymmetricGame& g, const MixedStrategy& p, const MixedStrategy& q) {
  detail::require_dim(g, p);
  const auto uq = pure_payoffs(g, q);
  Rational total = 0;
  for (std::size_t i = 0; i < g.k(); ++i)
    if (p[i] != 0) total += p[i] * uq[i];
  return total;
}

// Pure best replies J; BR(p) is the face spanned by {e^j : j in J}.
inline std::vector<std::size_t> best_response_set(const SymmetricGame& g, const MixedStrategy& p) {
  const auto up = pure_payoffs(g, p);
  const Rational best = *std::max_element(up.begin(), up.end());
  std::vector<std::size_t> J;
  for (std::size_t j = 0; j < up.size(); ++j)
    if (up[j] == best) J.push_back(j);
  return J;
}

inline bool is_nash(const SymmetricGame& g, const MixedStrategy& p) {
  const auto J = best_response_set(g, p);
  for (std::size_t i : p.support())
    if (!std::binary_search(J.begin(), J.end(), i)) return false;
  return true;
}

inline bool is_strict_nash(const SymmetricGame& g, const MixedStrategy& p) {
  const auto idx = p.pure_index();
  if (!idx) {
    detail::require_dim(g, p);
    return false;
  }
  const auto J = best_response_set(g, p);
  return J.size() == 1 && J.front() == *idx;
}

// Population state sum_j eps_j r^j + (1 - sum_j eps_j) p.
inline MixedStrategy population_state(const MixedStrategy& p, std::span<const MixedStrategy> mutants,
                                      std::span<const Rational> eps) {
  if (mutants.size() != eps.size()) throw DimensionError("one proportion per mutant required");
  Rational rest = 1;
  for (const auto& e : eps) rest -= e;
  if (rest < 0) throw InfeasibleProportions("mutant proportions sum above 1");
  std::vector<Rational> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = rest * p[i];
  for (std::size_t j = 0; j < mutants.size(); ++j) {
    if (mutants[j].size() != p.size()) throw DimensionError("mutant dimension mismatch");
    if (eps[j] < 0) throw InfeasibleProportions("negative mutant proportion");
    for (std::size_t i = 0; i < p.size(); ++i) w[i] += eps[j] * mutants[j][i];
  }
  return MixedStrategy(std::move(w));
}

}  // namespace evostab
