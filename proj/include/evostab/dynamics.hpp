#pragma once

// Replicator dynamics of an incumbent and m mutant strains, integrated with
// fixed-step classical RK4. This is the only floating-point part of the
// library: the restricted game is computed exactly and converted once.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "evostab/game.hpp"

namespace evostab {

using RealMatrix = std::vector<std::vector<double>>;

enum class Outcome { restored, invaded, neutral_drift, undecided };

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::restored: return "restored";
    case Outcome::invaded: return "invaded";
    case Outcome::neutral_drift: return "neutral_drift";
    case Outcome::undecided: return "undecided";
  }
  return "undecided";
}

struct InvasionScenario {
  SymmetricGame game;
  std::vector<MixedStrategy> strategies;  // incumbent first
  std::vector<double> initial_shares;
  double dt = 0.01;
  double t_end = 200.0;
  int stride = 10;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> shares;
  Outcome outcome = Outcome::undecided;
};

inline constexpr double kDefaultOutcomeTolerance = 1e-4;

// M_ab = u(s^a, s^b).
inline RealMatrix restricted_game(const SymmetricGame& g, const std::vector<MixedStrategy>& strategies) {
  std::vector<std::vector<Rational>> cols;
  cols.reserve(strategies.size());
  for (const auto& s : strategies) cols.push_back(pure_payoffs(g, s));
  RealMatrix m(strategies.size(), std::vector<double>(strategies.size()));
  for (std::size_t a = 0; a < strategies.size(); ++a)
    for (std::size_t b = 0; b < strategies.size(); ++b) {
      Rational v = 0;
      for (std::size_t i = 0; i < g.k(); ++i) v += strategies[a][i] * cols[b][i];
      m[a][b] = to_double(v);
    }
  return m;
}

inline Outcome classify_outcome(const Trajectory& traj, double tol = kDefaultOutcomeTolerance) {
  if (traj.shares.empty()) throw PreconditionError("empty trajectory");
  const double initial = traj.shares.front()[0];
  const double final_share = traj.shares.back()[0];
  if (final_share >= 1.0 - tol) return Outcome::restored;
  if (final_share <= initial - tol) {
    // Still declining over the last tenth of the horizon.
    const double t0 = traj.times.front(), t1 = traj.times.back();
    const double mark = t1 - 0.1 * (t1 - t0);
    std::size_t at = 0;
    while (at + 1 < traj.times.size() && traj.times[at + 1] <= mark) ++at;
    if (traj.shares[at][0] > final_share) return Outcome::invaded;
  }
  double max_change = 0.0;
  for (const auto& x : traj.shares)
    for (std::size_t a = 0; a < x.size(); ++a)
      max_change = std::max(max_change, std::abs(x[a] - traj.shares.front()[a]));
  if (max_change < tol) return Outcome::neutral_drift;
  return Outcome::undecided;
}

namespace detail {

inline void replicator_field(const RealMatrix& m, const std::vector<double>& x, std::vector<double>& dx) {
  const std::size_t n = x.size();
  std::vector<double> fitness(n, 0.0);
  double mean = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) fitness[a] += m[a][b] * x[b];
    mean += x[a] * fitness[a];
  }
  for (std::size_t a = 0; a < n; ++a) dx[a] = x[a] * (fitness[a] - mean);
}

}  // namespace detail

inline Trajectory simulate(const InvasionScenario& sc, double tol = kDefaultOutcomeTolerance) {
  const std::size_t n = sc.strategies.size();
  if (n == 0) throw PreconditionError("scenario needs an incumbent");
  if (sc.initial_shares.size() != n) throw DimensionError("one initial share per strategy required");
  for (std::size_t a = 0; a < n; ++a) {
    detail::require_dim(sc.game, sc.strategies[a]);
    if (a > 0 && sc.strategies[a] == sc.strategies[0]) throw PreconditionError("mutant equals the incumbent");
  }
  double total = 0.0;
  for (double x : sc.initial_shares) {
    if (!std::isfinite(x) || x < 0.0) throw PreconditionError("initial shares must be finite and nonnegative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) throw PreconditionError("initial shares must sum to 1");
  if (!(sc.initial_shares[0] > 0.0)) throw PreconditionError("incumbent share must be positive");
  if (!(sc.dt > 0.0) || !(sc.t_end > 0.0) || sc.stride < 1)
    throw PreconditionError("dt, t_end and stride must be positive");

  const auto m = restricted_game(sc.game, sc.strategies);
  const long steps = std::lround(sc.t_end / sc.dt);
  Trajectory traj;
  std::vector<double> x = sc.initial_shares, k1(n), k2(n), k3(n), k4(n), tmp(n);
  traj.times.push_back(0.0);
  traj.shares.push_back(x);
  for (long step = 1; step <= steps; ++step) {
    const double h = sc.dt;
    detail::replicator_field(m, x, k1);
    for (std::size_t a = 0; a < n; ++a) tmp[a] = x[a] + 0.5 * h * k1[a];
    detail::replicator_field(m, tmp, k2);
    for (std::size_t a = 0; a < n; ++a) tmp[a] = x[a] + 0.5 * h * k2[a];
    detail::replicator_field(m, tmp, k3);
    for (std::size_t a = 0; a < n; ++a) tmp[a] = x[a] + h * k3[a];
    detail::replicator_field(m, tmp, k4);
    double sum = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      tmp[a] = x[a] + h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
      if (!std::isfinite(tmp[a])) throw IntegrationDiverged(static_cast<double>(step - 1) * h);
      tmp[a] = std::max(tmp[a], 0.0);
      sum += tmp[a];
    }
    if (!(sum > 0.0)) throw IntegrationDiverged(static_cast<double>(step - 1) * h);
    for (std::size_t a = 0; a < n; ++a) x[a] = tmp[a] / sum;
    if (step % sc.stride == 0 || step == steps) {
      traj.times.push_back(static_cast<double>(step) * h);
      traj.shares.push_back(x);
    }
  }
  traj.outcome = classify_outcome(traj, tol);
  return traj;
}

// Header t,share_0,...,share_m; 12 significant digits; trailing outcome comment.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const std::size_t n = traj.shares.empty() ? 0 : traj.shares.front().size();
  out << "t";
  for (std::size_t a = 0; a < n; ++a) out << ",share_" << a;
  out << "\n";
  char buf[64];
  for (std::size_t r = 0; r < traj.times.size(); ++r) {
    std::snprintf(buf, sizeof buf, "%.12g", traj.times[r]);
    out << buf;
    for (double v : traj.shares[r]) {
      std::snprintf(buf, sizeof buf, "%.12g", v);
      out << "," << buf;
    }
    out << "\n";
  }
  out << "# outcome=" << to_string(traj.outcome) << "\n";
}

}  // namespace evostab
