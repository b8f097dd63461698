#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "evostab/game.hpp"

namespace evostab {

inline SymmetricGame example1_game() { return SymmetricGame({{Rational(-1), Rational(0)}, {Rational(0), Rational(-1)}}); }

inline SymmetricGame example2_game() { return SymmetricGame({{Rational(-1), Rational(0)}, {Rational(0), Rational(0)}}); }

// [[(V-C)/2, V], [0, V/2]] with strategies Hawk, Dove.
inline SymmetricGame hawk_dove_game(const Rational& value, const Rational& cost) {
  if (!(value > 0 && value < cost)) throw PreconditionError("hawk-dove needs 0 < V < C");
  return SymmetricGame({{Rational((value - cost) / 2), value}, {Rational(0), Rational(value / 2)}},
                       {"Hawk", "Dove"});
}

namespace detail {

// Uniform integer in [lo, hi]; the modulo keeps the sequence identical across
// standard libraries, unlike std::uniform_int_distribution.
inline long draw(std::mt19937_64& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(rng() % span);
}

}  // namespace detail

// Entries drawn uniformly from {lo, ..., hi}; deterministic in `seed`.
inline SymmetricGame random_game(std::size_t k, std::uint64_t seed, long lo = -3, long hi = 3) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Rational>> u(k, std::vector<Rational>(k));
  for (auto& row : u)
    for (auto& x : row) x = Rational(detail::draw(rng, lo, hi));
  return SymmetricGame(u);
}

// Entries a/b with a in [-max_num, max_num] and b in [1, max_den].
inline SymmetricGame random_rational_game(std::size_t k, std::mt19937_64& rng, long max_num = 6, long max_den = 3) {
  std::vector<std::vector<Rational>> u(k, std::vector<Rational>(k));
  for (auto& row : u)
    for (auto& x : row) {
      const long a = detail::draw(rng, -max_num, max_num);
      const long b = detail::draw(rng, 1, max_den);
      x = Rational(a, b);
    }
  return SymmetricGame(u);
}

}  // namespace evostab
