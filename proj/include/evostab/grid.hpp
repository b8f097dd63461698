#pragma once

#include <cstddef>
#include <vector>

namespace evostab {

// Visits every vector of `parts` nonnegative integers summing to `total`,
// in lexicographic order (first coordinate slowest, ascending). The callback
// returns false to stop early; the function returns false if stopped.
template <class Visitor>
bool for_each_composition(std::size_t parts, int total, Visitor&& visit) {
  std::vector<int> counts(parts, 0);
  if (parts == 0) return true;
  auto rec = [&](auto&& self, std::size_t pos, int left) -> bool {
    if (pos + 1 == parts) {
      counts[pos] = left;
      return visit(static_cast<const std::vector<int>&>(counts));
    }
    for (int c = 0; c <= left; ++c) {
      counts[pos] = c;
      if (!self(self, pos + 1, left - c)) return false;
    }
    return true;
  };
  return rec(rec, 0, total);
}

}  // namespace evostab
