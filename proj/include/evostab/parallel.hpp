#pragma once

#include <cstdlib>
#include <string>
#include <thread>

namespace evostab {

// Worker count for internal parallel loops: the hardware concurrency, capped
// by EVOSTAB_THREADS when that is a positive integer.
inline unsigned thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("EVOSTAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0 && static_cast<unsigned long>(v) < hw) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return hw;
}

}  // namespace evostab
