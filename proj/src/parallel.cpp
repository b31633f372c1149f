#include "jks/parallel.hpp"

#include <cstdlib>
#include <string>

namespace jks {

std::size_t worker_count() {
  std::size_t n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* cap = std::getenv("JKSCATTER_THREADS")) {
    try {
      const long v = std::stol(cap);
      if (v >= 1 && static_cast<std::size_t>(v) < n) n = static_cast<std::size_t>(v);
    } catch (...) {
      // Unparseable values are ignored.
    }
  }
  return n;
}

}  // namespace jks
