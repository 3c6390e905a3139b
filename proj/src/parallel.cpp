#include "surfknot/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace surfknot {

unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SURFKNOT_THREADS")) {
    try {
      long cap = std::stol(env);
      if (cap >= 1) return static_cast<unsigned>(cap);
    } catch (const std::exception&) {
      // unparsable values fall back to the default
    }
  }
  return hw;
}

}  // namespace surfknot
