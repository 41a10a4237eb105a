#include "smallres/parallel.hpp"

#include <cstdlib>
#include <string>

namespace smallres {

unsigned default_workers() {
  if (const char* env = std::getenv("SMALLRES_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace smallres
