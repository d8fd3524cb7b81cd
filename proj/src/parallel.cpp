#include "idp/parallel.hpp"

#include <cstdlib>
#include <string>

namespace idp {

int thread_count() {
  static const int count = [] {
    if (const char* env = std::getenv("IDP_NUM_THREADS")) {
      try {
        const int n = std::stoi(env);
        if (n >= 1) return n;
      } catch (const std::exception&) {
      }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }();
  return count;
}

}  // namespace idp
