// SPDX-License-Identifier: Apache-2.0
#include "cubic/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cubic {

int default_threads() {
  if (const char* env = std::getenv("CUBIC_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // fall through to the hardware count
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace cubic
