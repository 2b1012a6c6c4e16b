#include "morseq/parallel.hpp"

#include <cstdlib>
#include <string>

namespace morseq {

std::size_t thread_count() {
  if (const char* env = std::getenv("MORSEQ_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
  }
  const auto hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace morseq
