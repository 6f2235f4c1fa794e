#include "collapse/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace collapse {

int thread_count() {
  int threads = omp_get_max_threads();
  if (const char* env = std::getenv("COLLAPSE_SPECTRA_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) threads = std::min(threads, cap);
    } catch (const std::exception&) {
      // Unparseable values are ignored.
    }
  }
  return std::max(threads, 1);
}

}  // namespace collapse
