#pragma once

namespace collapse {

// Threads for the OpenMP kernels: omp_get_max_threads(), capped by the
// COLLAPSE_SPECTRA_THREADS environment variable when it holds a positive integer.
int thread_count();

}  // namespace collapse
