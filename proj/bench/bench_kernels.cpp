// Serial reference kernels against their OpenMP counterparts.
// Thread count follows COLLAPSE_SPECTRA_THREADS (else the OpenMP default).

#include <benchmark/benchmark.h>

#include <string>

#include "collapse/model_io.hpp"
#include "collapse/parallel.hpp"
#include "collapse/scan.hpp"
#include "collapse/spectra.hpp"
#include "collapse/variation.hpp"

using namespace collapse;

namespace {

SubmersionModel model(const char* name) { return load_model(std::string(COLLAPSE_DATA_DIR) + "/" + name + ".json"); }

// A skew 4-dimensional lattice; upper bound grows with the argument.
std::vector<std::vector<Rational>> skew_gram() {
  return {{2, 1, 0, 0}, {1, 3, 1, 0}, {0, 1, 2, Rational(1, 2)}, {0, 0, Rational(1, 2), 1}};
}

void BM_LatticeNormsSerial(benchmark::State& state) {
  const auto gram = skew_gram();
  const Rational upper(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lattice_norms_serial(gram, 0, upper));
}

void BM_LatticeNormsParallel(benchmark::State& state) {
  const auto gram = skew_gram();
  const Rational upper(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lattice_norms_parallel(gram, 0, upper));
  state.counters["threads"] = thread_count();
}

void BM_ProductSpectrumSerial(benchmark::State& state) {
  const SubmersionModel m = model("s2-x-t2");
  const Exact T(Rational(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(product_spectrum_below_serial(m, Rational(1, 4), T));
}

void BM_ProductSpectrumParallel(benchmark::State& state) {
  const SubmersionModel m = model("s2-x-t2");
  const Exact T(Rational(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(product_spectrum_below(m, Rational(1, 4), T));
  state.counters["threads"] = thread_count();
}

ScanOptions scan_options(benchmark::State& state) {
  return {Rational(1, 50), 1, static_cast<std::size_t>(state.range(0)), false};
}

void BM_ScanSerial(benchmark::State& state) {
  const SubmersionModel m = model("s2-x-t2");
  const ScanOptions o = scan_options(state);
  for (auto _ : state) benchmark::DoNotOptimize(scan_serial(m, o));
}

void BM_ScanParallel(benchmark::State& state) {
  const SubmersionModel m = model("s2-x-t2");
  const ScanOptions o = scan_options(state);
  for (auto _ : state) benchmark::DoNotOptimize(scan_parallel(m, o));
  state.counters["threads"] = thread_count();
}

}  // namespace

BENCHMARK(BM_LatticeNormsSerial)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LatticeNormsParallel)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ProductSpectrumSerial)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProductSpectrumParallel)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScanSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
