#pragma once

// t-grid scans of scal, threshold, trivial count and (for products) Morse index.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collapse/submersion.hpp"

namespace collapse {

struct ScanOptions {
  Rational t_min;
  Rational t_max;
  std::size_t steps = 64;
  bool linear = false;  // default: geometric spacing
};

// Grid points with exact endpoints; interior points are 12-significant-digit
// decimals, hence exact rationals.
std::vector<Rational> scan_grid(const ScanOptions& options);

struct ScanRow {
  Rational t;
  Rational scal;
  Rational threshold;
  std::uint64_t trivial_count = 0;
  std::optional<std::uint64_t> morse_index;        // products only
  std::optional<double> nearest_degeneracy;         // t of the closest degeneracy in range

  friend bool operator==(const ScanRow&, const ScanRow&) = default;
};

std::vector<ScanRow> scan_serial(const SubmersionModel& model, const ScanOptions& options);
// Rows computed by OpenMP threads, each with its own spectrum streams.
std::vector<ScanRow> scan_parallel(const SubmersionModel& model, const ScanOptions& options);

// Finite decimal when the denominator divides a power of ten, else "p/q".
std::string exact_decimal(const Rational& value);

inline constexpr const char* kScanHeader = "t,scal,threshold,trivial_count,morse_index,nearest_degeneracy";
std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace collapse
