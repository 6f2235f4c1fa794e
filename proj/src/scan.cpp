#include "collapse/scan.hpp"

#include <cmath>
#include <cstdio>

#include "collapse/bifurcation.hpp"
#include "collapse/errors.hpp"
#include "collapse/parallel.hpp"

namespace collapse {

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct ScanContext {
  std::vector<Rational> grid;
  std::vector<double> degeneracies;  // approximate t values, increasing
};

ScanContext prepare(const SubmersionModel& model, const ScanOptions& options) {
  ScanContext ctx;
  ctx.grid = scan_grid(options);
  for (const DegeneracyRecord& r : degeneracy_values(model, options.t_min, options.t_max).records) {
    ctx.degeneracies.push_back(r.t_approx());
  }
  return ctx;
}

ScanRow compute_row(const SubmersionModel& model, const ScanContext& ctx, std::size_t i) {
  ScanRow row;
  row.t = ctx.grid[i];
  row.scal = scal_t(model, row.t);
  row.threshold = threshold(model, row.t);
  row.trivial_count = trivial_count(model, row.t, true);
  if (model.is_product) row.morse_index = morse_index_product(model, row.t);
  const double t = row.t.get_d();
  for (double d : ctx.degeneracies) {
    if (!row.nearest_degeneracy || std::abs(d - t) < std::abs(*row.nearest_degeneracy - t)) {
      row.nearest_degeneracy = d;
    }
  }
  return row;
}

}  // namespace

std::vector<Rational> scan_grid(const ScanOptions& o) {
  if (!(o.t_min > 0 && o.t_min < o.t_max)) {
    throw Error(ErrorKind::InvalidArgument, "scan needs 0 < tMin < tMax");
  }
  if (o.steps < 2) throw Error(ErrorKind::InvalidArgument, "scan needs at least 2 steps");
  std::vector<Rational> grid;
  grid.reserve(o.steps);
  grid.push_back(o.t_min);
  const double lo = o.t_min.get_d();
  const double hi = o.t_max.get_d();
  for (std::size_t i = 1; i + 1 < o.steps; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(o.steps - 1);
    const double t = o.linear ? lo + f * (hi - lo) : lo * std::pow(hi / lo, f);
    grid.push_back(parse_decimal(format_double(t)));
  }
  grid.push_back(o.t_max);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) {
      throw Error(ErrorKind::InvalidArgument, "too many steps: grid points collide at 12 significant digits");
    }
  }
  return grid;
}

std::vector<ScanRow> scan_serial(const SubmersionModel& model, const ScanOptions& options) {
  const ScanContext ctx = prepare(model, options);
  std::vector<ScanRow> rows;
  for (std::size_t i = 0; i < ctx.grid.size(); ++i) rows.push_back(compute_row(model, ctx, i));
  return rows;
}

std::vector<ScanRow> scan_parallel(const SubmersionModel& model, const ScanOptions& options) {
  const ScanContext ctx = prepare(model, options);
  const auto n = static_cast<long>(ctx.grid.size());
  std::vector<ScanRow> rows(ctx.grid.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (long i = 0; i < n; ++i) {
    try {
      rows[static_cast<std::size_t>(i)] = compute_row(model, ctx, static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(collapse_scan_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string exact_decimal(const Rational& value) {
  mpz_class den = value.get_den();
  unsigned twos = 0;
  unsigned fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return to_string(value);
  const unsigned digits = std::max(twos, fives);
  if (digits == 0) return value.get_num().get_str();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const mpz_class scaled = value.get_num() * scale / value.get_den();
  mpz_class mag = abs(scaled);
  std::string s = mag.get_str();
  if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
  s.insert(s.size() - digits, ".");
  return (scaled < 0 ? "-" : "") + s;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = std::string(kScanHeader) + "\n";
  for (const ScanRow& r : rows) {
    out += exact_decimal(r.t) + "," + to_string(r.scal) + "," + to_string(r.threshold) + "," +
           std::to_string(r.trivial_count) + "," + (r.morse_index ? std::to_string(*r.morse_index) : "n/a") + "," +
           (r.nearest_degeneracy ? format_double(*r.nearest_degeneracy) : "none") + "\n";
  }
  return out;
}

}  // namespace collapse
