// collapse-spectra: degeneracy values, scans, pinching certificates and
// multiplicity reports for the canonical variation of a submersion model.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "collapse/bifurcation.hpp"
#include "collapse/errors.hpp"
#include "collapse/model_io.hpp"
#include "collapse/scan.hpp"
#include "collapse/submersion.hpp"

using namespace collapse;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitSchema = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitCertifyFail = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SchemaViolation:
    case ErrorKind::InconsistentModel: return kExitSchema;
    case ErrorKind::HypothesisViolation:
    case ErrorKind::SpectrumExhausted:
    case ErrorKind::NotAProduct:
    case ErrorKind::NoWitness: return kExitHypothesis;
    case ErrorKind::InvalidArgument: return kExitUsage;
  }
  return kExitUsage;
}

std::string fmt(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string term(const Exact& coef, const std::string& var, bool first) {
  if (coef.is_zero()) return "";
  std::string s = coef.str();
  const bool negative = coef.sign() < 0;
  if (negative) s = (-coef).str();
  if (!var.empty() && s == "1") s.clear();
  if (!var.empty() && !coef.is_rational()) s = "(" + s + ")";
  std::string body = s + var;
  if (first) return (negative ? "-" : "") + body;
  return (negative ? " - " : " + ") + body;
}

std::string polynomial(const QuadraticRoot& r) {
  std::string s = term(r.a2(), "u^2", true);
  s += term(r.a1(), "u", s.empty());
  s += term(r.a0(), "", s.empty());
  return s.empty() ? "0" : s;
}

std::optional<Certificate> try_certificate(const SubmersionModel& model) {
  if (!model.pinching) return std::nullopt;
  try {
    return pinching_certificate(model);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::HypothesisViolation) throw;
    return std::nullopt;
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << content;
}

struct RangeFlags {
  std::string t_min = "1/10";
  std::string t_max = "1";
  Rational lo() const { return parse_decimal(t_min); }
  Rational hi() const { return parse_decimal(t_max); }
};

void add_range(CLI::App* cmd, RangeFlags& range) {
  cmd->add_option("--t-min", range.t_min, "smallest t (decimal or p/q)")->capture_default_str();
  cmd->add_option("--t-max", range.t_max, "largest t (decimal or p/q)")->capture_default_str();
}

int run_degeneracies(const std::string& model_path, const RangeFlags& range, std::optional<std::size_t> count,
                     const std::string& json_path) {
  const SubmersionModel model = load_model(model_path);
  DegeneracyList list =
      count ? leading_degeneracies(model, *count) : degeneracy_values(model, range.lo(), range.hi());
  certify(model, list, try_certificate(model));

  std::cout << "model " << model.name << ": " << list.records.size() << " degeneracy value"
            << (list.records.size() == 1 ? "" : "s");
  if (count) {
    std::cout << " (first " << *count << " crossings)\n";
  } else {
    std::cout << " in [" << exact_decimal(range.lo()) << ", " << exact_decimal(range.hi()) << "]\n";
  }
  if (list.scal_independent_of_t) {
    std::cout << "note: scal independent of t" << (list.locally_rigid ? "; locally rigid family" : "") << "\n";
  }
  std::size_t q = 1;
  for (const DegeneracyRecord& r : list.records) {
    std::cout << "t_" << q++ << " ~ " << fmt(r.t_approx()) << "  u = t^2 root of " << polynomial(r.u) << " ("
              << branch_name(r.u.branch()) << ")  eta = " << r.eta.str() << "  mul = " << r.multiplicity
              << "  jump = " << r.j_jump << "  certified = " << certification_name(r.certified_by) << "\n";
  }
  if (!json_path.empty()) {
    const Rational json_lo = count ? Rational(0) : range.lo();
    const Rational json_hi = count ? Rational(0) : range.hi();
    write_file(json_path, degeneracies_to_json(model, list, json_lo, json_hi).dump(2) + "\n");
  }
  return 0;
}

int run_scan(const std::string& model_path, const RangeFlags& range, std::size_t steps, bool linear, bool serial,
             const std::string& csv_path) {
  const SubmersionModel model = load_model(model_path);
  const ScanOptions options{range.lo(), range.hi(), steps, linear};
  const auto rows = serial ? scan_serial(model, options) : scan_parallel(model, options);
  const std::string csv = scan_csv(rows);
  if (csv_path.empty()) {
    std::cout << csv;
  } else {
    write_file(csv_path, csv);
  }
  return 0;
}

int run_certify(const std::string& model_path) {
  const SubmersionModel model = load_model(model_path);
  const Certificate cert = pinching_certificate(model);
  std::cout << "model " << model.name << ": k1 = " << to_string(cert.k1) << ", k2 = " << to_string(cert.k2)
            << ", tau = " << to_string(cert.tau) << "\n";
  std::cout << "phi1 = " << cert.phi1.str() << " (" << cert.phi1_source << "), mu1 = " << cert.mu1.str() << " ("
            << cert.mu1_source << ")\n";
  for (const InequalityCheck& c : cert.checks) std::cout << "  " << c.describe() << "\n";
  if (!cert.pass) {
    std::cout << "fail: " << cert.first_failure()->describe() << "\n";
    return kExitCertifyFail;
  }
  std::cout << "pass: t* = " << cert.t_star()->str() << " ~ " << fmt(cert.t_star_approx())
            << "; every degeneracy value in (0, t*) is a bifurcation value (Morse index change)\n";
  return 0;
}

std::string scal_formula(const DeformedScal& s) {
  std::string out = term(Exact(s.a), "/s^2", true);
  out += term(Exact(s.b), "", out.empty());
  out += term(Exact(Rational(-s.c)), " s^2", out.empty());
  return out.empty() ? "0" : out;
}

// sqrt(u) in closed form; plain rational when u is a rational square.
std::string sqrt_form(const QuadSurd& u) {
  if (u.is_rational()) {
    const Rational& p = u.rational_part();
    mpz_class num, den;
    mpz_sqrt(num.get_mpz_t(), p.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), p.get_den_mpz_t());
    if (num * num == p.get_num() && den * den == p.get_den()) return to_string(Rational(num, den));
  }
  return "sqrt(" + u.str() + ")";
}

int run_smax(const std::string& family, int n) {
  const SubmersionModel model = hopf_fibration(parse_hopf_family(family), n);
  const DeformedScal s = deformed_scal(model);
  const ScalPositivity p = scal_positivity_root(s);
  std::cout << "family " << family << ", n = " << n << ": scal(g_s) = " << scal_formula(s) << "\n";
  if (p.kind != ScalPositivity::Kind::Root) {
    std::cout << "s_max: " << kind_name(p.kind) << "\n";
    return 0;
  }
  const QuadSurd u = s.c != 0 ? QuadSurd::upper_root(s.c, -s.b, -s.a) : QuadSurd::make(-s.a / s.b, 0, 0);
  std::cout << "s_max^2 = " << u.str() << "\n";
  std::cout << "s_max = " << sqrt_form(u) << " ~ " << fmt(p.s_max(), 15) << "\n";
  return 0;
}

int run_report(const std::string& model_path, const RangeFlags& range) {
  const SubmersionModel model = load_model(model_path);
  const MultiplicityReport report = multiplicity_report(model, range.lo(), range.hi());
  std::cout << "model " << model.name << " on [" << exact_decimal(range.lo()) << ", " << exact_decimal(range.hi())
            << "]\n";
  if (report.witnessed.empty() && report.unwitnessed.empty()) {
    std::cout << "no certified bifurcation values; no claim\n";
    return 0;
  }
  auto line = [](const MultiplicityEntry& e) {
    std::cout << "t_q ~ " << fmt(e.record.t_approx()) << " (eta = " << e.record.eta.str() << ", "
              << certification_name(e.record.certified_by) << "): " << e.witness_kind << " "
              << e.index_below << " at t = " << exact_decimal(e.around.t_below) << ", " << e.index_above
              << " at t = " << exact_decimal(e.around.t_above);
  };
  for (const MultiplicityEntry& e : report.witnessed) {
    line(e);
    std::cout << "; " << MultiplicityReport::kConclusion << "\n";
  }
  for (const MultiplicityEntry& e : report.unwitnessed) {
    line(e);
    std::cout << "; no witness (index vanishes on one side)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral bifurcation analysis for collapsing Riemannian submersions"};
  app.require_subcommand(1);

  std::string model_path;
  RangeFlags range;
  std::string json_path;
  std::string csv_path;
  std::optional<std::size_t> count;
  std::size_t steps = 64;
  bool linear = false;
  bool serial = false;
  std::string family;
  int n = 1;

  auto* deg = app.add_subcommand("degeneracies", "list degeneracy values");
  deg->add_option("model", model_path, "model JSON file")->required();
  add_range(deg, range);
  deg->add_option("--count", count, "first q crossings instead of a t range");
  deg->add_option("--json", json_path, "also write the records as JSON");

  auto* scan = app.add_subcommand("scan", "CSV scan over a t grid");
  scan->add_option("model", model_path, "model JSON file")->required();
  add_range(scan, range);
  scan->add_option("--steps", steps, "number of grid points (>= 2)")->capture_default_str();
  scan->add_flag("--linear", linear, "linear instead of geometric spacing");
  scan->add_flag("--serial", serial, "use the serial reference kernel");
  scan->add_option("--csv", csv_path, "output file (default stdout)");

  auto* cert = app.add_subcommand("certify", "Ricci-pinching certificate");
  cert->add_option("model", model_path, "model JSON file")->required();

  auto* smax = app.add_subcommand("smax", "scal-positivity bound of a Hopf family");
  smax->add_option("--family", family, "complex | quaternionic-diagonal | octonionic")->required();
  smax->add_option("--n", n, "dimension parameter")->capture_default_str();

  auto* report = app.add_subcommand("report", "multiplicity report");
  report->add_option("model", model_path, "model JSON file")->required();
  add_range(report, range);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*deg) return run_degeneracies(model_path, range, count, json_path);
    if (*scan) return run_scan(model_path, range, steps, linear, serial, csv_path);
    if (*cert) return run_certify(model_path);
    if (*smax) return run_smax(family, n);
    if (*report) return run_report(model_path, range);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
