#include <sstream>
#include <string>

using namespace std::string_literals;

#include "collapse/errors.hpp"
#include "collapse/model_io.hpp"
#include "collapse/scan.hpp"
#include "doctest.h"

using namespace collapse;

namespace {

SubmersionModel model(const char* name) { return load_model(std::string(COLLAPSE_DATA_DIR) + "/" + name + ".json"); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("grid") {
  const auto g = scan_grid({Rational(1, 20), 1, 64, false});
  REQUIRE(g.size() == 64);
  CHECK(g.front() == Rational(1, 20));
  CHECK(g.back() == 1);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i - 1] < g[i]);
  // Geometric spacing: ratios of neighbours agree.
  const double r1 = Rational(g[2] / g[1]).get_d();
  const double r2 = Rational(g[40] / g[39]).get_d();
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-9));
  CHECK(scan_grid({1, 2, 2, true}).size() == 2);
  CHECK_THROWS_AS(scan_grid({1, 2, 1, true}), Error);
  CHECK_THROWS_AS(scan_grid({2, 1, 8, true}), Error);
}

TEST_CASE("exact decimals") {
  CHECK(exact_decimal(Rational(1, 20)) == "0.05");
  CHECK(exact_decimal(Rational(7)) == "7");
  CHECK(exact_decimal(Rational(-3, 8)) == "-0.375");
  CHECK(exact_decimal(Rational(1, 3)) == "1/3");
}

TEST_CASE("serial and parallel scans agree and are deterministic") {
  for (const char* name : {"quaternionic-hopf", "s2-x-t2", "torus-fibration", "so4-over-so3"}) {
    const SubmersionModel m = model(name);
    const ScanOptions o{Rational(1, 20), 1, 64, false};
    const auto serial = scan_serial(m, o);
    CHECK(serial == scan_parallel(m, o));
    CHECK(scan_csv(serial) == scan_csv(scan_parallel(m, o)));
  }
}

TEST_CASE("scan rows") {
  const SubmersionModel p = model("s2-x-t2");
  const auto rows = scan_serial(p, {Rational(1, 20), 1, 64, false});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].trivial_count <= rows[i - 1].trivial_count);
    CHECK(rows[i].morse_index.has_value());
  }
  const auto two = lines(scan_csv(scan_serial(p, {Rational(1, 2), 1, 2, false})));
  REQUIRE(two.size() == 3);
  CHECK(two[0] == kScanHeader);

  // Rows straddling t ~ 0.3483 (eta = 16) differ by mul(16) = 5.
  const SubmersionModel q = model("quaternionic-hopf");
  const auto qrows = scan_serial(q, {Rational(3, 10), Rational(2, 5), 5, true});
  CHECK(qrows.front().trivial_count - qrows.back().trivial_count == 5);
  CHECK(!qrows.front().morse_index);
  CHECK(lines(scan_csv(qrows))[1] == "0.3,"s + exact_decimal(qrows[0].scal) + "," + exact_decimal(qrows[0].threshold) +
                                         ",5,n/a,0.348310699749");
}
