#include <cmath>
#include <random>

#include "collapse/bifurcation.hpp"
#include "collapse/errors.hpp"
#include "collapse/model_io.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace collapse;

namespace {

SubmersionModel model(const char* name) { return load_model(std::string(COLLAPSE_DATA_DIR) + "/" + name + ".json"); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

// Independent float solution of a/u + b - c u = (m-1) eta for u > 0.
double crossing_t(double a, double b, double c, int m, double eta) {
  const double p = (m - 1) * eta - b;
  const double u = c == 0 ? a / p : (-p + std::sqrt(p * p + 4 * a * c)) / (2 * c);
  return std::sqrt(u);
}

// threshold is strictly decreasing in u when a > 0, so a tight bracket around
// the root must straddle eta.
void check_exact_crossing(const SubmersionModel& m, const DegeneracyRecord& r) {
  const DeformedScal s = deformed_scal(m);
  r.u.refine_to(Rational(1, 1000000000000L));
  const Rational lo = r.u.lo();
  const Rational hi = r.u.hi();
  REQUIRE(lo < hi);
  const int dm = m.total_dim() - 1;
  CHECK(Exact(Rational(s.at_square(lo) / dm)) > r.eta);
  CHECK(Exact(Rational(s.at_square(hi) / dm)) < r.eta);
  // Descriptor polynomial is proportional to c u^2 + ((m-1) eta - b) u - a.
  CHECK(r.u.a2() * Exact(-s.a) == r.u.a0() * Exact(s.c));
  CHECK(r.u.a1() * Exact(-s.a) == r.u.a0() * (r.eta * Exact(Rational(dm)) - Exact(s.b)));
}

}  // namespace

TEST_CASE("threshold") {
  CHECK(threshold(model("quaternionic-hopf"), 1) == 7);
  const SubmersionModel p = model("s2-x-t2");
  for (const Rational& t : {Rational(1, 3), Rational(2, 7), Rational(5)}) CHECK(threshold(p, t) == 2 / (3 * t * t));
}

TEST_CASE("quaternionic Hopf degeneracy values") {
  const SubmersionModel m = model("quaternionic-hopf");
  const DegeneracyList list = degeneracy_values(m, Rational(1, 10), 1);
  // eta = 72 crosses at t ~ 0.12497 >= 0.1, so three values lie in [0.1, 1].
  REQUIRE(list.records.size() == 3);
  const double etas[] = {72, 40, 16};
  const std::uint64_t muls[] = {30, 14, 5};
  for (std::size_t i = 0; i < 3; ++i) {
    const DegeneracyRecord& r = list.records[i];
    CHECK(r.eta == Exact(Rational(static_cast<long>(etas[i]))));
    CHECK(r.multiplicity == muls[i]);
    CHECK(r.multiplicity == oracle::sp1_invariant_harmonics(1, 2 * static_cast<int>(3 - i)));
    CHECK(r.t_approx() == doctest::Approx(crossing_t(6, 48, 12, 7, etas[i])).epsilon(1e-12));
    check_exact_crossing(m, r);
  }
  CHECK(list.records[2].t_approx() == doctest::Approx(0.3483).epsilon(1e-4));
  // u = (3 sqrt 2 - 4) / 2 exactly: bracket the closed form.
  const double closed = std::sqrt((3 * std::sqrt(2.0) - 4) / 2);
  CHECK(list.records[2].t_approx() == doctest::Approx(closed).epsilon(1e-14));
  CHECK(list.records[1].t_approx() == doctest::Approx(std::sqrt((-32 + std::sqrt(1032.0)) / 4)).epsilon(1e-14));

  // t ~ 0.3483 lies inside (0, 0.35].
  const DegeneracyList narrow = degeneracy_values(m, Rational(1, 100), Rational(7, 20));
  REQUIRE(narrow.records.size() >= 2);
  CHECK(narrow.records.back().eta == Exact(16));
  CHECK(narrow.records[narrow.records.size() - 2].eta == Exact(40));
}

TEST_CASE("degeneracy values are complete and sorted") {
  const SubmersionModel m = model("quaternionic-hopf");
  const DegeneracyList list = degeneracy_values(m, Rational(1, 50), 1);
  // Base eigenvalues 4k(k+3) with threshold(1/50) > eta: k = 1..K.
  const Rational top = threshold(m, Rational(1, 50));
  std::size_t expected = 0;
  for (long k = 1; Rational(4 * k * (k + 3)) < top; ++k) ++expected;
  CHECK(list.records.size() == expected);
  for (std::size_t i = 1; i < list.records.size(); ++i) {
    CHECK(list.records[i - 1].u.compare(list.records[i].u) == std::strong_ordering::less);
  }
  CHECK_THROWS_AS(degeneracy_values(m, 1, Rational(1, 2)), Error);
  CHECK_THROWS_AS(degeneracy_values(m, 0, 1), Error);
}

TEST_CASE("complex Hopf has no degeneracy in (0, 1]") {
  const SubmersionModel m = model("complex-hopf");
  CHECK(degeneracy_values(m, Rational(1, 1000), 1).records.empty());
}

TEST_CASE("product degeneracy at t = 1 / (pi sqrt 6)") {
  const SubmersionModel m = model("s2-x-t2");
  const DegeneracyList list = degeneracy_values(m, Rational(1, 10), 1);
  REQUIRE(list.records.size() == 1);
  const DegeneracyRecord& r = list.records[0];
  CHECK(r.eta == Exact::pi2() * Exact(4));
  CHECK(r.multiplicity == 4);
  CHECK(r.t_approx() == doctest::Approx(1 / (std::numbers::pi * std::sqrt(6.0))).epsilon(1e-13));
}

TEST_CASE("torus fibration is locally rigid") {
  const DegeneracyList list = degeneracy_values(model("torus-fibration"), Rational(1, 100), 1);
  CHECK(list.records.empty());
  CHECK(list.scal_independent_of_t);
  CHECK(list.locally_rigid);
  const DegeneracyList report = equivariant_bifurcation_report(model("torus-fibration"), Rational(1, 100), 1);
  CHECK(report.records.empty());
  CHECK(report.locally_rigid);
}

TEST_CASE("trivial count") {
  const SubmersionModel m = model("quaternionic-hopf");
  CHECK(trivial_count(m, Rational(1, 2), true) == 0);
  CHECK(trivial_count(m, Rational(3, 10), true) == 5);
  CHECK(trivial_count(m, 1, true) == 0);
  const DegeneracyList list = degeneracy_values(m, Rational(1, 10), 1);
  const DegeneracyRecord& r16 = list.records[2];
  CHECK(trivial_count_at(m, r16, true) == 0);
  CHECK(trivial_count_at(m, r16, false) == 5);
}

TEST_CASE("trivial count is non-increasing in t") {
  for (const char* name : {"quaternionic-hopf", "so4-over-so3", "s2-x-t2", "octonionic-hopf"}) {
    const SubmersionModel m = model(name);
    std::uint64_t previous = trivial_count(m, Rational(1, 40), true);
    for (long i = 2; i <= 80; ++i) {
      const std::uint64_t now = trivial_count(m, oracle::q(i, 80), true);
      CHECK(now <= previous);
      previous = now;
    }
  }
}

TEST_CASE("leading degeneracies accumulate at 0") {
  const SubmersionModel m = model("quaternionic-hopf");
  const DegeneracyList list = leading_degeneracies(m, 10);
  REQUIRE(list.records.size() == 10);
  for (std::size_t i = 1; i < 10; ++i) {
    CHECK(list.records[i].u.compare(list.records[i - 1].u) == std::strong_ordering::less);
    CHECK(list.records[i - 1].eta < list.records[i].eta);
  }
  CHECK(list.records[9].t_approx() < list.records[0].t_approx() / 4);
  for (const auto& r : list.records) check_exact_crossing(m, r);
  CHECK(kind_of([] { leading_degeneracies(model("complex-hopf"), 3); }) == ErrorKind::HypothesisViolation);
}

TEST_CASE("trivial count drops by mul(eta) across each crossing") {
  const SubmersionModel m = model("quaternionic-hopf");
  const DegeneracyList list = leading_degeneracies(m, 10);
  for (const auto& r : list.records) {
    const Neighborhood n = neighborhood(m, r);
    CHECK(r.u.compare(n.t_below * n.t_below) == std::strong_ordering::greater);
    CHECK(r.u.compare(n.t_above * n.t_above) == std::strong_ordering::less);
    const std::uint64_t below = trivial_count(m, n.t_below, true);
    const std::uint64_t above = trivial_count(m, n.t_above, true);
    CHECK(below - above == r.multiplicity);
    CHECK(r.j_jump == static_cast<std::int64_t>(r.multiplicity));
    // Halving the offsets leaves the counts unchanged.
    const Rational mid_below = (n.t_below + Rational(r.t_approx())) / 2;
    if (r.u.compare(mid_below * mid_below) == std::strong_ordering::greater) {
      CHECK(trivial_count(m, mid_below, true) == below);
    }
  }
}

TEST_CASE("equivariant report hypotheses") {
  const DegeneracyList q = equivariant_bifurcation_report(model("quaternionic-hopf"), Rational(1, 100), Rational(7, 20));
  REQUIRE(!q.records.empty());
  for (const auto& r : q.records) CHECK(r.certified_by == Certification::Equivariant);
  CHECK(q.records.back().eta == Exact(16));

  CHECK(kind_of([] { equivariant_bifurcation_report(model("complex-hopf"), Rational(1, 10), 1); }) ==
        ErrorKind::HypothesisViolation);
  SubmersionModel inhomogeneous = model("quaternionic-hopf");
  inhomogeneous.is_homogeneous = false;
  CHECK(kind_of([&] { equivariant_bifurcation_report(inhomogeneous, Rational(1, 10), 1); }) ==
        ErrorKind::HypothesisViolation);
}

TEST_CASE("Morse index of S^2 x T^2") {
  const SubmersionModel m = model("s2-x-t2");
  CHECK(morse_index_product(m, 1) == 0);
  const DegeneracyRecord r = degeneracy_values(m, Rational(1, 10), 1).records.at(0);
  const Neighborhood n = neighborhood(m, r);
  CHECK(morse_index_product(m, n.t_below) == 4);
  CHECK(morse_index_product(m, n.t_above) == 0);
  CHECK(kind_of([] { morse_index_product(model("quaternionic-hopf"), 1); }) == ErrorKind::NotAProduct);
}

TEST_CASE("Morse index changes by the base multiplicity at each product degeneracy") {
  const SubmersionModel m = model("s2-x-t2");
  const DegeneracyList list = degeneracy_values(m, Rational(1, 50), Rational(1, 5));
  REQUIRE(list.records.size() > 5);
  for (const auto& r : list.records) {
    const Neighborhood n = neighborhood(m, r);
    CHECK(morse_index_product(m, n.t_below) - morse_index_product(m, n.t_above) == r.multiplicity);
    CHECK(morse_index_product(m, n.t_below) == trivial_count(m, n.t_below, true));
  }
}

TEST_CASE("pinching certificate for S^2 x S^2") {
  const SubmersionModel m = model("s2-x-s2");
  const Certificate cert = pinching_certificate(m);
  REQUIRE(cert.pass);
  CHECK(*cert.t_star_sq == Rational(2, 3));
  CHECK(*cert.t_star() == QuadSurd::make(0, 1, Rational(2, 3)));
  CHECK(cert.t_star_approx() == doctest::Approx(std::sqrt(2.0 / 3)).epsilon(1e-14));
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(1, 816);
  for (int i = 0; i < 20; ++i) {
    const Rational t = oracle::q(d(rng), 1000);
    REQUIRE(t * t < *cert.t_star_sq);
    CHECK(minimal_nonconstant_value(cert, t) > Exact(threshold(m, t)));
  }
}

TEST_CASE("pinching certificate for the quaternionic Hopf fibration fails") {
  const Certificate cert = pinching_certificate(model("quaternionic-hopf"));
  CHECK(!cert.pass);
  const InequalityCheck* f = cert.first_failure();
  REQUIRE(f != nullptr);
  CHECK(f->label == "scal_B <= m(m-1)k2");
  CHECK(f->lhs == Exact(48));
  CHECK(f->rhs == Exact(42));
  CHECK(f->describe() == "scal_B <= m(m-1)k2: 48 <= 42 false");
}

TEST_CASE("pinching hypotheses") {
  SubmersionModel c = model("complex-hopf");
  CHECK(kind_of([&] { pinching_certificate(c); }) == ErrorKind::HypothesisViolation);
  PinchingData data{1, 1, 1, Rational(2), std::nullopt, std::nullopt};
  try {
    pinching_certificate(c, data);
    FAIL("expected a hypothesis violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HypothesisViolation);
    CHECK(std::string(e.what()).find("fiber dimension >= 2 required") != std::string::npos);
  }
}

TEST_CASE("certification and multiplicity report") {
  const SubmersionModel q = model("quaternionic-hopf");
  const MultiplicityReport report = multiplicity_report(q, Rational(1, 10), Rational(7, 20));
  CHECK(report.witnessed.size() == 2);
  for (const auto& e : report.witnessed) {
    CHECK(e.witness_kind == "trivial-count");
    CHECK(e.witness() >= 5);
  }
  CHECK(kind_of([&] { multiplicity_report(q, Rational(3, 10), 1); }) == ErrorKind::NoWitness);
  CHECK(multiplicity_report(model("complex-hopf"), Rational(1, 10), 1).witnessed.empty());

  const SubmersionModel p = model("s2-x-t2");
  const MultiplicityReport pr = multiplicity_report(p, Rational(1, 50), Rational(1, 5));
  REQUIRE(!pr.witnessed.empty());
  for (const auto& e : pr.witnessed) CHECK(e.witness_kind == "morse-index");
  CHECK(pr.unwitnessed.size() == 1);
  CHECK(pr.unwitnessed[0].index_above == 0);

  DegeneracyList s2 = degeneracy_values(model("s2-x-s2"), Rational(1, 10), 1);
  certify(model("s2-x-s2"), s2, pinching_certificate(model("s2-x-s2")));
  for (const auto& r : s2.records) CHECK(r.certified_by == Certification::MorseIndex);
}
