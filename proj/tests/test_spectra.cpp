#include <cmath>
#include <numbers>

#include "collapse/errors.hpp"
#include "collapse/spectra.hpp"
#include "doctest.h"
#include "oracles.hpp"

using collapse::ComplexProjective;
using collapse::Error;
using collapse::ErrorKind;
using collapse::Exact;
using collapse::Explicit;
using collapse::FlatTorus;
using collapse::QuaternionicProjective;
using collapse::Rational;
using collapse::SO3;
using collapse::SpectrumStream;
using collapse::Sphere;

namespace {

std::vector<collapse::EigenvalueEntry> first(SpectrumStream stream, std::size_t count) {
  std::vector<collapse::EigenvalueEntry> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(stream.next());
  return out;
}

FlatTorus square_torus(std::size_t d) {
  FlatTorus t;
  t.gram.assign(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i) t.gram[i][i] = 1;
  return t;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("sphere multiplicities equal the harmonic kernel dimension") {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k <= (n <= 2 ? 12 : 8); ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(collapse::sphere_multiplicity(n, k) == oracle::harmonic_dimension(n, k));
    }
  }
}

TEST_CASE("complex projective multiplicities equal bidegree harmonics") {
  for (int n = 1; n <= 2; ++n) {
    for (int k = 0; k <= 5; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(collapse::complex_projective_multiplicity(n, k) == oracle::bidegree_harmonic_dimension(n, k));
    }
  }
  for (int k = 0; k <= 3; ++k) {
    CHECK(collapse::complex_projective_multiplicity(3, k) == oracle::bidegree_harmonic_dimension(3, k));
  }
}

TEST_CASE("quaternionic projective multiplicities equal Sp(1)-invariant harmonics") {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k <= 10; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(collapse::quaternionic_projective_multiplicity(n, k) == oracle::sp1_invariant_harmonics(n, 2 * k));
    }
  }
  CHECK(collapse::quaternionic_projective_multiplicity(1, 1) == 5);
  CHECK(collapse::quaternionic_projective_multiplicity(1, 2) == 14);
  CHECK(collapse::quaternionic_projective_multiplicity(1, 3) == 30);
}

TEST_CASE("low-dimensional coincidences") {
  // CP^1 = S^2(1/2), HP^1 = S^4(1/2)
  const auto cp1 = first(SpectrumStream(ComplexProjective{1}), 12);
  const auto s2 = first(SpectrumStream(Sphere{2, Rational(1, 2)}), 12);
  CHECK(cp1 == s2);
  const auto hp1 = first(SpectrumStream(QuaternionicProjective{1}), 12);
  const auto s4 = first(SpectrumStream(Sphere{4, Rational(1, 2)}), 12);
  CHECK(hp1 == s4);
}

TEST_CASE("sphere spectrum of S^2") {
  const auto s = first(SpectrumStream(Sphere{2, 1}), 4);
  CHECK(s[0] == collapse::EigenvalueEntry{0, 1});
  CHECK(s[1] == collapse::EigenvalueEntry{2, 3});
  CHECK(s[2] == collapse::EigenvalueEntry{6, 5});
  CHECK(s[3] == collapse::EigenvalueEntry{12, 7});
  const auto r2 = first(SpectrumStream(Sphere{3, 2}), 2);
  CHECK(r2[1] == collapse::EigenvalueEntry{Exact(Rational(3, 4)), 4});
}

TEST_CASE("SO(3) spectrum") {
  const auto s = first(SpectrumStream(SO3{1}), 4);
  CHECK(s[1] == collapse::EigenvalueEntry{8, 9});
  CHECK(s[2] == collapse::EigenvalueEntry{24, 25});
  CHECK(s[3] == collapse::EigenvalueEntry{48, 49});
}

TEST_CASE("flat torus eigenvalues are 4 pi^2 |v*|^2") {
  const auto t = first(SpectrumStream(square_torus(2)), 5);
  CHECK(t[0] == collapse::EigenvalueEntry{0, 1});
  CHECK(t[1] == collapse::EigenvalueEntry{Exact::pi2(4), 4});
  CHECK(t[2] == collapse::EigenvalueEntry{Exact::pi2(8), 4});
  CHECK(t[3] == collapse::EigenvalueEntry{Exact::pi2(16), 4});
  CHECK(t[4] == collapse::EigenvalueEntry{Exact::pi2(20), 8});
}

TEST_CASE("lattice kernels agree with a brute-force box scan") {
  // Hexagonal lattice and a skew 3D lattice.
  const std::vector<std::vector<std::vector<Rational>>> grams = {
      {{1, Rational(1, 2)}, {Rational(1, 2), 1}},
      {{2, 1, 0}, {1, 3, Rational(1, 3)}, {0, Rational(1, 3), Rational(3, 2)}},
  };
  for (const auto& gram : grams) {
    // G^{-1} by cofactors.
    const std::size_t d = gram.size();
    std::vector<std::vector<Rational>> inv(d, std::vector<Rational>(d));
    if (d == 2) {
      const Rational det = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0];
      inv = {{gram[1][1] / det, -gram[0][1] / det}, {-gram[1][0] / det, gram[0][0] / det}};
    } else {
      const auto& g = gram;
      const Rational det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                           g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                           g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
          inv[i][j] = (g[r0][c0] * g[r1][c1] - g[r0][c1] * g[r1][c0]) / det;
        }
      }
    }
    const Rational upper = 12;
    const auto brute = oracle::brute_lattice_norms(inv, 20, upper);
    const auto serial = collapse::lattice_norms_serial(gram, -1, upper);
    const auto parallel = collapse::lattice_norms_parallel(gram, -1, upper);
    CHECK(serial == parallel);
    REQUIRE(serial.size() == brute.size());
    std::size_t i = 0;
    for (const auto& [norm, count] : brute) {
      CHECK(serial[i].first == norm);
      CHECK(serial[i].second == count);
      ++i;
    }
    // Half-open windows tile.
    auto low = collapse::lattice_norms_serial(gram, -1, 5);
    const auto high = collapse::lattice_norms_parallel(gram, 5, upper);
    low.insert(low.end(), high.begin(), high.end());
    CHECK(low == serial);
  }
}

TEST_CASE("Weyl law") {
  struct Case {
    collapse::SpaceDescriptor space;
    int dim;
    double volume;
    double T;
  };
  const double pi = std::numbers::pi;
  const std::vector<Case> cases = {
      {Sphere{2, 1}, 2, 4 * pi, 4e4},
      {Sphere{3, 1}, 3, 2 * pi * pi, 4e4},
      {ComplexProjective{2}, 4, pi * pi / 2, 4e4},
      {SO3{1}, 3, pi * pi, 4e4},
      {square_torus(2), 2, 1, 4e4},
  };
  for (const auto& c : cases) {
    SpectrumStream stream(c.space);
    const double count = static_cast<double>(collapse::counting_below(stream, Exact(Rational(c.T)), true));
    const double weyl = c.volume * std::pow(c.T, c.dim / 2.0) /
                        (std::pow(4 * pi, c.dim / 2.0) * std::tgamma(c.dim / 2.0 + 1));
    CAPTURE(collapse::describe(c.space));
    CHECK(count / weyl == doctest::Approx(1).epsilon(0.05));
  }
}

TEST_CASE("rescaling divides eigenvalues") {
  SpectrumStream stream(Sphere{2, 1});
  stream.rescale(4);
  CHECK(stream.next().value == Exact(0));
  CHECK(stream.next().value == Exact(Rational(1, 2)));
  stream.rescale(Rational(1, 4));
  CHECK(stream.next().value == Exact(6));
}

TEST_CASE("eigenvalues_below respects strictness and T <= 0") {
  SpectrumStream a(Sphere{2, 1});
  CHECK(collapse::counting_below(a, 6, true) == 3);
  SpectrumStream b(Sphere{2, 1});
  CHECK(collapse::counting_below(b, 6, false) == 8);
  SpectrumStream c(Sphere{2, 1});
  CHECK(collapse::eigenvalues_below(c, 0, true).empty());
  SpectrumStream d(Sphere{2, 1});
  CHECK(collapse::eigenvalues_below(d, -3, false).empty());
}

TEST_CASE("explicit spectra are only valid below their bound") {
  Explicit list{{{0, 1}, {3, 2}, {7, 1}}, Exact(10)};
  SpectrumStream a(list);
  CHECK(collapse::counting_below(a, 10, true) == 3);
  SpectrumStream b(list);
  CHECK(kind_of([&] { collapse::counting_below(b, 10, false); }) == ErrorKind::SpectrumExhausted);
  SpectrumStream c(list);
  CHECK(kind_of([&] { collapse::counting_below(c, 11, true); }) == ErrorKind::SpectrumExhausted);
  SpectrumStream e(list);
  for (int i = 0; i < 3; ++i) e.next();
  CHECK(kind_of([&] { e.peek(); }) == ErrorKind::SpectrumExhausted);
  // Rescaling moves the bound too.
  SpectrumStream f(list);
  f.rescale(2);
  CHECK(f.valid_below() == Exact(5));
  CHECK(collapse::counting_below(f, 5, true) == 3);
}

TEST_CASE("descriptor validation") {
  CHECK(kind_of([] { collapse::validate(Sphere{0, 1}); }) == ErrorKind::SchemaViolation);
  CHECK(kind_of([] { collapse::validate(Sphere{2, -1}); }) == ErrorKind::SchemaViolation);
  CHECK(kind_of([] { collapse::validate(FlatTorus{{{1, 2}, {2, 1}}}); }) == ErrorKind::SchemaViolation);
  CHECK(kind_of([] { collapse::validate(FlatTorus{{{1, 0}, {1, 1}}}); }) == ErrorKind::SchemaViolation);
  CHECK(kind_of([] { collapse::validate(Explicit{{{1, 1}}, Exact(3)}); }) == ErrorKind::SchemaViolation);
  CHECK(kind_of([] { collapse::validate(Explicit{{{0, 1}, {4, 1}}, Exact(3)}); }) == ErrorKind::SchemaViolation);
  CHECK(collapse::catalog_scalar_curvature(Sphere{2, Rational(1, 2)}) == Rational(8));
  CHECK(collapse::catalog_scalar_curvature(ComplexProjective{3}) == Rational(48));
  CHECK(collapse::catalog_scalar_curvature(QuaternionicProjective{1}) == Rational(48));
  CHECK(collapse::catalog_scalar_curvature(SO3{1}) == Rational(6));
  CHECK(collapse::dimension_of(QuaternionicProjective{2}) == 8);
}
