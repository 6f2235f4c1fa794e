#pragma once

// Closed-form Laplace-Beltrami spectra of the catalog spaces, produced as
// exact, lazily generated, strictly increasing streams of (value, multiplicity).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "collapse/exact.hpp"

namespace collapse {

struct EigenvalueEntry {
  Exact value;
  std::uint64_t multiplicity = 0;

  friend bool operator==(const EigenvalueEntry&, const EigenvalueEntry&) = default;
};

// Round sphere S^n of the given radius.
struct Sphere {
  int n = 2;
  Rational radius = 1;
};

// R^d / Lambda, with gram[i][j] = <b_i, b_j> for a basis of Lambda.
struct FlatTorus {
  std::vector<std::vector<Rational>> gram;
};

// CP^n with the metric making S^{2n+1}(1) -> CP^n a Riemannian submersion
// (holomorphic curvature 4; CP^1 = S^2(1/2)).
struct ComplexProjective {
  int n = 1;
};

// HP^n normalized by the Hopf submersion S^{4n+3}(1) -> HP^n (HP^1 = S^4(1/2)).
struct QuaternionicProjective {
  int n = 1;
};

// SO(3) = S^3(radius) / {+-1}.
struct SO3 {
  Rational radius = 1;
};

// A finite list, declared complete strictly below valid_below.
struct Explicit {
  std::vector<EigenvalueEntry> entries;
  Exact valid_below;
};

using SpaceDescriptor = std::variant<Sphere, FlatTorus, ComplexProjective, QuaternionicProjective, SO3, Explicit>;

// Throws SchemaViolation when parameters are out of range.
void validate(const SpaceDescriptor& space);
// Real dimension; nullopt for Explicit.
std::optional<int> dimension_of(const SpaceDescriptor& space);
// Scalar curvature of the catalog metric; nullopt for Explicit.
std::optional<Rational> catalog_scalar_curvature(const SpaceDescriptor& space);
std::string describe(const SpaceDescriptor& space);

// Multiplicity formulas (degree k harmonics / invariant harmonics).
std::uint64_t sphere_multiplicity(int n, int k);
// dim of U(1)-invariant degree-2k harmonics on S^{2n+1}: bidegree (k,k) harmonics on C^{n+1}.
std::uint64_t complex_projective_multiplicity(int n, int k);
// dim of Sp(1)-invariant degree-2k harmonics on S^{4n+3}.
std::uint64_t quaternionic_projective_multiplicity(int n, int k);

// Dual-lattice norms v^T G^{-1} v over integer vectors v, grouped: returns
// (norm, count) for all norms in (lower, upper], increasing. Serial reference.
std::vector<std::pair<Rational, std::uint64_t>> lattice_norms_serial(const std::vector<std::vector<Rational>>& gram,
                                                                     const Rational& lower, const Rational& upper);
// Same result, outermost coordinate split across OpenMP threads.
std::vector<std::pair<Rational, std::uint64_t>> lattice_norms_parallel(
    const std::vector<std::vector<Rational>>& gram, const Rational& lower, const Rational& upper);

class SpectrumStream {
 public:
  explicit SpectrumStream(const SpaceDescriptor& space);
  ~SpectrumStream();
  SpectrumStream(SpectrumStream&&) noexcept;
  SpectrumStream& operator=(SpectrumStream&&) noexcept;
  SpectrumStream(const SpectrumStream&) = delete;
  SpectrumStream& operator=(const SpectrumStream&) = delete;

  // Spectrum of the homothetic metric alpha * g: every value is divided by
  // alpha. Composes multiplicatively.
  SpectrumStream& rescale(const Rational& alpha);

  // Next entry without consuming it. Throws SpectrumExhausted past the end of
  // an explicit list.
  const EigenvalueEntry& peek();
  EigenvalueEntry next();
  // Next entry whose value is < bound (<= bound when inclusive), consuming it;
  // nullopt (nothing consumed) otherwise. Throws SpectrumExhausted when the
  // stream cannot decide.
  std::optional<EigenvalueEntry> next_below(const Exact& bound, bool inclusive);

  // Entries consumed so far (the index of the next entry).
  std::size_t position() const { return position_; }
  const Rational& scale() const { return scale_; }
  // Only for explicit streams.
  std::optional<Exact> valid_below() const;
  // Throws SpectrumExhausted if the stream is not complete up to bound.
  void require_valid(const Exact& bound, bool inclusive) const;

  class Generator;

 private:
  std::unique_ptr<Generator> generator_;
  Rational scale_ = 1;
  std::optional<EigenvalueEntry> lookahead_;
  std::size_t position_ = 0;
};

SpectrumStream spectrum_of(const SpaceDescriptor& space);

// Entries with 0 < value < T (or <= T when strict is false), in order.
std::vector<EigenvalueEntry> eigenvalues_below(SpectrumStream& stream, const Exact& threshold, bool strict);
// Total multiplicity of the entries eigenvalues_below would return.
std::uint64_t counting_below(SpectrumStream& stream, const Exact& threshold, bool strict);

}  // namespace collapse
