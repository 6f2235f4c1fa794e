#pragma once

// A Riemannian submersion F -> M -> B with totally geodesic fibers, described
// by curvature and spectral data, and the scalar curvature of its canonical
// variation g_t (fibers scaled by t^2).

#include <optional>
#include <string>

#include "collapse/algebraic.hpp"
#include "collapse/exact.hpp"
#include "collapse/spectra.hpp"

namespace collapse {

// Data for the Ricci-pinching certificate.
struct PinchingData {
  Rational k1;
  Rational k2;
  Rational tau = 1;
  // Lower bound of Ric(M, g_tau); checked against (m-1) k2.
  std::optional<Rational> ric_total_lower_at_tau;
  // First positive eigenvalues of M at t = tau and of the fiber, when known.
  std::optional<Exact> mu1;
  std::optional<Exact> phi1;
};

struct SubmersionModel {
  std::string name;
  int fiber_dim = 1;
  int base_dim = 1;
  Rational scal_fiber;
  Rational scal_base;
  Rational a_norm_sq;  // |A|^2, constant
  SpaceDescriptor fiber_space;
  SpaceDescriptor base_space;
  bool is_product = false;
  bool is_homogeneous = false;
  std::optional<Rational> ric_fiber_lower;
  std::optional<PinchingData> pinching;
  // Global homothety: the model describes scale * g. Spectra are divided by it.
  Rational scale = 1;

  int total_dim() const { return fiber_dim + base_dim; }
};

// Throws InconsistentModel / SchemaViolation.
void validate(const SubmersionModel& model);

// scal(g_t) = a / t^2 + b - c t^2
struct DeformedScal {
  Rational a;  // scal_F
  Rational b;  // scal_B
  Rational c;  // |A|^2

  Rational at(const Rational& t) const;
  // Same polynomial in u = t^2.
  Rational at_square(const Rational& u) const;
  bool independent_of_t() const { return a == 0 && c == 0; }
};

DeformedScal deformed_scal(const SubmersionModel& model);
Rational scal_t(const SubmersionModel& model, const Rational& t);

// |A|^2 = scal_F + scal_B - scal(M, g_1). Negative -> InconsistentModel.
Rational calibrate_a_norm(const Rational& scal_fiber, const Rational& scal_base, const Rational& scal_total_at_one);

// The same fibration with metric alpha * g.
SubmersionModel rescaled(const SubmersionModel& model, const Rational& alpha);

SpectrumStream fiber_spectrum(const SubmersionModel& model);
SpectrumStream base_spectrum(const SubmersionModel& model);

struct ScalPositivity {
  enum class Kind { Root, AlwaysPositive, NeverPositive };
  Kind kind = Kind::AlwaysPositive;
  // s_max^2 as a root of c u^2 - b u - a (or of the linear form when c = 0).
  std::optional<QuadraticRoot> u_root;

  double s_max() const;
};

std::string kind_name(ScalPositivity::Kind kind);

// s_max with scal(g_s) > 0 exactly for 0 < s < s_max.
ScalPositivity scal_positivity_root(const DeformedScal& scal);
ScalPositivity scal_positivity_root(const SubmersionModel& model);

enum class HopfFamily { Complex, Quaternionic, Octonionic };

HopfFamily parse_hopf_family(const std::string& name);
// S^1 -> S^{2n+1} -> CP^n, S^3 -> S^{4n+3} -> HP^n, S^7 -> S^15 -> S^8(1/2)
// (n = 1 only), with |A|^2 calibrated from the round total space.
SubmersionModel hopf_fibration(HopfFamily family, int n);

}  // namespace collapse
