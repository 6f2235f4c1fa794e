#include "collapse/submersion.hpp"

#include <cmath>
#include <limits>

#include "collapse/errors.hpp"

namespace collapse {

void validate(const SubmersionModel& model) {
  auto inconsistent = [&](const std::string& what) {
    throw Error(ErrorKind::InconsistentModel, "model \"" + model.name + "\": " + what);
  };
  if (model.fiber_dim < 1 || model.base_dim < 1) {
    throw Error(ErrorKind::SchemaViolation, "fiber and base dimensions must be >= 1");
  }
  if (model.total_dim() < 3) inconsistent("total dimension must be >= 3");
  if (model.a_norm_sq < 0) inconsistent("|A|^2 must be non-negative");
  if (model.is_product && model.a_norm_sq != 0) inconsistent("a product has |A|^2 = 0");
  if (model.scale <= 0) throw Error(ErrorKind::SchemaViolation, "scale must be positive");
  validate(model.fiber_space);
  validate(model.base_space);

  auto check_space = [&](const SpaceDescriptor& space, int dim, const Rational& scal, const char* role) {
    if (auto d = dimension_of(space); d && *d != dim) {
      inconsistent(std::string(role) + " space " + describe(space) + " has dimension " + std::to_string(*d) +
                   ", declared " + std::to_string(dim));
    }
    if (auto s = catalog_scalar_curvature(space); s && *s / model.scale != scal) {
      inconsistent(std::string(role) + " scal " + to_string(scal) + " does not match " + describe(space) +
                   " (scal " + to_string(*s / model.scale) + ")");
    }
  };
  check_space(model.fiber_space, model.fiber_dim, model.scal_fiber, "fiber");
  check_space(model.base_space, model.base_dim, model.scal_base, "base");

  if (model.pinching) {
    const PinchingData& p = *model.pinching;
    if (p.k1 <= 0 || p.k2 <= 0 || p.tau <= 0) {
      throw Error(ErrorKind::SchemaViolation, "pinching constants k1, k2, tau must be positive");
    }
    if (p.mu1 && p.mu1->sign() <= 0) throw Error(ErrorKind::SchemaViolation, "mu1 must be positive");
    if (p.phi1 && p.phi1->sign() <= 0) throw Error(ErrorKind::SchemaViolation, "phi1 must be positive");
  }
}

Rational DeformedScal::at(const Rational& t) const {
  if (t <= 0) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  return at_square(t * t);
}

Rational DeformedScal::at_square(const Rational& u) const {
  if (u <= 0) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  return a / u + b - c * u;
}

DeformedScal deformed_scal(const SubmersionModel& model) {
  return {model.scal_fiber, model.scal_base, model.a_norm_sq};
}

Rational scal_t(const SubmersionModel& model, const Rational& t) { return deformed_scal(model).at(t); }

Rational calibrate_a_norm(const Rational& scal_fiber, const Rational& scal_base, const Rational& scal_total_at_one) {
  Rational a_norm = scal_fiber + scal_base - scal_total_at_one;
  if (a_norm < 0) {
    throw Error(ErrorKind::InconsistentModel, "calibration gives |A|^2 = " + to_string(a_norm) +
                                                  " < 0 (scal_F + scal_B must be >= scal(M, g_1))");
  }
  return a_norm;
}

SubmersionModel rescaled(const SubmersionModel& model, const Rational& alpha) {
  if (alpha <= 0) throw Error(ErrorKind::InvalidArgument, "rescale factor must be positive");
  SubmersionModel out = model;
  out.scale *= alpha;
  out.scal_fiber /= alpha;
  out.scal_base /= alpha;
  out.a_norm_sq /= alpha;
  if (out.ric_fiber_lower) *out.ric_fiber_lower /= alpha;
  if (out.pinching) {
    PinchingData& p = *out.pinching;
    p.k1 /= alpha;
    p.k2 /= alpha;
    if (p.ric_total_lower_at_tau) *p.ric_total_lower_at_tau /= alpha;
    if (p.mu1) *p.mu1 /= alpha;
    if (p.phi1) *p.phi1 /= alpha;
  }
  return out;
}

SpectrumStream fiber_spectrum(const SubmersionModel& model) {
  SpectrumStream s(model.fiber_space);
  s.rescale(model.scale);
  return s;
}

SpectrumStream base_spectrum(const SubmersionModel& model) {
  SpectrumStream s(model.base_space);
  s.rescale(model.scale);
  return s;
}

double ScalPositivity::s_max() const {
  if (!u_root) return kind == Kind::AlwaysPositive ? std::numeric_limits<double>::infinity() : 0.0;
  return std::sqrt(u_root->approx());
}

std::string kind_name(ScalPositivity::Kind kind) {
  switch (kind) {
    case ScalPositivity::Kind::Root: return "root";
    case ScalPositivity::Kind::AlwaysPositive: return "always-positive";
    case ScalPositivity::Kind::NeverPositive: return "never-positive";
  }
  return "root";
}

ScalPositivity scal_positivity_root(const DeformedScal& s) {
  using Kind = ScalPositivity::Kind;
  // u * scal = -(c u^2 - b u - a): positivity of scal is negativity of q(u).
  if (s.a <= 0 && s.b <= 0) return {Kind::NeverPositive, std::nullopt};
  if (s.a < 0) {
    // scal is negative near u = 0 and, if positive at all, only on a bounded
    // window away from 0: not of the form 0 < s < s_max.
    throw Error(ErrorKind::InvalidArgument, "scal(g_t) is negative as t -> 0 (scal_F < 0); no s_max interval");
  }
  if (s.c == 0 && s.b >= 0) return {Kind::AlwaysPositive, std::nullopt};
  auto roots = QuadraticRoot::positive_roots(Exact(s.c), Exact(-s.b), Exact(-s.a));
  if (roots.empty()) return {Kind::NeverPositive, std::nullopt};
  // a >= 0 and (c > 0 or b < 0): exactly one sign change on (0, inf).
  return {Kind::Root, roots.back()};
}

ScalPositivity scal_positivity_root(const SubmersionModel& model) {
  return scal_positivity_root(deformed_scal(model));
}

HopfFamily parse_hopf_family(const std::string& name) {
  if (name == "complex") return HopfFamily::Complex;
  if (name == "quaternionic" || name == "quaternionic-diagonal") return HopfFamily::Quaternionic;
  if (name == "octonionic") return HopfFamily::Octonionic;
  throw Error(ErrorKind::InvalidArgument, "unknown Hopf family \"" + name + "\"");
}

SubmersionModel hopf_fibration(HopfFamily family, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  SubmersionModel m;
  m.is_homogeneous = true;
  int total = 0;
  switch (family) {
    case HopfFamily::Complex:
      m.name = "complex-hopf-" + std::to_string(n);
      m.fiber_dim = 1;
      m.fiber_space = Sphere{1, 1};
      m.base_dim = 2 * n;
      m.base_space = ComplexProjective{n};
      break;
    case HopfFamily::Quaternionic:
      m.name = "quaternionic-hopf-" + std::to_string(n);
      m.fiber_dim = 3;
      m.fiber_space = Sphere{3, 1};
      m.base_dim = 4 * n;
      m.base_space = QuaternionicProjective{n};
      break;
    case HopfFamily::Octonionic:
      if (n != 1) throw Error(ErrorKind::InvalidArgument, "the octonionic Hopf fibration exists only for n = 1");
      m.name = "octonionic-hopf";
      m.fiber_dim = 7;
      m.fiber_space = Sphere{7, 1};
      m.base_dim = 8;
      m.base_space = Sphere{8, Rational(1, 2)};
      break;
  }
  total = m.total_dim();
  m.scal_fiber = *catalog_scalar_curvature(m.fiber_space);
  m.scal_base = *catalog_scalar_curvature(m.base_space);
  m.a_norm_sq = calibrate_a_norm(m.scal_fiber, m.scal_base, Rational(total * (total - 1)));
  validate(m);
  return m;
}

}  // namespace collapse
