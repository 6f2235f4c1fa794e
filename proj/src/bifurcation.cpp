#include "collapse/bifurcation.hpp"

#include <algorithm>
#include <cmath>

#include "collapse/errors.hpp"
#include "collapse/variation.hpp"

namespace collapse {

namespace {

Rational m_minus_one(const SubmersionModel& model) { return Rational(model.total_dim() - 1); }

// Positive roots u = t^2 of scal(g_t) = (m-1) eta.
std::vector<QuadraticRoot> crossing_roots(const DeformedScal& s, const Rational& m1, const Exact& eta) {
  return QuadraticRoot::positive_roots(Exact(s.c), Exact(m1) * eta - Exact(s.b), Exact(-s.a));
}

void check_interval(const Rational& t_min, const Rational& t_max) {
  if (!(t_min > 0 && t_min < t_max)) {
    throw Error(ErrorKind::InvalidArgument,
                "invalid interval [" + to_string(t_min) + ", " + to_string(t_max) + "]: need 0 < tMin < tMax");
  }
}

bool less(const QuadraticRoot& x, const QuadraticRoot& y) { return x.compare(y) == std::strong_ordering::less; }

}  // namespace

std::string certification_name(Certification c) {
  switch (c) {
    case Certification::None: return "none";
    case Certification::Equivariant: return "equivariant";
    case Certification::MorseIndex: return "morse-index";
  }
  return "none";
}

double DegeneracyRecord::t_approx() const { return std::sqrt(u.approx()); }

Rational threshold(const SubmersionModel& model, const Rational& t) { return scal_t(model, t) / m_minus_one(model); }

DegeneracyList degeneracy_values(const SubmersionModel& model, const Rational& t_min, const Rational& t_max) {
  check_interval(t_min, t_max);
  const DeformedScal s = deformed_scal(model);
  const Rational m1 = m_minus_one(model);
  DegeneracyList out;
  if (s.independent_of_t()) {
    out.scal_independent_of_t = true;
    out.locally_rigid = s.b == 0;
    return out;
  }
  const Rational u_min = t_min * t_min;
  const Rational u_max = t_max * t_max;
  // Upper bound of scal on [u_min, u_max]; no crossing above it.
  const Rational scal_bound = (s.a >= 0 ? s.a / u_min : s.a / u_max) + s.b - s.c * u_min;
  if (scal_bound <= 0) return out;
  const Exact eta_bound(scal_bound / m1);

  SpectrumStream base = base_spectrum(model);
  while (auto entry = base.next_below(eta_bound, true)) {
    if (entry->value.is_zero()) continue;
    const std::size_t index = base.position() - 1;
    for (QuadraticRoot& root : crossing_roots(s, m1, entry->value)) {
      if (root.compare(u_min) == std::strong_ordering::less) continue;
      if (root.compare(u_max) == std::strong_ordering::greater) continue;
      out.records.push_back({std::move(root), entry->value, entry->multiplicity, index,
                             static_cast<std::int64_t>(entry->multiplicity), Certification::None});
    }
  }
  std::sort(out.records.begin(), out.records.end(),
            [](const DegeneracyRecord& x, const DegeneracyRecord& y) { return less(x.u, y.u); });
  return out;
}

DegeneracyList leading_degeneracies(const SubmersionModel& model, std::size_t count) {
  const DeformedScal s = deformed_scal(model);
  if (s.a <= 0) {
    throw Error(ErrorKind::HypothesisViolation,
                "degeneracy values accumulate at 0 only when the fiber has positive scalar curvature (scal_F = " +
                    to_string(s.a) + ")");
  }
  const Rational m1 = m_minus_one(model);
  DegeneracyList out;
  SpectrumStream base = base_spectrum(model);
  while (out.records.size() < count) {
    const EigenvalueEntry entry = base.next();
    if (entry.value.is_zero()) continue;
    // scal is strictly decreasing from +infinity: at most one crossing.
    auto roots = crossing_roots(s, m1, entry.value);
    if (roots.empty()) continue;
    out.records.push_back({std::move(roots.front()), entry.value, entry.multiplicity, base.position() - 1,
                           static_cast<std::int64_t>(entry.multiplicity), Certification::None});
  }
  return out;
}

std::uint64_t trivial_count(const SubmersionModel& model, const Rational& t, const bool strict) {
  const Rational T = threshold(model, t);
  if (T <= 0) return 0;
  SpectrumStream base = base_spectrum(model);
  return counting_below(base, Exact(T), strict);
}

std::uint64_t trivial_count_at(const SubmersionModel& model, const DegeneracyRecord& record, bool strict) {
  SpectrumStream base = base_spectrum(model);
  return counting_below(base, record.eta, strict);
}

std::uint64_t morse_index_product(const SubmersionModel& model, const Rational& t) {
  if (!model.is_product) {
    throw Error(ErrorKind::NotAProduct, "model \"" + model.name + "\" is not a Riemannian product");
  }
  const Rational T = threshold(model, t);
  if (T <= 0) return 0;
  std::uint64_t index = 0;
  for (const ProductEigenvalue& e : product_spectrum_below(model, t, Exact(T))) {
    if (e.value.sign() > 0) index += e.multiplicity;
  }
  return index;
}

Neighborhood neighborhood(const SubmersionModel& model, const DegeneracyRecord& record) {
  const DeformedScal s = deformed_scal(model);
  const Rational m1 = m_minus_one(model);
  // Between two critical roots scal/(m-1) moves continuously, so the closest
  // crossings come from eta itself or from the adjacent base eigenvalues (the
  // constant eigenvalue 0 stands for the zeros of scal).
  SpectrumStream base = base_spectrum(model);
  Exact previous;
  for (std::size_t i = 0; i < record.eta_index; ++i) previous = base.next().value;
  base.next();
  std::vector<QuadraticRoot> critical = crossing_roots(s, m1, previous);
  for (QuadraticRoot& r : crossing_roots(s, m1, record.eta)) critical.push_back(std::move(r));
  try {
    for (QuadraticRoot& r : crossing_roots(s, m1, base.peek().value)) critical.push_back(std::move(r));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SpectrumExhausted) throw;
  }

  const QuadraticRoot* below = nullptr;
  const QuadraticRoot* above = nullptr;
  for (const QuadraticRoot& r : critical) {
    const auto order = r.compare(record.u);
    if (order == std::strong_ordering::less && (!below || less(*below, r))) below = &r;
    if (order == std::strong_ordering::greater && (!above || less(r, *above))) above = &r;
  }
  Neighborhood out;
  out.t_below = below ? rational_sqrt_between(*below, record.u) : rational_sqrt_below(record.u);
  out.t_above = above ? rational_sqrt_between(record.u, *above) : rational_sqrt_above(record.u);
  return out;
}

DegeneracyList equivariant_bifurcation_report(const SubmersionModel& model, const Rational& t_min,
                                              const Rational& t_max) {
  check_interval(t_min, t_max);
  if (deformed_scal(model).independent_of_t()) return degeneracy_values(model, t_min, t_max);
  if (!model.is_homogeneous) {
    throw Error(ErrorKind::HypothesisViolation, "the equivariant criterion needs a homogeneous fibration");
  }
  if (model.fiber_dim < 2) {
    throw Error(ErrorKind::HypothesisViolation,
                "fiber dimension >= 2 required (l = " + std::to_string(model.fiber_dim) + ")");
  }
  if (model.scal_fiber <= 0) {
    throw Error(ErrorKind::HypothesisViolation,
                "fiber must have positive scalar curvature (scal_F = " + to_string(model.scal_fiber) + ")");
  }
  DegeneracyList list = degeneracy_values(model, t_min, t_max);
  for (DegeneracyRecord& r : list.records) r.certified_by = Certification::Equivariant;
  return list;
}

std::string InequalityCheck::describe() const {
  return label + ": " + lhs.str() + " " + relation + " " + rhs.str() + (holds ? " true" : " false");
}

const InequalityCheck* Certificate::first_failure() const {
  for (const InequalityCheck& c : checks) {
    if (!c.holds) return &c;
  }
  return nullptr;
}

std::optional<QuadSurd> Certificate::t_star() const {
  if (!t_star_sq) return std::nullopt;
  return QuadSurd::make(0, 1, *t_star_sq);
}

double Certificate::t_star_approx() const { return t_star_sq ? std::sqrt(t_star_sq->get_d()) : 0.0; }

Certificate pinching_certificate(const SubmersionModel& model) {
  if (!model.pinching) {
    throw Error(ErrorKind::HypothesisViolation, "model \"" + model.name + "\" carries no pinching data (k1, k2, tau)");
  }
  return pinching_certificate(model, *model.pinching);
}

Certificate pinching_certificate(const SubmersionModel& model, const PinchingData& data) {
  const int l = model.fiber_dim;
  const int m = model.total_dim();
  if (l < 2) {
    throw Error(ErrorKind::HypothesisViolation, "fiber dimension >= 2 required (l = " + std::to_string(l) + ")");
  }
  if (!model.ric_fiber_lower) {
    throw Error(ErrorKind::HypothesisViolation, "pinching needs a lower Ricci bound of the fiber (fiber.ricLower)");
  }
  if (!data.ric_total_lower_at_tau) {
    throw Error(ErrorKind::HypothesisViolation,
                "pinching needs a lower Ricci bound of (M, g_tau) (pinching.ricMLowerAtTau)");
  }
  if (data.k1 <= 0 || data.k2 <= 0 || data.tau <= 0) {
    throw Error(ErrorKind::HypothesisViolation, "k1, k2 and tau must be positive");
  }

  Certificate cert;
  cert.k1 = data.k1;
  cert.k2 = data.k2;
  cert.tau = data.tau;
  auto add = [&](std::string label, std::string relation, const Exact& lhs, const Exact& rhs) {
    bool holds = false;
    if (relation == "<") holds = lhs < rhs;
    else if (relation == "<=") holds = lhs <= rhs;
    else holds = lhs >= rhs;
    cert.checks.push_back({std::move(label), std::move(relation), lhs, rhs, holds});
  };
  add("Ric_F >= (l-1)k1", ">=", *model.ric_fiber_lower, Rational(Rational(l - 1) * data.k1));
  add("scal_F < l(m-1)k1", "<", model.scal_fiber, Rational(Rational(l * (m - 1)) * data.k1));
  add("Ric_{g_tau} >= (m-1)k2", ">=", *data.ric_total_lower_at_tau, Rational(Rational(m - 1) * data.k2));
  add("scal_B <= m(m-1)k2", "<=", model.scal_base, Rational(Rational(m * (m - 1)) * data.k2));

  // First positive eigenvalue of a stream, if the stream can tell.
  auto first_positive = [](SpectrumStream stream) -> std::optional<Exact> {
    try {
      while (true) {
        EigenvalueEntry e = stream.next();
        if (e.value.sign() > 0) return e.value;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SpectrumExhausted) throw;
    }
    return std::nullopt;
  };
  const std::optional<Exact> fiber_phi1 = first_positive(fiber_spectrum(model));
  if (data.phi1) {
    cert.phi1 = *data.phi1;
    cert.phi1_source = "supplied";
  } else if (fiber_phi1) {
    cert.phi1 = *fiber_phi1;
    cert.phi1_source = "fiber spectrum";
  } else {
    cert.phi1 = Rational(Rational(l) * data.k1);
    cert.phi1_source = "Lichnerowicz bound l*k1";
  }
  if (data.mu1) {
    cert.mu1 = *data.mu1;
    cert.mu1_source = "supplied";
  } else if (model.is_product && fiber_phi1) {
    // Spec(M, g_tau) of a product: fiber values / tau^2 plus base values.
    Exact mu = *fiber_phi1 / (data.tau * data.tau);
    if (auto beta = first_positive(base_spectrum(model)); beta && *beta < mu) mu = *beta;
    cert.mu1 = mu;
    cert.mu1_source = "product spectrum at tau";
  } else {
    cert.mu1 = Rational(Rational(m) * data.k2);
    cert.mu1_source = "Lichnerowicz bound m*k2";
  }
  add("scal_B <= (m-1)mu1", "<=", model.scal_base, Exact(Rational(m - 1)) * cert.mu1);
  add("scal_F < (m-1)phi1", "<", model.scal_fiber, Exact(Rational(m - 1)) * cert.phi1);

  cert.pass = cert.first_failure() == nullptr;
  if (cert.pass) {
    const Rational tau_sq = data.tau * data.tau;
    if (model.scal_fiber == 0) {
      cert.t_star_sq = tau_sq;
    } else {
      // A rational lower bound for phi1 only shrinks the window.
      const Rational phi = cert.phi1.is_rational() ? cert.phi1.as_rational() : cert.phi1.enclosure(3).lo;
      cert.t_star_sq = tau_sq * (1 - model.scal_fiber / (Rational(m - 1) * phi));
    }
  }
  return cert;
}

Exact minimal_nonconstant_value(const Certificate& cert, const Rational& t) {
  if (t <= 0) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  return cert.mu1 + cert.phi1 * Exact(1 / (t * t) - 1 / (cert.tau * cert.tau));
}

void certify(const SubmersionModel& model, DegeneracyList& list, const std::optional<Certificate>& cert) {
  const bool equivariant = model.is_homogeneous && model.fiber_dim >= 2 && model.scal_fiber > 0;
  for (DegeneracyRecord& r : list.records) {
    r.certified_by = Certification::None;
    if (model.is_product) {
      const Neighborhood nb = neighborhood(model, r);
      if (morse_index_product(model, nb.t_below) != morse_index_product(model, nb.t_above)) {
        r.certified_by = Certification::MorseIndex;
        continue;
      }
    }
    if (equivariant) {
      r.certified_by = Certification::Equivariant;
    } else if (cert && cert->pass && r.u.compare(*cert->t_star_sq) == std::strong_ordering::less) {
      r.certified_by = Certification::MorseIndex;
    }
  }
}

MultiplicityReport multiplicity_report(const SubmersionModel& model, const Rational& t_min, const Rational& t_max) {
  DegeneracyList list = degeneracy_values(model, t_min, t_max);
  std::optional<Certificate> cert;
  if (model.pinching) {
    try {
      cert = pinching_certificate(model);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::HypothesisViolation) throw;
    }
  }
  certify(model, list, cert);

  MultiplicityReport report;
  bool any_certified = false;
  for (const DegeneracyRecord& r : list.records) {
    if (r.certified_by == Certification::None) continue;
    any_certified = true;
    MultiplicityEntry entry{r, neighborhood(model, r), "", 0, 0};
    if (model.is_product) {
      entry.witness_kind = "morse-index";
      entry.index_below = morse_index_product(model, entry.around.t_below);
      entry.index_above = morse_index_product(model, entry.around.t_above);
    } else {
      // Constant eigenvalues below the threshold are negative directions, so
      // the trivial count bounds the Morse index from below.
      entry.witness_kind = "trivial-count";
      entry.index_below = trivial_count(model, entry.around.t_below, true);
      entry.index_above = trivial_count(model, entry.around.t_above, true);
    }
    (entry.witness() > 0 ? report.witnessed : report.unwitnessed).push_back(std::move(entry));
  }
  if (any_certified && report.witnessed.empty()) {
    throw Error(ErrorKind::NoWitness, "no certified degeneracy value in [" + to_string(t_min) + ", " +
                                          to_string(t_max) + "] has a positive Morse index on both sides");
  }
  return report;
}

}  // namespace collapse
