#pragma once

// Degeneracy values of the Yamabe Jacobi operator along the canonical
// variation, the trivial-representation count, Morse indices, the two
// bifurcation criteria and the multiplicity report.
//
// g_t is degenerate when scal(g_t)/(m-1) is an eigenvalue of Delta_t. Base
// eigenvalues eta are eigenvalues for every t, so each eta produces crossings
// at the positive roots u = t^2 of c u^2 + ((m-1) eta - b) u - a = 0.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collapse/algebraic.hpp"
#include "collapse/submersion.hpp"

namespace collapse {

enum class Certification { None, Equivariant, MorseIndex };
std::string certification_name(Certification c);

struct DegeneracyRecord {
  QuadraticRoot u;  // t_q^2
  Exact eta;
  std::uint64_t multiplicity = 0;  // mul(eta) in the base
  std::size_t eta_index = 0;       // position of eta in the base spectrum (0 is the constant)
  std::int64_t j_jump = 0;         // drop of the trivial count across t_q
  Certification certified_by = Certification::None;

  double t_approx() const;
};

struct DegeneracyList {
  std::vector<DegeneracyRecord> records;
  bool scal_independent_of_t = false;
  // scal(g_t) == 0 for all t: every g_t is nondegenerate.
  bool locally_rigid = false;
};

// scal(g_t) / (m - 1)
Rational threshold(const SubmersionModel& model, const Rational& t);

// All degeneracy values from base eigenvalues with t in [t_min, t_max], increasing in t.
DegeneracyList degeneracy_values(const SubmersionModel& model, const Rational& t_min, const Rational& t_max);
// The crossings of the first `count` positive base eigenvalues that have one,
// i.e. the largest `count` degeneracy values, with t strictly decreasing.
// Requires scal_F > 0 so that the sequence is infinite and accumulates at 0.
DegeneracyList leading_degeneracies(const SubmersionModel& model, std::size_t count);

// Total base multiplicity of eigenvalues in (0, threshold(t)) (or (0, threshold]).
std::uint64_t trivial_count(const SubmersionModel& model, const Rational& t, bool strict);
// The same count at a degeneracy value, where threshold = eta exactly.
std::uint64_t trivial_count_at(const SubmersionModel& model, const DegeneracyRecord& record, bool strict);

// Morse index of g_t for a product: positive eigenvalues of Delta_t below threshold(t).
std::uint64_t morse_index_product(const SubmersionModel& model, const Rational& t);

// Rational t_below < t_q < t_above with no degeneracy value from base
// eigenvalues (nor a zero of scal) in [t_below, t_q) or (t_q, t_above].
struct Neighborhood {
  Rational t_below;
  Rational t_above;
};
Neighborhood neighborhood(const SubmersionModel& model, const DegeneracyRecord& record);

// Degeneracies certified by the equivariant (trivial-count) criterion.
// Requires a homogeneous fibration with fiber dimension >= 2 and scal_F > 0,
// except that a t-independent scal gives an empty, flagged list.
DegeneracyList equivariant_bifurcation_report(const SubmersionModel& model, const Rational& t_min,
                                              const Rational& t_max);

struct InequalityCheck {
  std::string label;     // e.g. "scal_B <= m(m-1)k2"
  std::string relation;  // "<", "<=" or ">="
  Exact lhs;
  Exact rhs;
  bool holds = false;

  std::string describe() const;  // "scal_B <= m(m-1)k2: 48 <= 42 false"
};

struct Certificate {
  Rational k1;
  Rational k2;
  Rational tau;
  Exact phi1;
  std::string phi1_source;
  Exact mu1;
  std::string mu1_source;
  std::vector<InequalityCheck> checks;
  bool pass = false;
  // Set on pass: t*^2 = tau^2 (1 - scal_F / ((m-1) phi1)).
  std::optional<Rational> t_star_sq;

  const InequalityCheck* first_failure() const;
  std::optional<QuadSurd> t_star() const;
  double t_star_approx() const;
};

// Evaluates the curvature-pinching hypotheses and, on pass, the window (0, t*)
// in which mu1 + (1/t^2 - 1/tau^2) phi1 > threshold(t). A failed inequality is
// reported in the certificate; missing data or l < 2 throws HypothesisViolation.
Certificate pinching_certificate(const SubmersionModel& model);
Certificate pinching_certificate(const SubmersionModel& model, const PinchingData& data);

// mu1 + (1/t^2 - 1/tau^2) phi1: the smallest non-constant candidate eigenvalue.
Exact minimal_nonconstant_value(const Certificate& cert, const Rational& t);

// Tags each record: a Morse-index change of a product first, then the
// equivariant criterion, then the pinching window (0, t*).
void certify(const SubmersionModel& model, DegeneracyList& list, const std::optional<Certificate>& cert);

struct MultiplicityEntry {
  DegeneracyRecord record;
  Neighborhood around;
  std::string witness_kind;  // "trivial-count" or "morse-index"
  std::uint64_t index_below = 0;
  std::uint64_t index_above = 0;

  std::uint64_t witness() const { return index_below < index_above ? index_below : index_above; }
};

struct MultiplicityReport {
  std::vector<MultiplicityEntry> witnessed;
  // Certified values whose index vanishes on one side.
  std::vector<MultiplicityEntry> unwitnessed;
  static constexpr const char* kConclusion = ">=3 solutions in [g_t] for t arbitrarily close to t_q";
};

// Throws NoWitness when certified values exist but none has a positive index
// on both sides.
MultiplicityReport multiplicity_report(const SubmersionModel& model, const Rational& t_min, const Rational& t_max);

}  // namespace collapse
