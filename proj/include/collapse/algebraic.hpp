#pragma once

// Real algebraic numbers of degree at most two over Q(pi^2).
//
// QuadraticRoot is a positive root of a2*u^2 + a1*u + a0 whose coefficients are
// Exact scalars, pinned down by a rational isolating bracket that is refined by
// exact sign evaluation. QuadSurd is the canonical p + sqrt(s) form used when
// the coefficients are rational and a closed form is wanted.

#include <array>
#include <compare>
#include <string>
#include <vector>

#include "collapse/exact.hpp"

namespace collapse {

enum class RootBranch {
  Single,  // root of a linear polynomial (or of the quadratic with a zero root factored out)
  Lower,   // smaller of two distinct real roots
  Upper,   // larger of two distinct real roots
  Double,  // tangential root
};

std::string branch_name(RootBranch branch);
RootBranch parse_branch(const std::string& name);

class QuadraticRoot {
 public:
  // All positive roots, increasing.
  static std::vector<QuadraticRoot> positive_roots(const Exact& a2, const Exact& a1, const Exact& a0);
  // Rebuilds a root from its serialized descriptor; validates the bracket.
  static QuadraticRoot from_descriptor(const Exact& a2, const Exact& a1, const Exact& a0,
                                       RootBranch branch, const Rational& lo, const Rational& hi);

  const Exact& a2() const { return coeffs_[0]; }
  const Exact& a1() const { return coeffs_[1]; }
  const Exact& a0() const { return coeffs_[2]; }
  RootBranch branch() const { return branch_; }

  // Current bracket [lo, hi]; lo == hi when the root is a known rational.
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

  // Value of the descriptor polynomial at u.
  Exact evaluate(const Rational& u) const;

  std::strong_ordering compare(const Rational& x) const;
  std::strong_ordering compare(const QuadraticRoot& other) const;

  // Shrinks the bracket below the given width.
  void refine_to(const Rational& width) const;
  double approx() const;

 private:
  QuadraticRoot(std::array<Exact, 3> coeffs, RootBranch branch, std::array<Exact, 3> isolator,
                Rational lo, Rational hi);

  int isolator_sign(const Rational& u) const;
  void bisect() const;
  // Whether this root is num/den, given that num/den is a root of the
  // descriptor polynomial.
  bool is_known_root(const Exact& num, const Exact& den) const;
  bool provably_equal(const QuadraticRoot& other) const;

  std::array<Exact, 3> coeffs_;
  RootBranch branch_;
  // Polynomial that changes sign exactly once across the bracket: the
  // descriptor itself, or a linear factor/derivative for the special branches.
  std::array<Exact, 3> isolator_;
  mutable Rational lo_;
  mutable Rational hi_;
  mutable int sign_lo_ = 0;
};

// A rational t with t^2 strictly between the two roots (which must differ).
Rational rational_sqrt_between(const QuadraticRoot& smaller_u, const QuadraticRoot& larger_u);
// Rational t with 0 < t^2 < root, and t^2 > root respectively.
Rational rational_sqrt_below(const QuadraticRoot& u);
Rational rational_sqrt_above(const QuadraticRoot& u);

// p + sign * sqrt(s) with rational p and s >= 0; s is zero or not a rational
// square, which makes the representation unique.
class QuadSurd {
 public:
  QuadSurd() = default;
  // p + q * sqrt(r)
  static QuadSurd make(const Rational& p, const Rational& q, const Rational& r);
  // Larger root of a2*u^2 + a1*u + a0 with rational coefficients, a2 != 0 and a
  // non-negative discriminant.
  static QuadSurd upper_root(const Rational& a2, const Rational& a1, const Rational& a0);

  const Rational& rational_part() const { return p_; }
  int surd_sign() const { return sign_; }
  const Rational& radicand() const { return s_; }

  bool is_rational() const { return sign_ == 0; }
  double to_double() const;
  std::string str() const;

  friend bool operator==(const QuadSurd&, const QuadSurd&) = default;

 private:
  Rational p_ = 0;
  int sign_ = 0;
  Rational s_ = 0;
};

}  // namespace collapse
