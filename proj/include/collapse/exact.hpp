#pragma once

// Exact scalars for spectral computations.
//
// Curvatures, metric parameters and most eigenvalues are rationals. Flat tori
// contribute eigenvalues that are rational multiples of pi^2, and sums of the
// two kinds appear in product spectra, so the general scalar is a polynomial in
// pi^2 with rational coefficients. Because pi is transcendental such a value is
// zero iff all of its coefficients are zero, and every nonzero value has a sign
// that is decided by evaluating it on a certified rational enclosure of pi^2.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace collapse {

using Rational = mpq_class;

struct RationalInterval {
  Rational lo;
  Rational hi;
};

// Certified enclosure of pi^2. Level 0 is the 16-decimal interval
// [9.8696044010893586, 9.8696044010893587]; level k carries 16 * 2^k decimals.
// Thread-safe.
RationalInterval pi_squared_enclosure(std::size_t level);

// Parses "p/q" or an integer. Anything else (including floats) is rejected.
Rational parse_rational(std::string_view text);
// Like parse_rational but also accepts finite decimals ("0.05", "1e-3"),
// converted exactly.
Rational parse_decimal(std::string_view text);
std::string to_string(const Rational& value);

// Bounds on sqrt(value) with absolute error below 10^-digits.
RationalInterval sqrt_enclosure(const Rational& value, unsigned digits);

class Exact {
 public:
  Exact() = default;
  Exact(const Rational& value);  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  Exact(I value) : Exact(Rational(static_cast<long>(value))) {}  // NOLINT

  // coefficient * pi^2
  static Exact pi2(const Rational& coefficient = 1);
  // Parses the serialization produced by str(): "3/2", "pi2*4", "2-pi2*4/3",
  // "pi2^2*5" (for 5 pi^4).
  static Exact parse(std::string_view text);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return coeffs_.size() <= 1; }
  // Throws InvalidArgument if the value carries a pi^2 term.
  Rational as_rational() const;
  // Coefficient of (pi^2)^power.
  Rational coefficient(std::size_t power) const;
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  int sign() const;
  RationalInterval enclosure(std::size_t level) const;
  // Smallest-level enclosure that does not contain zero. Requires nonzero.
  RationalInterval separating_enclosure() const;
  double to_double() const;
  std::string str() const;

  Exact operator-() const;
  Exact& operator+=(const Exact& other);
  Exact& operator-=(const Exact& other);
  Exact& operator*=(const Exact& other);
  Exact& operator/=(const Rational& divisor);

  friend Exact operator+(Exact lhs, const Exact& rhs) { return lhs += rhs; }
  friend Exact operator-(Exact lhs, const Exact& rhs) { return lhs -= rhs; }
  friend Exact operator*(Exact lhs, const Exact& rhs) { return lhs *= rhs; }
  friend Exact operator/(Exact lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Exact& lhs, const Exact& rhs);
  friend std::strong_ordering operator<=>(const Exact& lhs, const Exact& rhs);

 private:
  void trim();

  std::vector<Rational> coeffs_;  // coeffs_[i] multiplies (pi^2)^i; no trailing zeros
};

// Interval arithmetic helpers on rational intervals.
RationalInterval interval_mul(const RationalInterval& a, const RationalInterval& b);
// Requires b not to contain zero.
RationalInterval interval_div(const RationalInterval& a, const RationalInterval& b);

}  // namespace collapse
