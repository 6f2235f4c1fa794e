#include "collapse/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "collapse/errors.hpp"

namespace collapse {

namespace {

constexpr int kMaxRefinements = 4000;

Rational abs_upper_bound(const Exact& x) {
  const RationalInterval e = x.enclosure(0);
  return std::max(Rational(abs(e.lo)), Rational(abs(e.hi)));
}

Rational abs_lower_bound(const Exact& x) {
  const RationalInterval e = x.separating_enclosure();
  return std::min(Rational(abs(e.lo)), Rational(abs(e.hi)));
}

// Upper bound on |num / den|; den must be nonzero.
Rational ratio_upper_bound(const Exact& num, const Exact& den) {
  return abs_upper_bound(num) / abs_lower_bound(den);
}

Rational pow10(unsigned digits) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, digits);
  return Rational(p);
}

// A short decimal strictly inside (x, y), close to the midpoint.
Rational decimal_between(const Rational& x, const Rational& y) {
  const Rational width = y - x;
  const Rational mid = (x + y) / 2;
  unsigned digits = 0;
  while (Rational(4) / pow10(digits) > width) ++digits;
  const Rational scale = pow10(digits);
  const Rational scaled = mid * scale + Rational(1, 2);
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational out(k);
  out /= scale;
  out.canonicalize();
  return out;
}

bool rational_square_root(const Rational& s, Rational& root) {
  if (s < 0) return false;
  if (mpz_perfect_square_p(s.get_num_mpz_t()) == 0 || mpz_perfect_square_p(s.get_den_mpz_t()) == 0) {
    return false;
  }
  mpz_class num;
  mpz_class den;
  mpz_sqrt(num.get_mpz_t(), s.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), s.get_den_mpz_t());
  root = Rational(num, den);
  root.canonicalize();
  return true;
}

}  // namespace

std::string branch_name(RootBranch branch) {
  switch (branch) {
    case RootBranch::Single: return "single";
    case RootBranch::Lower: return "lower";
    case RootBranch::Upper: return "upper";
    case RootBranch::Double: return "double";
  }
  return "single";
}

RootBranch parse_branch(const std::string& name) {
  if (name == "single") return RootBranch::Single;
  if (name == "lower") return RootBranch::Lower;
  if (name == "upper") return RootBranch::Upper;
  if (name == "double") return RootBranch::Double;
  throw Error(ErrorKind::SchemaViolation, "unknown root branch \"" + name + "\"");
}

QuadraticRoot::QuadraticRoot(std::array<Exact, 3> coeffs, RootBranch branch, std::array<Exact, 3> isolator,
                             Rational lo, Rational hi)
    : coeffs_(std::move(coeffs)),
      branch_(branch),
      isolator_(std::move(isolator)),
      lo_(std::move(lo)),
      hi_(std::move(hi)) {
  sign_lo_ = isolator_sign(lo_);
  const int sign_hi = isolator_sign(hi_);
  if (sign_lo_ == 0) {
    hi_ = lo_;
  } else if (sign_hi == 0) {
    lo_ = hi_;
  } else if (sign_hi == sign_lo_) {
    throw Error(ErrorKind::InvalidArgument, "bracket [" + to_string(lo_) + ", " + to_string(hi_) +
                                                "] does not isolate a root");
  }
}

std::vector<QuadraticRoot> QuadraticRoot::positive_roots(const Exact& a2, const Exact& a1, const Exact& a0) {
  const std::array<Exact, 3> f{a2, a1, a0};
  std::vector<QuadraticRoot> out;

  if (a2.is_zero()) {
    if (a1.is_zero() || a0.is_zero() || a0.sign() == a1.sign()) return out;
    out.push_back(QuadraticRoot(f, RootBranch::Single, f, 0, ratio_upper_bound(a0, a1) + 1));
    return out;
  }
  if (a0.is_zero()) {
    // u * (a2 u + a1): only the linear factor can give a positive root.
    if (a1.is_zero() || a1.sign() == a2.sign()) return out;
    out.push_back(QuadraticRoot(f, RootBranch::Single, {Exact(), a2, a1}, 0, ratio_upper_bound(a1, a2) + 1));
    return out;
  }

  const Exact disc = a1 * a1 - Exact(4) * a2 * a0;
  const int disc_sign = disc.sign();
  if (disc_sign < 0) return out;
  const Rational cauchy = 1 + std::max(ratio_upper_bound(a1, a2), ratio_upper_bound(a0, a2));
  if (disc_sign == 0) {
    if (a1.sign() == a2.sign()) return out;
    out.push_back(QuadraticRoot(f, RootBranch::Double, {Exact(), Exact(2) * a2, a1}, 0, cauchy));
    return out;
  }

  const int sa = a2.sign();
  if (a0.sign() != sa) {
    // Roots of opposite signs: the larger one is the only positive root.
    out.push_back(QuadraticRoot(f, RootBranch::Upper, f, 0, cauchy));
    return out;
  }
  // Roots of equal sign, that of the vertex -a1/(2 a2).
  if (a1.sign() != -sa) return out;

  // Enclose the vertex tighter than the half gap sqrt(disc)/(2|a2|), so each
  // root sits on its own monotone side.
  const Rational disc_lo = disc.separating_enclosure().lo;
  const Rational half_gap = sqrt_enclosure(disc_lo, 30).lo / (2 * abs_upper_bound(a2));
  if (half_gap <= 0) throw std::logic_error("root separation underflow");
  RationalInterval vertex;
  for (std::size_t level = 0;; ++level) {
    if (level > 12) throw std::logic_error("vertex enclosure did not converge");
    const RationalInterval num = (-a1).enclosure(level);
    const RationalInterval den = (Exact(2) * a2).enclosure(level);
    if (den.lo <= 0 && den.hi >= 0) continue;
    vertex = interval_div(num, den);
    if (vertex.hi - vertex.lo < half_gap) break;
  }
  out.push_back(QuadraticRoot(f, RootBranch::Lower, f, 0, vertex.lo));
  out.push_back(QuadraticRoot(f, RootBranch::Upper, f, vertex.hi, cauchy));
  return out;
}

QuadraticRoot QuadraticRoot::from_descriptor(const Exact& a2, const Exact& a1, const Exact& a0, RootBranch branch,
                                             const Rational& lo, const Rational& hi) {
  if (lo > hi || lo < 0) throw Error(ErrorKind::SchemaViolation, "invalid isolating bracket");
  std::array<Exact, 3> isolator{a2, a1, a0};
  if (branch == RootBranch::Double) {
    isolator = {Exact(), Exact(2) * a2, a1};
  } else if (branch == RootBranch::Single && !a2.is_zero() && a0.is_zero()) {
    isolator = {Exact(), a2, a1};
  }
  QuadraticRoot root({a2, a1, a0}, branch, isolator, lo, hi);
  if (!root.evaluate(root.lo_).is_zero() && root.lo_ == root.hi_) {
    throw Error(ErrorKind::SchemaViolation, "bracket endpoint is not a root");
  }
  return root;
}

Exact QuadraticRoot::evaluate(const Rational& u) const {
  return coeffs_[0] * Exact(u * u) + coeffs_[1] * Exact(u) + coeffs_[2];
}

int QuadraticRoot::isolator_sign(const Rational& u) const {
  return (isolator_[0] * Exact(u * u) + isolator_[1] * Exact(u) + isolator_[2]).sign();
}

void QuadraticRoot::bisect() const {
  if (lo_ == hi_) return;
  const Rational mid = (lo_ + hi_) / 2;
  const int s = isolator_sign(mid);
  if (s == 0) {
    lo_ = mid;
    hi_ = mid;
  } else if (s == sign_lo_) {
    lo_ = mid;
  } else {
    hi_ = mid;
  }
}

std::strong_ordering QuadraticRoot::compare(const Rational& x) const {
  if (lo_ == hi_) {
    const int c = cmp(lo_, x);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  if (x <= lo_) return std::strong_ordering::greater;
  if (x >= hi_) return std::strong_ordering::less;
  const int s = isolator_sign(x);
  if (s == 0) {
    lo_ = x;
    hi_ = x;
    return std::strong_ordering::equal;
  }
  if (s == sign_lo_) {
    lo_ = x;
    return std::strong_ordering::greater;
  }
  hi_ = x;
  return std::strong_ordering::less;
}

bool QuadraticRoot::is_known_root(const Exact& num, const Exact& den) const {
  const Exact& a2 = coeffs_[0];
  const Exact& a1 = coeffs_[1];
  if (a2.is_zero() || branch_ == RootBranch::Double) return true;
  if (coeffs_[2].is_zero()) return !num.is_zero();
  // The other root of the quadratic, by Vieta: -a1/a2 - num/den.
  const Exact other_num = -(a1 * den) - a2 * num;
  const Exact other_den = a2 * den;
  if (other_num * den == num * other_den) return true;
  for (std::size_t level = 0; level < 64; ++level) {
    const RationalInterval dn = den.enclosure(level);
    const RationalInterval od = other_den.enclosure(level);
    if (dn.lo <= 0 && dn.hi >= 0) continue;
    if (od.lo <= 0 && od.hi >= 0) continue;
    const RationalInterval r0 = interval_div(num.enclosure(level), dn);
    const RationalInterval r1 = interval_div(other_num.enclosure(level), od);
    if (r0.hi < lo_ || r0.lo > hi_) return false;
    if (r1.hi < lo_ || r1.lo > hi_) return true;
    for (int i = 0; i < 64; ++i) bisect();
  }
  throw std::logic_error("could not tell the two roots of a quadratic apart");
}

bool QuadraticRoot::provably_equal(const QuadraticRoot& other) const {
  const auto& [f2, f1, f0] = coeffs_;
  const auto& [g2, g1, g0] = other.coeffs_;
  auto vanishes_at = [](const std::array<Exact, 3>& p, const Exact& num, const Exact& den) {
    return (p[0] * num * num + p[1] * num * den + p[2] * den * den).is_zero();
  };
  if (f2.is_zero() && g2.is_zero()) return f0 * g1 == g0 * f1;
  if (f2.is_zero()) return vanishes_at(other.coeffs_, -f0, f1) && other.is_known_root(-f0, f1);
  if (g2.is_zero()) return vanishes_at(coeffs_, -g0, g1) && is_known_root(-g0, g1);
  // g2 f - f2 g has degree at most one and vanishes at any common root.
  const Exact h1 = g2 * f1 - f2 * g1;
  const Exact h0 = g2 * f0 - f2 * g0;
  if (h1.is_zero()) return h0.is_zero() && branch_ == other.branch_;
  return vanishes_at(coeffs_, -h0, h1) && is_known_root(-h0, h1) && other.is_known_root(-h0, h1);
}

std::strong_ordering QuadraticRoot::compare(const QuadraticRoot& other) const {
  if (this == &other) return std::strong_ordering::equal;
  if (hi_ >= other.lo_ && lo_ <= other.hi_ && provably_equal(other)) return std::strong_ordering::equal;
  for (int i = 0; i < kMaxRefinements; ++i) {
    if (hi_ < other.lo_) return std::strong_ordering::less;
    if (lo_ > other.hi_) return std::strong_ordering::greater;
    if (lo_ == hi_) return 0 <=> other.compare(lo_);
    if (other.lo_ == other.hi_) return compare(other.lo_);
    if (hi_ - lo_ >= other.hi_ - other.lo_) {
      bisect();
    } else {
      other.bisect();
    }
  }
  throw std::logic_error("could not separate two algebraic roots");
}

void QuadraticRoot::refine_to(const Rational& width) const {
  while (hi_ - lo_ > width) bisect();
}

double QuadraticRoot::approx() const {
  const Rational scale = std::max(Rational(1), Rational(abs(hi_)));
  refine_to(scale / Rational(mpz_class(1) << 64));
  return Rational((lo_ + hi_) / 2).get_d();
}

Rational rational_sqrt_between(const QuadraticRoot& smaller_u, const QuadraticRoot& larger_u) {
  if (smaller_u.compare(larger_u) != std::strong_ordering::less) {
    throw std::logic_error("rational_sqrt_between: roots out of order");
  }
  for (unsigned digits = 12;; digits *= 2) {
    const Rational s1 = sqrt_enclosure(smaller_u.hi(), digits).hi;
    const Rational s2 = sqrt_enclosure(larger_u.lo(), digits).lo;
    if (s1 < s2) return decimal_between(s1, s2);
    // Brackets may still be wide relative to the gap.
    const Rational gap = larger_u.lo() - smaller_u.hi();
    smaller_u.refine_to(gap);
    larger_u.refine_to(gap);
    if (digits > 4096) throw std::logic_error("rational_sqrt_between did not converge");
  }
}

Rational rational_sqrt_below(const QuadraticRoot& u) {
  for (int i = 0; u.lo() <= 0; ++i) {
    u.refine_to((u.hi() - u.lo()) / 2);
    if (i > kMaxRefinements) throw std::logic_error("rational_sqrt_below did not converge");
  }
  for (unsigned digits = 12;; digits *= 2) {
    const Rational s = sqrt_enclosure(u.lo(), digits).lo;
    if (s > 0) return decimal_between(s / 2, s);
  }
}

Rational rational_sqrt_above(const QuadraticRoot& u) {
  const Rational s = sqrt_enclosure(u.hi(), 12).hi;
  return decimal_between(s, 2 * s);
}

QuadSurd QuadSurd::make(const Rational& p, const Rational& q, const Rational& r) {
  if (r < 0) throw Error(ErrorKind::InvalidArgument, "negative radicand");
  QuadSurd out;
  out.p_ = p;
  if (q == 0 || r == 0) return out;
  const Rational s = q * q * r;
  Rational root;
  if (rational_square_root(s, root)) {
    out.p_ += q > 0 ? root : Rational(-root);
    return out;
  }
  out.sign_ = sgn(q);
  out.s_ = s;
  return out;
}

QuadSurd QuadSurd::upper_root(const Rational& a2, const Rational& a1, const Rational& a0) {
  if (a2 == 0) throw Error(ErrorKind::InvalidArgument, "leading coefficient is zero");
  const Rational disc = a1 * a1 - 4 * a2 * a0;
  if (disc < 0) throw Error(ErrorKind::InvalidArgument, "no real root");
  return make(-a1 / (2 * a2), 1 / (2 * Rational(abs(a2))), disc);
}

double QuadSurd::to_double() const { return p_.get_d() + sign_ * std::sqrt(s_.get_d()); }

std::string QuadSurd::str() const {
  if (sign_ == 0) return p_.get_str();
  std::string out;
  if (p_ != 0) out = p_.get_str() + (sign_ > 0 ? " + " : " - ");
  else if (sign_ < 0) out = "-";
  return out + "sqrt(" + s_.get_str() + ")";
}

}  // namespace collapse
