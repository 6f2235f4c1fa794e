#include "collapse/exact.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <regex>
#include <stdexcept>
#include <string>

#include "collapse/errors.hpp"

namespace collapse {

namespace {

constexpr unsigned kLevelZeroDigits = 16;
constexpr std::size_t kMaxLevel = 12;

mpz_class pow10(unsigned digits) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, digits);
  return result;
}

Rational floor_to_digits(const Rational& value, unsigned digits) {
  const mpz_class scale = pow10(digits);
  const Rational scaled = value * scale;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational out(q, scale);
  out.canonicalize();
  return out;
}

Rational ceil_to_digits(const Rational& value, unsigned digits) {
  const mpz_class scale = pow10(digits);
  const Rational scaled = value * scale;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational out(q, scale);
  out.canonicalize();
  return out;
}

// Brackets atan(1/x) between consecutive partial sums of its alternating series.
RationalInterval atan_inverse(unsigned long x, unsigned digits) {
  const Rational tolerance(mpz_class(1), pow10(digits + 4));
  const mpz_class x_sq = mpz_class(x) * x;
  mpz_class power = x;  // x^(2k+1)
  Rational sum = 0;
  for (unsigned long k = 0;; ++k) {
    Rational term(mpz_class(1), power * (2 * k + 1));
    term.canonicalize();
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    power *= x_sq;
    Rational next(mpz_class(1), power * (2 * k + 3));
    next.canonicalize();
    if (next < tolerance) {
      // Next term has the opposite sign of the last one added.
      Rational other = (k % 2 == 0) ? Rational(sum - next) : Rational(sum + next);
      return sum < other ? RationalInterval{sum, other} : RationalInterval{other, sum};
    }
  }
}

RationalInterval compute_pi_squared(unsigned digits) {
  // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
  const RationalInterval a5 = atan_inverse(5, digits + 4);
  const RationalInterval a239 = atan_inverse(239, digits + 4);
  const Rational pi_lo = floor_to_digits(16 * a5.lo - 4 * a239.hi, digits + 2);
  const Rational pi_hi = ceil_to_digits(16 * a5.hi - 4 * a239.lo, digits + 2);
  return {floor_to_digits(pi_lo * pi_lo, digits), ceil_to_digits(pi_hi * pi_hi, digits)};
}

const RationalInterval& level_zero() {
  static const RationalInterval interval{parse_rational("98696044010893586/10000000000000000"),
                                         parse_rational("98696044010893587/10000000000000000")};
  return interval;
}

Rational power(const Rational& base, std::size_t exponent) {
  Rational result = 1;
  for (std::size_t i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace

RationalInterval pi_squared_enclosure(std::size_t level) {
  if (level == 0) return level_zero();
  if (level > kMaxLevel) throw std::logic_error("pi^2 enclosure level out of range");
  static std::mutex mutex;
  static std::vector<RationalInterval> cache;
  std::lock_guard lock(mutex);
  while (cache.size() < level) {
    const unsigned digits = kLevelZeroDigits << (cache.size() + 1);
    cache.push_back(compute_pi_squared(digits));
  }
  return cache[level - 1];
}

Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(\s*([+-]?[0-9]+)(/([0-9]+))?\s*)");
  std::cmatch match;
  if (!std::regex_match(text.begin(), text.end(), match, pattern)) {
    throw Error(ErrorKind::SchemaViolation,
                "expected an exact rational \"p/q\" or integer, got \"" + std::string(text) + "\"");
  }
  mpz_class num(match[1].str(), 10);
  mpz_class den = 1;
  if (match[3].matched) den = mpz_class(match[3].str(), 10);
  if (den == 0) {
    throw Error(ErrorKind::SchemaViolation, "zero denominator in \"" + std::string(text) + "\"");
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational parse_decimal(std::string_view text) {
  static const std::regex pattern(R"(\s*([+-]?)([0-9]*)(\.([0-9]*))?([eE]([+-]?[0-9]+))?\s*)");
  std::cmatch match;
  if (std::regex_match(text.begin(), text.end(), match, pattern) &&
      (match[2].length() > 0 || match[4].length() > 0) && (match[3].matched || match[5].matched)) {
    const std::string int_part = match[2].str();
    const std::string frac_part = match[4].str();
    mpz_class num((int_part + frac_part).empty() ? std::string("0") : int_part + frac_part, 10);
    long exponent = match[6].matched ? std::stol(match[6].str()) : 0;
    exponent -= static_cast<long>(frac_part.size());
    Rational out(num);
    if (exponent >= 0) {
      out *= pow10(static_cast<unsigned>(exponent));
    } else {
      out /= pow10(static_cast<unsigned>(-exponent));
    }
    out.canonicalize();
    return match[1].str() == "-" ? Rational(-out) : out;
  }
  return parse_rational(text);
}

std::string to_string(const Rational& value) { return value.get_str(); }

RationalInterval sqrt_enclosure(const Rational& value, unsigned digits) {
  if (value < 0) throw Error(ErrorKind::InvalidArgument, "square root of a negative rational");
  const mpz_class scale = pow10(digits);
  const Rational scaled = value * scale * scale;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), q.get_mpz_t());
  Rational lo(root, scale);
  Rational hi(root + 1, scale);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

Exact::Exact(const Rational& value) {
  if (value != 0) coeffs_.push_back(value);
}

Exact Exact::pi2(const Rational& coefficient) {
  Exact out;
  if (coefficient != 0) out.coeffs_ = {Rational(0), coefficient};
  return out;
}

Exact Exact::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  }
  if (s.empty()) throw Error(ErrorKind::SchemaViolation, "empty exact scalar");
  // Split into signed terms at '+'/'-' that start a new term.
  std::vector<std::string> terms;
  std::string current;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if ((ch == '+' || ch == '-') && i > 0 && s[i - 1] != '*' && s[i - 1] != '^' && s[i - 1] != '/') {
      terms.push_back(current);
      current.clear();
    }
    current.push_back(ch);
  }
  terms.push_back(current);

  static const std::regex pi_term(R"(([+-]?)pi2(\^([0-9]+))?(\*(.+))?)");
  Exact out;
  for (const std::string& term : terms) {
    std::smatch match;
    if (std::regex_match(term, match, pi_term)) {
      const std::size_t exponent = match[2].matched ? std::stoul(match[3].str()) : 1;
      Rational coefficient = match[4].matched ? parse_rational(match[5].str()) : Rational(1);
      if (match[1].str() == "-") coefficient = -coefficient;
      Exact piece;
      if (coefficient != 0) {
        piece.coeffs_.assign(exponent + 1, Rational(0));
        piece.coeffs_[exponent] = coefficient;
      }
      out += piece;
    } else {
      out += Exact(parse_rational(term));
    }
  }
  return out;
}

Rational Exact::as_rational() const {
  if (!is_rational()) {
    throw Error(ErrorKind::InvalidArgument, "value " + str() + " is not rational");
  }
  return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

Rational Exact::coefficient(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

void Exact::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RationalInterval Exact::enclosure(std::size_t level) const {
  if (is_rational()) {
    const Rational v = as_rational();
    return {v, v};
  }
  const RationalInterval x = pi_squared_enclosure(level);
  RationalInterval sum{coeffs_[0], coeffs_[0]};
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    const Rational lo_pow = power(x.lo, i);
    const Rational hi_pow = power(x.hi, i);
    if (c > 0) {
      sum.lo += c * lo_pow;
      sum.hi += c * hi_pow;
    } else {
      sum.lo += c * hi_pow;
      sum.hi += c * lo_pow;
    }
  }
  return sum;
}

RationalInterval Exact::separating_enclosure() const {
  if (is_zero()) throw std::logic_error("separating_enclosure of zero");
  for (std::size_t level = 0; level <= kMaxLevel; ++level) {
    RationalInterval e = enclosure(level);
    if (e.lo > 0 || e.hi < 0) return e;
  }
  throw std::logic_error("sign of " + str() + " not resolved within the pi^2 precision limit");
}

int Exact::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return sgn(coeffs_[0]);
  return separating_enclosure().lo > 0 ? 1 : -1;
}

double Exact::to_double() const {
  constexpr double kPiSquared = 9.869604401089358618834491;
  double result = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) result = result * kPiSquared + coeffs_[i].get_d();
  return result;
}

std::string Exact::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  if (coeffs_[0] != 0) out = coeffs_[0].get_str();
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    out += "pi2";
    if (i > 1) out += "^" + std::to_string(i);
    out += "*" + Rational(abs(c)).get_str();
  }
  return out;
}

Exact Exact::operator-() const {
  Exact out = *this;
  for (Rational& c : out.coeffs_) c = -c;
  return out;
}

Exact& Exact::operator+=(const Exact& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Exact& Exact::operator-=(const Exact& other) { return *this += -other; }

Exact& Exact::operator*=(const Exact& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> product(coeffs_.size() + other.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) product[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  coeffs_ = std::move(product);
  trim();
  return *this;
}

Exact& Exact::operator/=(const Rational& divisor) {
  if (divisor == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
  for (Rational& c : coeffs_) c /= divisor;
  return *this;
}

bool operator==(const Exact& lhs, const Exact& rhs) { return lhs.coeffs_ == rhs.coeffs_; }

std::strong_ordering operator<=>(const Exact& lhs, const Exact& rhs) {
  if (lhs.is_rational() && rhs.is_rational()) {
    const int c = cmp(lhs.as_rational(), rhs.as_rational());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const int s = (lhs - rhs).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

RationalInterval interval_mul(const RationalInterval& a, const RationalInterval& b) {
  const Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

RationalInterval interval_div(const RationalInterval& a, const RationalInterval& b) {
  if (b.lo <= 0 && b.hi >= 0) throw std::logic_error("interval division by an interval containing zero");
  Rational inv_lo = 1 / b.hi;
  Rational inv_hi = 1 / b.lo;
  return interval_mul(a, {inv_lo, inv_hi});
}

}  // namespace collapse
