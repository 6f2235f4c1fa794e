#include "collapse/spectra.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "collapse/errors.hpp"
#include "collapse/parallel.hpp"

namespace collapse {

namespace {

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

std::uint64_t to_u64(const mpz_class& value) {
  if (value < 0 || mpz_sizeinbase(value.get_mpz_t(), 2) > 64) {
    throw Error(ErrorKind::InvalidArgument, "multiplicity does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(mpz_get_ui(value.get_mpz_t()));
}

using Matrix = std::vector<std::vector<Rational>>;

Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      const Rational factor = m[row][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[row][j] -= factor * m[col][j];
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix a = m;
  Matrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error(ErrorKind::SchemaViolation, "singular gram matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= factor * a[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

// Integer form of the dual quadratic form: G^{-1} = form / denominator.
struct DualForm {
  std::vector<std::vector<mpz_class>> form;
  mpz_class denominator = 1;
  std::vector<long> box;  // |v_i| <= box[i]
  mpz_class lower_scaled;
  mpz_class upper_scaled;
  bool lower_inclusive = false;
};

DualForm make_dual_form(const Matrix& gram, const Rational& lower, const Rational& upper) {
  const Matrix q = inverse(gram);
  DualForm out;
  for (const auto& row : q) {
    for (const Rational& x : row) {
      mpz_lcm(out.denominator.get_mpz_t(), out.denominator.get_mpz_t(), x.get_den_mpz_t());
    }
  }
  out.form.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (const Rational& x : q[i]) {
      Rational scaled = x * out.denominator;
      out.form[i].push_back(scaled.get_num());
    }
  }
  // max v_i^2 subject to v^T G^{-1} v <= upper is upper * G_ii.
  for (std::size_t i = 0; i < gram.size(); ++i) {
    const Rational bound_sq = upper * gram[i][i];
    mpz_class floor_sq;
    mpz_fdiv_q(floor_sq.get_mpz_t(), bound_sq.get_num_mpz_t(), bound_sq.get_den_mpz_t());
    mpz_class root = 0;
    if (floor_sq > 0) mpz_sqrt(root.get_mpz_t(), floor_sq.get_mpz_t());
    out.box.push_back(root.get_si());
  }
  // q = value / denominator; compare the integer value against scaled bounds.
  const Rational up = upper * out.denominator;
  mpz_fdiv_q(out.upper_scaled.get_mpz_t(), up.get_num_mpz_t(), up.get_den_mpz_t());
  const Rational low = lower * out.denominator;
  if (lower < 0) {
    out.lower_scaled = -1;
  } else {
    mpz_fdiv_q(out.lower_scaled.get_mpz_t(), low.get_num_mpz_t(), low.get_den_mpz_t());
  }
  return out;
}

// Accumulates counts for all vectors whose first coordinate is `first`.
void scan_slice(const DualForm& form, long first, std::map<mpz_class, std::uint64_t>& counts) {
  const std::size_t d = form.box.size();
  std::vector<long> v(d);
  v[0] = first;
  for (std::size_t i = 1; i < d; ++i) v[i] = -form.box[i];
  mpz_class value;
  while (true) {
    value = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (v[j] == 0) continue;
        value += form.form[i][j] * v[i] * v[j];
      }
    }
    if (value > form.lower_scaled && value <= form.upper_scaled) ++counts[value];
    std::size_t i = 1;
    while (i < d && v[i] == form.box[i]) {
      v[i] = -form.box[i];
      ++i;
    }
    if (i >= d) break;
    ++v[i];
  }
}

std::vector<std::pair<Rational, std::uint64_t>> finish(const DualForm& form,
                                                       const std::map<mpz_class, std::uint64_t>& counts) {
  std::vector<std::pair<Rational, std::uint64_t>> out;
  out.reserve(counts.size());
  for (const auto& [value, count] : counts) {
    Rational norm(value, form.denominator);
    norm.canonicalize();
    out.emplace_back(norm, count);
  }
  return out;
}

}  // namespace

std::uint64_t sphere_multiplicity(int n, int k) {
  if (k < 0) return 0;
  return to_u64(binomial(n + k, k) - binomial(n + k - 2, k - 2));
}

std::uint64_t complex_projective_multiplicity(int n, int k) {
  if (k < 0) return 0;
  const long dim = n + 1;
  const mpz_class full = binomial(k + dim - 1, k);
  const mpz_class lower = binomial(k + dim - 2, k - 1);
  return to_u64(full * full - lower * lower);
}

std::uint64_t quaternionic_projective_multiplicity(int n, int k) {
  if (k < 0) return 0;
  const long m = 2L * n + 2;
  // dim of the GL(m) module for the partition (k, k), by hook contents.
  auto rectangle = [m](long j) -> mpz_class {
    if (j < 0) return 0;
    return binomial(m + j - 1, j) * binomial(m + j - 2, j) / (j + 1);
  };
  return to_u64(rectangle(k) - rectangle(k - 1));
}

std::vector<std::pair<Rational, std::uint64_t>> lattice_norms_serial(const std::vector<std::vector<Rational>>& gram,
                                                                     const Rational& lower, const Rational& upper) {
  const DualForm form = make_dual_form(gram, lower, upper);
  std::map<mpz_class, std::uint64_t> counts;
  for (long first = -form.box[0]; first <= form.box[0]; ++first) scan_slice(form, first, counts);
  return finish(form, counts);
}

std::vector<std::pair<Rational, std::uint64_t>> lattice_norms_parallel(
    const std::vector<std::vector<Rational>>& gram, const Rational& lower, const Rational& upper) {
  const DualForm form = make_dual_form(gram, lower, upper);
  const long extent = form.box[0];
  std::map<mpz_class, std::uint64_t> counts;
#pragma omp parallel num_threads(thread_count())
  {
    std::map<mpz_class, std::uint64_t> local;
#pragma omp for schedule(dynamic)
    for (long first = -extent; first <= extent; ++first) scan_slice(form, first, local);
#pragma omp critical(collapse_lattice_merge)
    for (const auto& [value, count] : local) counts[value] += count;
  }
  return finish(form, counts);
}

void validate(const SpaceDescriptor& space) {
  auto fail = [](const std::string& message) { throw Error(ErrorKind::SchemaViolation, message); };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          if (s.n < 1) fail("sphere dimension must be >= 1");
          if (s.radius <= 0) fail("sphere radius must be positive");
        } else if constexpr (std::is_same_v<T, FlatTorus>) {
          const std::size_t d = s.gram.size();
          if (d == 0) fail("flat torus gram matrix is empty");
          for (const auto& row : s.gram) {
            if (row.size() != d) fail("flat torus gram matrix is not square");
          }
          for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
              if (s.gram[i][j] != s.gram[j][i]) fail("flat torus gram matrix is not symmetric");
            }
          }
          for (std::size_t k = 1; k <= d; ++k) {
            Matrix minor(k, std::vector<Rational>(k));
            for (std::size_t i = 0; i < k; ++i) {
              for (std::size_t j = 0; j < k; ++j) minor[i][j] = s.gram[i][j];
            }
            if (determinant(minor) <= 0) fail("flat torus gram matrix is not positive definite");
          }
        } else if constexpr (std::is_same_v<T, ComplexProjective> || std::is_same_v<T, QuaternionicProjective>) {
          if (s.n < 1) fail("projective space dimension must be >= 1");
        } else if constexpr (std::is_same_v<T, SO3>) {
          if (s.radius <= 0) fail("SO(3) radius must be positive");
        } else {
          if (s.valid_below.sign() <= 0) fail("explicit spectrum needs a positive validBelow");
          if (s.entries.empty() || !s.entries.front().value.is_zero()) {
            fail("explicit spectrum must start with the eigenvalue 0");
          }
          for (std::size_t i = 0; i < s.entries.size(); ++i) {
            if (s.entries[i].multiplicity < 1) fail("explicit spectrum multiplicities must be >= 1");
            if (i > 0 && !(s.entries[i - 1].value < s.entries[i].value)) {
              fail("explicit spectrum values must be strictly increasing");
            }
            if (!(s.entries[i].value < s.valid_below)) fail("explicit spectrum entry at or above validBelow");
          }
        }
      },
      space);
}

std::optional<int> dimension_of(const SpaceDescriptor& space) {
  return std::visit(
      [](const auto& s) -> std::optional<int> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) return s.n;
        else if constexpr (std::is_same_v<T, FlatTorus>) return static_cast<int>(s.gram.size());
        else if constexpr (std::is_same_v<T, ComplexProjective>) return 2 * s.n;
        else if constexpr (std::is_same_v<T, QuaternionicProjective>) return 4 * s.n;
        else if constexpr (std::is_same_v<T, SO3>) return 3;
        else return std::nullopt;
      },
      space);
}

std::optional<Rational> catalog_scalar_curvature(const SpaceDescriptor& space) {
  return std::visit(
      [](const auto& s) -> std::optional<Rational> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) return Rational(s.n * (s.n - 1)) / (s.radius * s.radius);
        else if constexpr (std::is_same_v<T, FlatTorus>) return Rational(0);
        else if constexpr (std::is_same_v<T, ComplexProjective>) return Rational(4 * s.n * (s.n + 1));
        else if constexpr (std::is_same_v<T, QuaternionicProjective>) return Rational(16 * s.n * (s.n + 2));
        else if constexpr (std::is_same_v<T, SO3>) return Rational(6) / (s.radius * s.radius);
        else return std::nullopt;
      },
      space);
}

std::string describe(const SpaceDescriptor& space) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          return "Sphere(n=" + std::to_string(s.n) + ", r=" + to_string(s.radius) + ")";
        } else if constexpr (std::is_same_v<T, FlatTorus>) {
          return "FlatTorus(d=" + std::to_string(s.gram.size()) + ")";
        } else if constexpr (std::is_same_v<T, ComplexProjective>) {
          return "ComplexProjective(n=" + std::to_string(s.n) + ")";
        } else if constexpr (std::is_same_v<T, QuaternionicProjective>) {
          return "QuaternionicProjective(n=" + std::to_string(s.n) + ")";
        } else if constexpr (std::is_same_v<T, SO3>) {
          return "SO3(r=" + to_string(s.radius) + ")";
        } else {
          return "Explicit(" + std::to_string(s.entries.size()) + " entries, validBelow=" + s.valid_below.str() + ")";
        }
      },
      space);
}

class SpectrumStream::Generator {
 public:
  virtual ~Generator() = default;
  // Next unscaled entry; nullopt once a finite list is used up.
  virtual std::optional<EigenvalueEntry> produce() = 0;
  virtual std::optional<Exact> valid_below() const { return std::nullopt; }
};

namespace {

// Entries k = 0, 1, 2, ... given by closed forms.
template <typename ValueFn, typename MultFn>
class FormulaGenerator final : public SpectrumStream::Generator {
 public:
  FormulaGenerator(ValueFn value, MultFn mult) : value_(value), mult_(mult) {}
  std::optional<EigenvalueEntry> produce() override {
    const long k = k_++;
    return EigenvalueEntry{Exact(value_(k)), mult_(k)};
  }

 private:
  ValueFn value_;
  MultFn mult_;
  long k_ = 0;
};

template <typename ValueFn, typename MultFn>
std::unique_ptr<SpectrumStream::Generator> formula(ValueFn value, MultFn mult) {
  return std::make_unique<FormulaGenerator<ValueFn, MultFn>>(value, mult);
}

class TorusGenerator final : public SpectrumStream::Generator {
 public:
  explicit TorusGenerator(Matrix gram) : gram_(std::move(gram)) {
    const Matrix q = inverse(gram_);
    for (std::size_t i = 0; i < q.size(); ++i) upper_ = std::max(upper_, q[i][i]);
  }

  std::optional<EigenvalueEntry> produce() override {
    while (next_ >= batch_.size()) {
      batch_ = lattice_norms_parallel(gram_, lower_, upper_);
      next_ = 0;
      lower_ = upper_;
      upper_ *= 2;
    }
    const auto& [norm, count] = batch_[next_++];
    return EigenvalueEntry{Exact::pi2(4 * norm), count};
  }

 private:
  Matrix gram_;
  Rational lower_ = -1;
  Rational upper_ = 1;
  std::vector<std::pair<Rational, std::uint64_t>> batch_;
  std::size_t next_ = 0;
};

class ExplicitGenerator final : public SpectrumStream::Generator {
 public:
  explicit ExplicitGenerator(Explicit list) : list_(std::move(list)) {}
  std::optional<EigenvalueEntry> produce() override {
    if (next_ >= list_.entries.size()) return std::nullopt;
    return list_.entries[next_++];
  }
  std::optional<Exact> valid_below() const override { return list_.valid_below; }

 private:
  Explicit list_;
  std::size_t next_ = 0;
};

}  // namespace

SpectrumStream::SpectrumStream(const SpaceDescriptor& space) {
  validate(space);
  std::visit(
      [this](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          const long n = s.n;
          generator_ = formula([n](long k) { return Rational(k * (k + n - 1)); },
                               [n](long k) { return sphere_multiplicity(static_cast<int>(n), static_cast<int>(k)); });
          scale_ = s.radius * s.radius;
        } else if constexpr (std::is_same_v<T, FlatTorus>) {
          generator_ = std::make_unique<TorusGenerator>(s.gram);
        } else if constexpr (std::is_same_v<T, ComplexProjective>) {
          const long n = s.n;
          generator_ = formula(
              [n](long k) { return Rational(4 * k * (k + n)); },
              [n](long k) { return complex_projective_multiplicity(static_cast<int>(n), static_cast<int>(k)); });
        } else if constexpr (std::is_same_v<T, QuaternionicProjective>) {
          const long n = s.n;
          generator_ = formula(
              [n](long k) { return Rational(4 * k * (k + 2 * n + 1)); },
              [n](long k) { return quaternionic_projective_multiplicity(static_cast<int>(n), static_cast<int>(k)); });
        } else if constexpr (std::is_same_v<T, SO3>) {
          // Even-degree harmonics of S^3: degree 2k has value 2k(2k+2), multiplicity (2k+1)^2.
          generator_ = formula([](long k) { return Rational(4 * k * (k + 1)); },
                               [](long k) { return static_cast<std::uint64_t>((2 * k + 1) * (2 * k + 1)); });
          scale_ = s.radius * s.radius;
        } else {
          generator_ = std::make_unique<ExplicitGenerator>(s);
        }
      },
      space);
}

SpectrumStream::~SpectrumStream() = default;
SpectrumStream::SpectrumStream(SpectrumStream&&) noexcept = default;
SpectrumStream& SpectrumStream::operator=(SpectrumStream&&) noexcept = default;

SpectrumStream& SpectrumStream::rescale(const Rational& alpha) {
  if (alpha <= 0) throw Error(ErrorKind::InvalidArgument, "rescale factor must be positive");
  scale_ *= alpha;
  if (lookahead_) lookahead_->value /= alpha;
  return *this;
}

std::optional<Exact> SpectrumStream::valid_below() const {
  auto bound = generator_->valid_below();
  if (bound) *bound /= scale_;
  return bound;
}

void SpectrumStream::require_valid(const Exact& bound, bool inclusive) const {
  const auto limit = valid_below();
  if (!limit) return;
  if (inclusive ? !(bound < *limit) : !(bound <= *limit)) {
    throw Error(ErrorKind::SpectrumExhausted,
                "explicit spectrum is only known below T_max = " + limit->str() + ", queried at " + bound.str());
  }
}

const EigenvalueEntry& SpectrumStream::peek() {
  if (!lookahead_) {
    auto entry = generator_->produce();
    if (!entry) {
      throw Error(ErrorKind::SpectrumExhausted,
                  "explicit spectrum is only known below T_max = " + valid_below()->str());
    }
    entry->value /= scale_;
    lookahead_ = std::move(entry);
  }
  return *lookahead_;
}

EigenvalueEntry SpectrumStream::next() {
  EigenvalueEntry entry = peek();
  lookahead_.reset();
  ++position_;
  return entry;
}

std::optional<EigenvalueEntry> SpectrumStream::next_below(const Exact& bound, bool inclusive) {
  require_valid(bound, inclusive);
  if (!lookahead_) {
    auto entry = generator_->produce();
    if (!entry) return std::nullopt;  // explicit list complete below its bound
    entry->value /= scale_;
    lookahead_ = std::move(entry);
  }
  const bool below = inclusive ? lookahead_->value <= bound : lookahead_->value < bound;
  if (!below) return std::nullopt;
  return next();
}

SpectrumStream spectrum_of(const SpaceDescriptor& space) { return SpectrumStream(space); }

std::vector<EigenvalueEntry> eigenvalues_below(SpectrumStream& stream, const Exact& threshold, bool strict) {
  std::vector<EigenvalueEntry> out;
  if (threshold.sign() <= 0) return out;
  while (auto entry = stream.next_below(threshold, !strict)) {
    if (entry->value.sign() > 0) out.push_back(std::move(*entry));
  }
  return out;
}

std::uint64_t counting_below(SpectrumStream& stream, const Exact& threshold, bool strict) {
  std::uint64_t total = 0;
  for (const EigenvalueEntry& entry : eigenvalues_below(stream, threshold, strict)) total += entry.multiplicity;
  return total;
}

}  // namespace collapse
