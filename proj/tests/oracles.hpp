#pragma once

// Independent reference computations used only by the tests. Nothing here
// shares code with the library's closed forms.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <utility>
#include <vector>

#include "collapse/exact.hpp"

namespace oracle {

using collapse::Rational;

// n/d in canonical form (mpq_class(n, d) does not reduce).
inline Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline constexpr std::uint64_t kPrime = 1000000007ULL;

inline std::uint64_t mod(std::int64_t x) {
  const auto p = static_cast<std::int64_t>(kPrime);
  return static_cast<std::uint64_t>(((x % p) + p) % p);
}

inline std::uint64_t power_mod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  b %= kPrime;
  while (e) {
    if (e & 1) r = r * b % kPrime;
    b = b * b % kPrime;
    e >>= 1;
  }
  return r;
}

// Rank over F_p of a dense matrix (rows x cols).
inline std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    const std::uint64_t inv = power_mod(m[rank][c], kPrime - 2);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const std::uint64_t f = m[r][c] * inv % kPrime;
      for (std::size_t j = c; j < cols; ++j) {
        m[r][j] = (m[r][j] + (kPrime - f) * m[rank][j]) % kPrime;
      }
    }
    ++rank;
  }
  return rank;
}

// All exponent vectors of the given total degree in `vars` variables.
inline void compositions(int vars, int degree, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == vars - 1) {
    cur.push_back(degree);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= degree; ++a) {
    cur.push_back(a);
    compositions(vars, degree - a, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> monomials(int vars, int degree) {
  std::vector<std::vector<int>> out;
  if (degree < 0) return out;
  std::vector<int> cur;
  compositions(vars, degree, cur, out);
  return out;
}

// dim of harmonic homogeneous polynomials of degree k on R^{n+1}, as the
// kernel of the Laplacian matrix P_k -> P_{k-2}.
inline std::uint64_t harmonic_dimension(int n, int k) {
  const auto source = monomials(n + 1, k);
  const auto target = monomials(n + 1, k - 2);
  if (target.empty()) return source.size();
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < target.size(); ++i) index[target[i]] = i;
  std::vector<std::vector<std::uint64_t>> m(target.size(), std::vector<std::uint64_t>(source.size(), 0));
  for (std::size_t j = 0; j < source.size(); ++j) {
    for (int v = 0; v <= n; ++v) {
      const int a = source[j][v];
      if (a < 2) continue;
      auto image = source[j];
      image[v] -= 2;
      m[index.at(image)][j] = mod(static_cast<std::int64_t>(a) * (a - 1));
    }
  }
  return source.size() - rank_mod_p(std::move(m));
}

// dim of bidegree (k, k) harmonics on C^{n+1}: kernel of sum_i d/dz_i d/dzbar_i.
inline std::uint64_t bidegree_harmonic_dimension(int n, int k) {
  const auto holo = monomials(n + 1, k);
  const auto holo_lower = monomials(n + 1, k - 1);
  const std::size_t cols = holo.size() * holo.size();
  if (holo_lower.empty()) return cols;
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < holo_lower.size(); ++i) index[holo_lower[i]] = i;
  const std::size_t rows = holo_lower.size() * holo_lower.size();
  std::vector<std::vector<std::uint64_t>> m(rows, std::vector<std::uint64_t>(cols, 0));
  for (std::size_t a = 0; a < holo.size(); ++a) {
    for (std::size_t b = 0; b < holo.size(); ++b) {
      for (int v = 0; v <= n; ++v) {
        const int x = holo[a][v];
        const int y = holo[b][v];
        if (x == 0 || y == 0) continue;
        auto da = holo[a];
        auto db = holo[b];
        --da[v];
        --db[v];
        const std::size_t row = index.at(da) * holo_lower.size() + index.at(db);
        m[row][a * holo.size() + b] = mod(static_cast<std::int64_t>(x) * y);
      }
    }
  }
  return cols - rank_mod_p(std::move(m));
}

inline Rational choose(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Rational r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Sp(1)-invariant harmonics of degree d on H^{n+1}, by weight counting for
// the right Sp(1) action (2n+2 copies of the standard representation).
inline std::uint64_t sp1_invariant_harmonics(int n, int d) {
  const long copies = 2L * n + 2;
  auto weight_mult = [&](long degree, long w) -> Rational {
    if (degree < 0 || (degree + w) % 2 != 0 || std::abs(w) > degree) return 0;
    const long a = (degree + w) / 2;
    const long b = degree - a;
    return choose(a + copies - 1, a) * choose(b + copies - 1, b);
  };
  auto invariants = [&](long degree) -> Rational { return weight_mult(degree, 0) - weight_mult(degree, 2); };
  const Rational r = invariants(d) - invariants(d - 2);
  return r.get_num().get_ui();
}

// Dual-lattice norms by a plain box scan (box chosen generously).
inline std::map<Rational, std::uint64_t> brute_lattice_norms(const std::vector<std::vector<Rational>>& dual_form,
                                                            long box, const Rational& upper) {
  std::map<Rational, std::uint64_t> out;
  const std::size_t d = dual_form.size();
  std::vector<long> v(d, -box);
  while (true) {
    Rational q = 0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) q += dual_form[i][j] * v[i] * v[j];
    }
    if (q <= upper) ++out[q];
    std::size_t i = 0;
    while (i < d && v[i] == box) v[i++] = -box;
    if (i == d) break;
    ++v[i];
  }
  return out;
}

}  // namespace oracle
