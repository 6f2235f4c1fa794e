#pragma once

// Spectrum of the Laplacian of the canonical variation g_t.
//
// Every eigenvalue of Delta_t has the form mu_k + (1/t^2 - 1) phi_j with mu_k
// in Spec(M, g_1) and phi_j in Spec(F). Base eigenvalues lift to eigenvalues
// that do not depend on t. For Riemannian products every combination occurs,
// Delta_t = Delta_F / t^2 + Delta_B, and the spectrum is the full sum set.

#include <cstddef>
#include <utility>
#include <vector>

#include "collapse/spectra.hpp"
#include "collapse/submersion.hpp"

namespace collapse {

// mu + (1/t^2 - 1) phi
Exact component_eigenvalue(const Exact& mu, const Exact& phi, const Rational& t);

// The t-independent part of Spec(Delta_t): the base spectrum.
SpectrumStream base_spectrum_in_variation(const SubmersionModel& model);

struct ProductEigenvalue {
  Exact value;
  std::uint64_t multiplicity = 0;
  // (base index k, fiber index j) of every contributing pair, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> witnesses;

  friend bool operator==(const ProductEigenvalue&, const ProductEigenvalue&) = default;
};

// All eigenvalues phi_j / t^2 + mu_k < T of a product model, merged and
// increasing (0 included). Throws NotAProduct unless model.is_product.
std::vector<ProductEigenvalue> product_spectrum_below(const SubmersionModel& model, const Rational& t, const Exact& T);
// Serial reference; same result.
std::vector<ProductEigenvalue> product_spectrum_below_serial(const SubmersionModel& model, const Rational& t,
                                                             const Exact& T);

}  // namespace collapse
