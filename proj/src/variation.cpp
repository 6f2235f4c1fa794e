#include "collapse/variation.hpp"

#include <algorithm>
#include <map>

#include "collapse/errors.hpp"
#include "collapse/parallel.hpp"

namespace collapse {

Exact component_eigenvalue(const Exact& mu, const Exact& phi, const Rational& t) {
  if (t <= 0) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  return mu + phi * Exact(1 / (t * t) - 1);
}

SpectrumStream base_spectrum_in_variation(const SubmersionModel& model) { return base_spectrum(model); }

namespace {

struct Factors {
  std::vector<EigenvalueEntry> fiber;  // values already divided by t^2
  std::vector<EigenvalueEntry> base;
};

std::vector<EigenvalueEntry> entries_below(SpectrumStream stream, const Exact& bound) {
  std::vector<EigenvalueEntry> out;
  if (bound.sign() <= 0) return out;
  while (auto e = stream.next_below(bound, false)) out.push_back(std::move(*e));
  return out;
}

Factors collect(const SubmersionModel& model, const Rational& t, const Exact& T) {
  if (!model.is_product) {
    throw Error(ErrorKind::NotAProduct,
                "model \"" + model.name + "\" is not a Riemannian product; its full spectrum is not determined");
  }
  if (t <= 0) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  Factors f;
  SpectrumStream fiber = fiber_spectrum(model);
  fiber.rescale(t * t);
  f.fiber = entries_below(std::move(fiber), T);
  f.base = entries_below(base_spectrum(model), T);
  return f;
}

using Accumulator = std::map<Exact, ProductEigenvalue>;

void combine_row(const Factors& f, std::size_t j, const Exact& T, Accumulator& acc) {
  const EigenvalueEntry& phi = f.fiber[j];
  for (std::size_t k = 0; k < f.base.size(); ++k) {
    Exact value = phi.value + f.base[k].value;
    if (!(value < T)) break;  // base values increase
    ProductEigenvalue& slot = acc[value];
    slot.multiplicity += phi.multiplicity * f.base[k].multiplicity;
    slot.witnesses.emplace_back(k, j);
  }
}

std::vector<ProductEigenvalue> finish(Accumulator& acc) {
  std::vector<ProductEigenvalue> out;
  out.reserve(acc.size());
  for (auto& [value, entry] : acc) {
    entry.value = value;
    std::sort(entry.witnesses.begin(), entry.witnesses.end());
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

std::vector<ProductEigenvalue> product_spectrum_below_serial(const SubmersionModel& model, const Rational& t,
                                                             const Exact& T) {
  const Factors f = collect(model, t, T);
  Accumulator acc;
  for (std::size_t j = 0; j < f.fiber.size(); ++j) combine_row(f, j, T, acc);
  return finish(acc);
}

std::vector<ProductEigenvalue> product_spectrum_below(const SubmersionModel& model, const Rational& t,
                                                      const Exact& T) {
  const Factors f = collect(model, t, T);
  const auto rows = static_cast<long>(f.fiber.size());
  Accumulator acc;
#pragma omp parallel num_threads(thread_count())
  {
    Accumulator local;
#pragma omp for schedule(dynamic)
    for (long j = 0; j < rows; ++j) combine_row(f, static_cast<std::size_t>(j), T, local);
#pragma omp critical(collapse_product_merge)
    {
      // Exact comparisons are costly: the first thread hands over its map whole,
      // later ones transfer nodes and leave behind only values already present.
      if (acc.empty()) acc.swap(local);
      acc.merge(local);
      for (auto& [value, entry] : local) {
        ProductEigenvalue& slot = acc.at(value);
        slot.multiplicity += entry.multiplicity;
        slot.witnesses.insert(slot.witnesses.end(), entry.witnesses.begin(), entry.witnesses.end());
      }
    }
  }
  return finish(acc);
}

}  // namespace collapse
