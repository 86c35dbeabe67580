#include "nnt/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nnt/error.hpp"

namespace nnt {

ClassDecomposition decompose(const SparseTensor& a) {
  ClassDecomposition dec;
  dec.order = a.order();
  dec.dim = a.dim();
  dec.classes = strongly_connected_components(build_digraph(a));
  dec.class_of.assign(a.dim(), 0);
  for (std::size_t c = 0; c < dec.classes.size(); ++c) {
    for (Index v : dec.classes[c]) dec.class_of[v] = c;
  }

  dec.block_ok = true;
  for (std::size_t k = 0; k < a.nnz() && dec.block_ok; ++k) {
    auto idx = a.index(k);
    const auto head = dec.class_of[idx[0]];
    for (std::size_t p = 1; p < idx.size(); ++p) {
      if (dec.class_of[idx[p]] < head) {
        dec.block_ok = false;
        break;
      }
    }
  }

  dec.per_class.reserve(dec.classes.size());
  for (const auto& alpha : dec.classes) {
    ClassInfo info{subtensor(a, alpha)};
    info.zero = info.sub.tensor.is_zero();
    info.weakly_irreducible = is_weakly_irreducible(info.sub.tensor);
    dec.per_class.push_back(std::move(info));
  }
  return dec;
}

namespace {

ClassRadius radius_of(const ClassInfo& info, const SpectralOptions& options) {
  ClassRadius r;
  if (info.zero) return r;
  if (info.weakly_irreducible) {
    const auto s = spectral_radius(info.sub.tensor, options);
    r.rho = s.rho;
    r.lower = s.lower;
    r.upper = s.upper;
    return r;
  }
  r = general_spectral_radius(info.sub.tensor, options);
  r.recursive = true;
  return r;
}

}  // namespace

std::vector<ClassRadius> class_spectral_radii(const ClassDecomposition& dec,
                                              const SpectralOptions& options) {
  std::vector<ClassRadius> out;
  out.reserve(dec.per_class.size());
  for (std::size_t c = 0; c < dec.per_class.size(); ++c) {
    auto r = radius_of(dec.per_class[c], options);
    r.class_index = c;
    out.push_back(r);
  }
  return out;
}

ClassRadius general_spectral_radius(const SparseTensor& a, const SpectralOptions& options) {
  if (is_weakly_irreducible(a)) {
    const auto s = spectral_radius(a, options);
    return {0, s.rho, s.lower, s.upper, false};
  }
  const auto dec = decompose(a);
  ClassRadius best;
  bool any = false;
  for (const auto& r : class_spectral_radii(dec, options)) {
    if (!any || r.rho > best.rho) best = r;
    any = true;
  }
  best.recursive = dec.classes.size() > 1 || best.recursive;
  return best;
}

DimensionVerdict eigenvariety_dimension(const SparseTensor& a, const DimensionOptions& options) {
  return eigenvariety_dimension(a, decompose(a), options);
}

DimensionVerdict eigenvariety_dimension(const SparseTensor& a, const ClassDecomposition& dec,
                                        const DimensionOptions& options) {
  if (a.is_zero()) throw InvalidArgument("eigenvariety dimension is undefined for the zero tensor");
  if (!is_combinatorially_symmetric(a)) {
    throw InvalidArgument("eigenvariety dimension needs a combinatorially symmetric tensor");
  }
  if (!dec.block_ok) throw std::logic_error("class decomposition is not block triangular");

  DimensionVerdict v;
  v.tie_tol = options.tie_tol;
  v.radii = class_spectral_radii(dec, options.spectral);
  for (const auto& r : v.radii) {
    const auto& info = dec.per_class[r.class_index];
    if (!info.zero && !info.weakly_irreducible) {
      throw std::logic_error("combinatorially symmetric tensor has a weakly reducible class");
    }
    v.rho = std::max(v.rho, r.rho);
  }
  for (const auto& r : v.radii) {
    if (dec.per_class[r.class_index].zero) continue;
    if (std::abs(r.rho - v.rho) <= options.tie_tol * std::max(v.rho, 1e-300)) {
      v.attaining.push_back(r.class_index);
    }
  }
  v.k = v.attaining.size();
  v.dim = v.k - 1;
  return v;
}

}  // namespace nnt
