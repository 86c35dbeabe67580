#pragma once

#include <cstddef>
#include <vector>

#include "nnt/graph.hpp"
#include "nnt/spectral.hpp"
#include "nnt/tensor.hpp"

namespace nnt {

struct ClassInfo {
  /// Principal subtensor A[alpha] with its parent indices (the class members).
  Subtensor sub;
  bool weakly_irreducible = false;
  /// A[alpha] has no entries; for a one-vertex class this is the zero block.
  bool zero = false;
};

struct ClassDecomposition {
  std::size_t order = 0;
  std::size_t dim = 0;
  /// Strongly connected components of G(A), final classes last.
  IndexPartition classes;
  /// class_of[v] is the position of v's class in `classes`.
  std::vector<std::size_t> class_of;
  /// Every stored tuple (i1, ..., im) has class(i1) <= class(ik) for all k.
  bool block_ok = false;
  std::vector<ClassInfo> per_class;
};

ClassDecomposition decompose(const SparseTensor& a);

struct ClassRadius {
  std::size_t class_index = 0;
  double rho = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// The class was weakly reducible and its value comes from decomposing A[alpha] again.
  bool recursive = false;
};

/// rho(A[alpha]) for every class. Weakly irreducible classes use the power
/// iteration, zero classes report 0, and weakly reducible classes take the
/// maximum over their own classes.
std::vector<ClassRadius> class_spectral_radii(const ClassDecomposition& dec,
                                              const SpectralOptions& options = {});

/// rho of an arbitrary nonnegative tensor as the largest class radius, with
/// the bracket of the class that attains it.
ClassRadius general_spectral_radius(const SparseTensor& a, const SpectralOptions& options = {});

struct DimensionVerdict {
  /// Weakly irreducible components whose radius ties rho(A).
  std::size_t k = 0;
  std::size_t dim = 0;
  double rho = 0.0;
  double tie_tol = 0.0;
  /// Class positions (into ClassDecomposition::classes) of the tied components.
  std::vector<std::size_t> attaining;
  std::vector<ClassRadius> radii;
};

struct DimensionOptions {
  SpectralOptions spectral;
  /// Relative tolerance for deciding that two component radii are equal.
  double tie_tol = 1e-9;
};

/// dim of the projective eigenvariety at rho for a combinatorially symmetric
/// nonzero tensor: k - 1 where k counts the weakly irreducible components
/// with radius rho. Throws InvalidArgument on other input.
DimensionVerdict eigenvariety_dimension(const SparseTensor& a, const DimensionOptions& options = {});
DimensionVerdict eigenvariety_dimension(const SparseTensor& a, const ClassDecomposition& dec,
                                        const DimensionOptions& options = {});

}  // namespace nnt
