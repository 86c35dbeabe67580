#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nnt/graph.hpp"
#include "nnt/smith.hpp"
#include "nnt/spectral.hpp"
#include "nnt/tensor.hpp"

namespace nnt {

using Modulus = std::uint64_t;

/// Diagonal phase matrix D = diag(e^{2 pi i t_k / M}) with t_1 = 0.
class PhaseDiagonal {
 public:
  PhaseDiagonal(Modulus modulus, std::vector<std::uint64_t> t);

  static PhaseDiagonal identity(Modulus modulus, std::size_t n);

  Modulus modulus() const noexcept { return modulus_; }
  const std::vector<std::uint64_t>& t() const noexcept { return t_; }
  std::size_t size() const noexcept { return t_.size(); }

  DenseVector phases() const;

  /// Same matrix written over a multiple of the current modulus.
  PhaseDiagonal lifted(Modulus multiple) const;

  /// True when D^power is the identity.
  bool has_order_dividing(std::uint64_t power) const;

  friend auto operator<=>(const PhaseDiagonal&, const PhaseDiagonal&) = default;
  friend bool operator==(const PhaseDiagonal&, const PhaseDiagonal&) = default;

 private:
  Modulus modulus_;
  std::vector<std::uint64_t> t_;
};

/// Rows of  (m-1) t_{i1} - t_{i2} - ... - t_{im} == rhs  (mod M), one per
/// distinct coefficient pattern of the support.
struct CongruenceSystem {
  std::size_t columns = 0;
  Modulus modulus = 1;
  std::vector<std::int64_t> coefficients;  // row-major
  std::vector<std::uint64_t> rhs;          // each in [0, M)

  std::size_t rows() const noexcept { return rhs.size(); }
  std::span<const std::int64_t> row(std::size_t r) const {
    return {coefficients.data() + r * columns, columns};
  }
  bool is_homogeneous() const;
  bool satisfied_by(std::span<const std::uint64_t> t) const;
  IntMatrix matrix() const;
};

/// The system behind A = e^{-2 pi i j / ell} D^{-(m-1)} A D: every row carries
/// rhs = -M j / ell mod M. Requires ell | M unless j == 0.
CongruenceSystem constraint_system(const SparseTensor& a, std::int64_t j, std::uint64_t ell,
                                   Modulus modulus);

/// Solutions of a homogeneous system with t_1 = 0, as a direct sum of cyclic
/// factors: every solution is sum_k c_k basis[k] with 0 <= c_k < orders[k].
struct SolutionLattice {
  Modulus modulus = 1;
  std::size_t columns = 0;
  std::vector<PhaseDiagonal> basis;
  std::vector<std::uint64_t> orders;
  Integer count = 1;
};

SolutionLattice homogeneous_solutions(const CongruenceSystem& sys);

/// prod_k gcd(d_k, M) * M^{n-k} over the Smith invariants of the system with
/// the row t_1 = 0 appended; the number of normalized solutions in [0, M)^n.
Integer count_solutions(const CongruenceSystem& sys);

/// A normalized solution (t_1 = 0) when one exists. The witness is checked
/// against every row before it is returned.
std::optional<PhaseDiagonal> solvable(const CongruenceSystem& sys);

/// Finite group of real phase vectors y in (R/Z)^n with B y integral and
/// y_1 = 0 (optionally extended by an eigenvalue phase coordinate).
struct TorusGroup {
  Integer order;
  /// Largest Smith invariant: every element has denominator dividing it.
  Integer exponent;
};

/// The stabilizer group D^{(0)} over the full circle, without any modulus.
/// nullopt when the group is infinite.
std::optional<TorusGroup> stabilizer_torus(const SparseTensor& a);

/// The group of pairs (phi, D) with A = e^{-i phi} D^{-(m-1)} A D, d_11 = 1.
std::optional<TorusGroup> rotation_torus(const SparseTensor& a);

/// All elements, sorted lexicographically. Throws BudgetExceeded above cap.
std::vector<PhaseDiagonal> enumerate_lattice(const SolutionLattice& lattice, std::size_t cap);

/// Canonical generating set of a finite group given by its sorted elements:
/// scan in lexicographic order, keep every element not yet generated.
std::vector<PhaseDiagonal> canonical_generators(std::span<const PhaseDiagonal> sorted_elements);

enum class ModulusPolicy {
  kSymmetricIrreducible,  // s = 1 outright
  kSymmetric,             // modulus m
  kIrreducible,           // modulus (m-1)^r
  kWeaklyIrreducible,     // trial lcm(m, (m-1)^{n-1}), certified over the torus
};

std::string to_string(ModulusPolicy policy);

struct PhaseGroupOptions {
  /// Largest group that is enumerated element by element.
  std::size_t cap = 10000;
};

struct CyclicStructure {
  std::uint64_t ell = 1;
  /// Modulus the coset representatives are written over.
  Modulus modulus = 1;
  /// Representative of D^{(j)} for j = 0..ell-1.
  std::vector<std::optional<PhaseDiagonal>> cosets;
};

struct EigenvarietyReport {
  std::uint64_t s = 1;
  std::uint64_t ell = 1;
  ModulusPolicy policy = ModulusPolicy::kSymmetricIrreducible;
  Modulus modulus_used = 1;
  /// The modulus is proven to contain every group element.
  bool exact = false;
  /// The fallback trial modulus had to be widened to the group exponent.
  bool modulus_extended = false;
  /// Exponent of D^{(0)} from the torus computation; 0 when skipped.
  std::uint64_t group_exponent = 0;
  /// Generators of D^{(0)}; canonical unless the group exceeded the cap.
  std::vector<PhaseDiagonal> generators;
  bool canonical_generators = true;
  Modulus coset_modulus = 1;
  std::vector<std::optional<PhaseDiagonal>> cosets;
};

/// Modulus the policy assigns before any certificate is consulted.
std::pair<ModulusPolicy, Modulus> modulus_policy(const SparseTensor& a,
                                                 const StructureProfile& profile);

/// s(A) = |D^{(0)}| with generators and the cyclic structure.
EigenvarietyReport stabilizing_index(const SparseTensor& a, const StructureProfile& profile,
                                     const PhaseGroupOptions& options = {});
EigenvarietyReport stabilizing_index(const SparseTensor& a, const PhaseGroupOptions& options = {});

/// Cyclic index ell and one representative per coset D^{(j)}.
///
/// Combinatorially symmetric input: the largest divisor ell of m whose j = 1
/// system is solvable modulo m. Otherwise ell = |rotation group| / |D^{(0)}|,
/// computed over the torus.
CyclicStructure cyclic_index(const SparseTensor& a, const StructureProfile& profile,
                             const PhaseGroupOptions& options = {});

/// Elements of D^{(j)} over the report's coset modulus, sorted.
std::vector<PhaseDiagonal> coset_elements(const SparseTensor& a, const EigenvarietyReport& report,
                                          std::uint64_t j, std::size_t cap);

struct EigenvectorOptions {
  std::size_t cap = 10000;
  /// Acceptance threshold on eigen_residual, scaled by max(1, rho).
  double tol = 1e-8;
};

struct EigenvectorSet {
  std::uint64_t j = 0;
  Complex lambda;
  std::vector<PhaseDiagonal> phases;
  std::vector<DenseVector> vectors;
  double max_residual = 0.0;
  std::size_t rejected = 0;
  /// Set when |D^{(j)}| exceeded the cap; only generators are reported.
  bool truncated = false;
  std::vector<PhaseDiagonal> generators;
};

/// { D * perron : D in D^{(j)} }, each checked against
/// A x^{m-1} = rho e^{2 pi i j / ell} x^{[m-1]}.
EigenvectorSet eigenvectors(const SparseTensor& a, const SpectralResult& spectral,
                            const EigenvarietyReport& report, std::uint64_t j,
                            const EigenvectorOptions& options = {});

/// x_k = e^{2 pi i t_k / M} p_k.
DenseVector phase_scaled(const PhaseDiagonal& d, std::span<const double> perron);

}  // namespace nnt
