#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nnt/phase_group.hpp"
#include "nnt/spectral.hpp"
#include "nnt/tensor.hpp"

namespace nnt {

/// One phase-scaled Perron vector that solves the eigenequation with
/// lambda = rho e^{2 pi i q / M}.
struct OracleHit {
  std::uint64_t q = 0;
  PhaseDiagonal t = PhaseDiagonal::identity(1, 1);
  double residual = 0.0;
};

struct OracleResult {
  Modulus modulus_tried = 1;
  double tol = 0.0;
  /// Hits in increasing t order.
  std::vector<OracleHit> hits;
  /// Number of hits per phase class q.
  std::map<std::uint64_t, std::size_t> counts;
  std::uint64_t candidates = 0;
};

struct OracleOptions {
  double tol = 1e-8;
  /// Largest M^{n-1} that is enumerated.
  std::uint64_t budget = 10'000'000;
};

/// Tries every t in [0, M)^n with t_1 = 0: x = D_t perron is kept when
/// A x^{m-1} = lambda x^{[m-1]} with |lambda| = rho. lambda is read off the
/// component of largest modulus and checked against every other component.
/// Throws BudgetExceeded when M^{n-1} exceeds the budget.
OracleResult enumerate_spectral_circle(const SparseTensor& a, const SpectralResult& spectral,
                                       Modulus modulus, const OracleOptions& options = {});

enum class VerdictStatus { kMatch, kMismatch, kSkipped };
std::string to_string(VerdictStatus status);

struct OracleVerdict {
  VerdictStatus status = VerdictStatus::kSkipped;
  Modulus modulus = 1;
  std::vector<std::string> problems;
  /// Checks that could not run at this modulus.
  std::vector<std::string> notes;
  /// Both sides rendered as text, filled on mismatch.
  std::string dump;
  std::optional<OracleResult> result;
};

/// Compares a phase_group report against the oracle run at the report's coset
/// modulus (or `modulus` when nonzero): per-phase counts must equal s, the
/// phase classes must be exactly {j M / ell}, and every enumerated coset
/// element must be an oracle hit.
OracleVerdict cross_validate(const SparseTensor& a, const SpectralResult& spectral,
                             const EigenvarietyReport& report, Modulus modulus = 0,
                             const OracleOptions& options = {}, std::size_t cap = 10000);

}  // namespace nnt
