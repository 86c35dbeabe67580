#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nnt/tensor.hpp"

namespace nnt {

struct SpectralOptions {
  double tol = 1e-12;
  std::size_t max_iter = 100000;
  /// Keep the shifted bracket of every iteration in SpectralResult::history.
  bool record_history = false;
};

struct SpectralResult {
  double rho = 0.0;
  /// Positive, max-normalized Perron vector.
  RealVector perron;
  /// Collatz-Wielandt bracket for A (shift removed): lower <= rho <= upper.
  double lower = 0.0;
  double upper = 0.0;
  std::size_t iterations = 0;
  /// max_i |(A p^{m-1})_i - rho p_i^{m-1}|.
  double residual = 0.0;
  double tol = 0.0;
  /// (lower, upper) on A + I per iteration, when requested.
  std::vector<std::pair<double, double>> history;
};

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
};

/// min/max over i of (A x^{m-1})_i / x_i^{m-1}. The lower end never exceeds
/// rho(A); the upper end bounds rho(A) from above for every x > 0.
Bracket cw_bounds(const SparseTensor& a, std::span<const double> x);

/// Spectral radius and Perron vector of a weakly irreducible tensor.
///
/// Runs x <- normalize((B x^{m-1})^{1/(m-1)}) with B = A + I from the all-ones
/// vector until the Collatz-Wielandt bracket of A satisfies
/// upper - lower <= tol * max(1, upper). Throws NotWeaklyIrreducible for
/// reducible input and ConvergenceError when max_iter is exhausted.
SpectralResult spectral_radius(const SparseTensor& a, const SpectralOptions& options = {});

/// Same iteration without the weak-irreducibility precondition, run for a
/// fixed number of steps. The bracket is valid for any nonnegative tensor but
/// need not close.
Bracket bracket_after(const SparseTensor& a, std::size_t steps);

/// max_i |(A x^{m-1})_i - lambda x_i^{m-1}| / max_i |x_i|^{m-1}.
double eigen_residual(const SparseTensor& a, Complex lambda, std::span<const Complex> x);

}  // namespace nnt
