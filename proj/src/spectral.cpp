#include "nnt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nnt/error.hpp"
#include "nnt/graph.hpp"

namespace nnt {

namespace {

double ipow(double base, std::size_t exponent) {
  double result = 1.0;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

Bracket ratio_bracket(std::span<const double> y, std::span<const double> x, std::size_t degree) {
  Bracket b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ratio = y[i] / ipow(x[i], degree);
    b.lower = std::min(b.lower, ratio);
    b.upper = std::max(b.upper, ratio);
  }
  return b;
}

// One step of the shifted map: x <- (B x^{m-1})^{1/(m-1)}, max-normalized.
void advance(std::vector<double>& x, const std::vector<double>& y, std::size_t degree) {
  double top = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = degree == 1 ? y[i] : std::pow(y[i], 1.0 / static_cast<double>(degree));
    top = std::max(top, x[i]);
  }
  for (double& v : x) v /= top;
}

}  // namespace

Bracket cw_bounds(const SparseTensor& a, std::span<const double> x) {
  if (x.size() != a.dim()) throw DimensionError("vector length does not match tensor dimension");
  for (double v : x) {
    if (!(v > 0.0)) throw InvalidArgument("Collatz-Wielandt bounds need a strictly positive vector");
  }
  const auto y = apply<double>(a, x);
  return ratio_bracket(y, x, a.order() - 1);
}

SpectralResult spectral_radius(const SparseTensor& a, const SpectralOptions& options) {
  if (!is_weakly_irreducible(a)) throw NotWeaklyIrreducible();
  const std::size_t degree = a.order() - 1;
  const SparseTensor shifted = add_identity(a, 1.0);

  SpectralResult result;
  result.tol = options.tol;
  std::vector<double> x(a.dim(), 1.0);
  Bracket best{0.0, std::numeric_limits<double>::infinity()};

  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    const auto y = apply<double>(shifted, std::span<const double>(x));
    const Bracket b = ratio_bracket(y, x, degree);
    if (options.record_history) result.history.emplace_back(b.lower, b.upper);
    best.lower = std::max(best.lower, b.lower - 1.0);
    best.upper = std::min(best.upper, b.upper - 1.0);

    const double lower = b.lower - 1.0;
    const double upper = b.upper - 1.0;
    if (upper - lower <= options.tol * std::max(1.0, upper)) {
      result.lower = lower;
      result.upper = upper;
      result.rho = 0.5 * (lower + upper);
      result.iterations = it;
      result.perron = x;
      const auto ax = apply<double>(a, std::span<const double>(x));
      for (std::size_t i = 0; i < x.size(); ++i) {
        result.residual =
            std::max(result.residual, std::abs(ax[i] - result.rho * ipow(x[i], degree)));
      }
      return result;
    }
    advance(x, y, degree);
  }
  throw ConvergenceError(best.lower, best.upper, options.max_iter);
}

Bracket bracket_after(const SparseTensor& a, std::size_t steps) {
  const std::size_t degree = a.order() - 1;
  const SparseTensor shifted = add_identity(a, 1.0);
  std::vector<double> x(a.dim(), 1.0);
  Bracket best{0.0, std::numeric_limits<double>::infinity()};
  for (std::size_t it = 0; it <= steps; ++it) {
    const auto y = apply<double>(shifted, std::span<const double>(x));
    const Bracket b = ratio_bracket(y, x, degree);
    best.lower = std::max(best.lower, b.lower - 1.0);
    best.upper = std::min(best.upper, b.upper - 1.0);
    advance(x, y, degree);
  }
  return best;
}

double eigen_residual(const SparseTensor& a, Complex lambda, std::span<const Complex> x) {
  if (x.size() != a.dim()) throw DimensionError("vector length does not match tensor dimension");
  double scale = 0.0;
  for (const auto& v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw InvalidArgument("eigen_residual needs a nonzero vector");

  const std::size_t degree = a.order() - 1;
  const auto y = apply<Complex>(a, x);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Complex power = 1.0;
    for (std::size_t p = 0; p < degree; ++p) power *= x[i];
    worst = std::max(worst, std::abs(y[i] - lambda * power));
  }
  return worst / ipow(scale, degree);
}

}  // namespace nnt
