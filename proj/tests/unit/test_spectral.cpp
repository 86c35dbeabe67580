#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "nnt/decomposition.hpp"
#include "nnt/error.hpp"
#include "nnt/spectral.hpp"
#include "random_tensors.hpp"

using namespace nnt;
using namespace nnt::testing;

namespace {

void check_certificate(const SpectralResult& s) {
  CHECK(s.lower <= s.rho);
  CHECK(s.rho <= s.upper);
  CHECK(s.upper - s.lower <= s.tol * std::max(1.0, s.upper));
  CHECK(s.residual <= 10 * s.tol * std::max(1.0, s.rho));
  CHECK(*std::max_element(s.perron.begin(), s.perron.end()) == 1.0);
  for (double v : s.perron) CHECK(v > 0.0);
}

}  // namespace

TEST_CASE("Collatz-Wielandt bounds") {
  const RealVector ones2{1.0, 1.0}, ones3{1.0, 1.0, 1.0};
  auto b = cw_bounds(two_cycle(), ones2);
  CHECK(b.lower == 1.0);
  CHECK(b.upper == 1.0);
  b = cw_bounds(single_edge(), ones3);
  CHECK(b.lower == doctest::Approx(1.0));
  CHECK(b.upper == doctest::Approx(1.0));
  b = cw_bounds(identity_tensor(4, 3), RealVector{0.3, 2.0, 7.0});
  CHECK(b.lower == doctest::Approx(1.0));
  CHECK(b.upper == doctest::Approx(1.0));
  CHECK_THROWS_AS(cw_bounds(two_cycle(), RealVector{1.0, 0.0}), InvalidArgument);
}

TEST_CASE("spectral radius of the named tensors") {
  // Exact eigen solve of lambda x1^2 = x2^2, lambda x2^2 = x1^2 gives rho = 1.
  auto s = spectral_radius(two_cycle());
  CHECK(std::abs(s.rho - 1.0) <= 1e-12);
  CHECK(s.perron == RealVector{1.0, 1.0});
  check_certificate(s);

  // x = (c, c, c) solves A x^2 = x^[2] for the single edge.
  s = spectral_radius(single_edge());
  CHECK(std::abs(s.rho - 1.0) <= 1e-12);
  for (double v : s.perron) CHECK(v == doctest::Approx(1.0));

  s = spectral_radius(identity_tensor(3, 1));
  CHECK(s.rho == 1.0);
  CHECK(s.iterations == 1);
}

TEST_CASE("a non-trivial two-variable solve") {
  // a_112 = 2, a_211 = 1 (order 3). Eigenvector (1, y): 2y = lambda, 1 = lambda y^2,
  // so lambda^3 = 4.
  const auto a = SparseTensor::from_entries(3, 2, {{{0, 0, 1}, 2.0}, {{1, 0, 0}, 1.0}});
  const auto s = spectral_radius(a);
  CHECK(std::abs(s.rho - std::cbrt(4.0)) <= 1e-11);
  check_certificate(s);
}

TEST_CASE("reducible input is refused") {
  CHECK_THROWS_AS(spectral_radius(four_classes()), NotWeaklyIrreducible);
  CHECK_THROWS_AS(spectral_radius(SparseTensor(3, 2)), NotWeaklyIrreducible);
}

TEST_CASE("iteration limit reports the best bracket") {
  Rng rng(8);
  const auto a = random_weakly_irreducible(rng, 4, 6);
  SpectralOptions o;
  o.max_iter = 1;
  o.tol = 1e-15;
  try {
    spectral_radius(a, o);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.lower() <= e.upper());
    CHECK(e.iterations() == 1);
  }
}

TEST_CASE("brackets are monotone and certificates hold") {
  Rng rng(61);
  for (int rep = 0; rep < 300; ++rep) {
    const auto a = random_weakly_irreducible(rng, 3 + rep % 2, 2 + rep % 5);
    SpectralOptions o;
    o.record_history = true;
    const auto s = spectral_radius(a, o);
    check_certificate(s);
    for (std::size_t k = 1; k < s.history.size(); ++k) {
      CHECK(s.history[k].first >= s.history[k - 1].first - 1e-14);
      CHECK(s.history[k].second <= s.history[k - 1].second + 1e-14);
    }
    CHECK(eigen_residual(a, s.rho, DenseVector(s.perron.begin(), s.perron.end())) <= 10 * s.tol * std::max(1.0, s.rho));
  }
}

TEST_CASE("scale invariance") {
  Rng rng(71);
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = random_weakly_irreducible(rng, 3, 4);
    const double rho = spectral_radius(a).rho;
    for (double c : {0.5, 2.0, 10.0}) {
      CHECK(std::abs(spectral_radius(scaled(a, c)).rho - c * rho) <= 10 * 1e-12 * std::max(1.0, c * rho));
    }
  }
}

TEST_CASE("comparison bound") {
  Rng rng(81);
  for (int rep = 0; rep < 100; ++rep) {
    const auto a = random_weakly_irreducible(rng, 3 + rep % 2, 4);
    const auto b = a.map_values([&](double v, std::size_t) { return v * std::uniform_real_distribution<double>(0.1, 1.0)(rng); });
    CHECK(spectral_radius(b).rho <= spectral_radius(a).rho + 1e-12 * spectral_radius(a).rho);
  }
}

TEST_CASE("class radii never exceed the whole") {
  Rng rng(91);
  for (int rep = 0; rep < 100; ++rep) {
    const auto a = random_weakly_irreducible(rng, 3, 5);
    const double rho = spectral_radius(a).rho;
    for (const auto& c : class_spectral_radii(decompose(a))) CHECK(c.rho <= rho + 1e-12);
  }
}

TEST_CASE("eigen residual") {
  CHECK(eigen_residual(two_cycle(), 1.0, DenseVector{1.0, -1.0}) == 0.0);
  CHECK(eigen_residual(two_cycle(), -1.0, DenseVector{1.0, Complex(0, 1)}) == 0.0);
  CHECK(eigen_residual(two_cycle(), 2.0, DenseVector{1.0, 1.0}) == doctest::Approx(1.0));
  // scale invariant
  CHECK(eigen_residual(two_cycle(), 2.0, DenseVector{3.0, 3.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(eigen_residual(two_cycle(), 1.0, DenseVector{0.0, 0.0}), InvalidArgument);
}

TEST_CASE("bracket for reducible tensors") {
  const auto b = bracket_after(four_classes(), 200);
  CHECK(b.lower <= 1.0 + 1e-12);
  CHECK(b.upper >= 1.0 - 1e-12);
}
