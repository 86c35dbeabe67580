#include <doctest.h>

#include <numbers>
#include <set>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "nnt/error.hpp"
#include "nnt/oracle.hpp"
#include "nnt/phase_group.hpp"
#include "random_tensors.hpp"

using namespace nnt;
using namespace nnt::testing;

namespace {

using T = std::vector<std::uint64_t>;

std::vector<T> as_vectors(const std::vector<PhaseDiagonal>& ds) {
  std::vector<T> out;
  for (const auto& d : ds) out.push_back(d.t());
  return out;
}

bool close(Complex a, Complex b) { return std::abs(a - b) <= 1e-12; }

}  // namespace

TEST_CASE("constraint rows") {
  auto sys = constraint_system(two_cycle(), 0, 1, 2);
  // rows come out in lexicographic order
  CHECK(sys.rows() == 2);
  CHECK(std::vector<std::int64_t>(sys.row(0).begin(), sys.row(0).end()) == std::vector<std::int64_t>{-2, 2});
  CHECK(std::vector<std::int64_t>(sys.row(1).begin(), sys.row(1).end()) == std::vector<std::int64_t>{2, -2});
  CHECK(sys.is_homogeneous());

  // six permutations of (1, 2, 3) collapse to three distinct patterns
  sys = constraint_system(single_edge(), 0, 1, 3);
  CHECK(sys.rows() == 3);
  const auto sols = brute_solutions(sys);
  CHECK(sols == std::vector<T>{{0, 0, 0}, {0, 1, 2}, {0, 2, 1}});

  sys = constraint_system(identity_tensor(4, 3), 0, 1, 7);
  for (std::size_t r = 0; r < sys.rows(); ++r)
    for (auto c : sys.row(r)) CHECK(c == 0);

  CHECK_THROWS_AS(constraint_system(two_cycle(), 1, 3, 4), InvalidArgument);
  CHECK_NOTHROW(constraint_system(two_cycle(), 0, 3, 4));
}

TEST_CASE("solution counts") {
  CHECK(count_solutions(constraint_system(two_cycle(), 0, 1, 2)) == 2);
  CHECK(count_solutions(constraint_system(single_edge(), 0, 1, 3)) == 3);
  CongruenceSystem empty{4, 5, {}, {}};
  CHECK(count_solutions(empty) == 125);
  CHECK_THROWS_AS(count_solutions(constraint_system(single_edge(), 1, 3, 3)), InvalidArgument);
}

TEST_CASE("solution counts agree with enumeration") {
  Rng rng(101);
  std::size_t cases = 0;
  for (int rep = 0; rep < 600; ++rep) {
    const std::size_t m = 2 + rep % 4;
    const std::size_t n = 1 + rep % 5;
    const Modulus M = 1 + rep % 12;
    std::uint64_t size = 1;
    for (std::size_t k = 1; k < n; ++k) size *= M;
    if (size > 1000000) continue;
    const auto a = random_tensor(rng, m, n, 1 + rep % (2 * n + 1));
    const auto sys = constraint_system(a, 0, 1, M);
    const auto expected = brute_solutions(sys);
    const auto lattice = homogeneous_solutions(sys);
    CHECK(lattice.count == expected.size());
    if (lattice.count <= 5000) CHECK(as_vectors(enumerate_lattice(lattice, 5000)) == expected);
    ++cases;
  }
  CHECK(cases > 400);
}

TEST_CASE("solvability") {
  // Row form: 2 t_i1 - t_i2 - t_i3 = -1 (mod 3), i.e. t1 + t2 + t3 = 1.
  auto sys = constraint_system(single_edge(), 1, 3, 3);
  CHECK(sys.rhs == std::vector<std::uint64_t>(3, 2));
  auto w = solvable(sys);
  REQUIRE(w);
  CHECK(sys.satisfied_by(w->t()));
  CHECK((w->t()[0] + w->t()[1] + w->t()[2]) % 3 == 1);
  const T t002{0, 0, 2};
  CHECK_FALSE(sys.satisfied_by(t002));
  CHECK(constraint_system(single_edge(), 2, 3, 3).satisfied_by(t002));

  CHECK_FALSE(solvable(constraint_system(two_cycle(), 1, 2, 2)));
  w = solvable(constraint_system(two_cycle(), 1, 2, 4));
  REQUIRE(w);
  CHECK(w->t() == T{0, 1});

  w = solvable(constraint_system(single_edge(), 0, 1, 3));
  REQUIRE(w);
  CHECK(w->t() == T{0, 0, 0});
}

TEST_CASE("solvability agrees with enumeration") {
  Rng rng(103);
  for (int rep = 0; rep < 600; ++rep) {
    const std::size_t m = 2 + rep % 4;
    const std::size_t n = 1 + rep % 4;
    const Modulus M = 2 + rep % 11;
    const auto a = random_tensor(rng, m, n, 1 + rep % (2 * n + 1));
    for (std::uint64_t ell = 1; ell <= M; ++ell) {
      if (M % ell) continue;
      const auto sys = constraint_system(a, 1, ell, M);
      const auto w = solvable(sys);
      CHECK(w.has_value() == !brute_solutions(sys).empty());
      if (w) CHECK(sys.satisfied_by(w->t()));
    }
  }
}

TEST_CASE("stabilizing index of the named tensors") {
  auto r = stabilizing_index(two_cycle());
  CHECK(r.policy == ModulusPolicy::kIrreducible);
  CHECK(r.modulus_used == 2);
  CHECK(r.exact);
  CHECK(r.s == 2);
  CHECK(r.ell == 2);
  CHECK(as_vectors(r.generators) == std::vector<T>{{0, 1}});

  r = stabilizing_index(single_edge());
  CHECK(r.policy == ModulusPolicy::kSymmetric);
  CHECK(r.modulus_used == 3);
  CHECK(r.s == 3);
  CHECK(r.ell == 3);
  CHECK(as_vectors(r.generators) == std::vector<T>{{0, 1, 2}});
  REQUIRE(r.cosets.size() == 3);
  CHECK(r.cosets[1]->t() == T{0, 0, 1});
  CHECK(r.cosets[2]->t() == T{0, 0, 2});

  CHECK_THROWS_AS(stabilizing_index(four_classes()), NotWeaklyIrreducible);
}

TEST_CASE("symmetric irreducible tensors have s = 1") {
  Rng rng(107);
  for (int rep = 0; rep < 100; ++rep) {
    const auto a = random_cs_irreducible(rng, 3 + rep % 2, 2 + rep % 4);
    const auto r = stabilizing_index(a);
    CHECK(r.policy == ModulusPolicy::kSymmetricIrreducible);
    CHECK(r.s == 1);
    // the short cut agrees with the counting route
    CHECK(count_solutions(constraint_system(a, 0, 1, a.order())) == 1);
  }
}

TEST_CASE("group laws and coset sizes") {
  Rng rng(109);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t m = 3 + rep % 2, n = 2 + rep % 4;
    const auto a = rep % 3 == 0   ? random_cs_weakly_irreducible(rng, m, n)
                   : rep % 3 == 1 ? random_irreducible(rng, m, n)
                                  : random_weakly_irreducible(rng, m, n);
    const auto r = stabilizing_index(a);
    const auto group = homogeneous_solutions(constraint_system(a, 0, 1, r.modulus_used));
    const auto elements = enumerate_lattice(group, 100000);
    CHECK(elements.size() == r.s);
    const std::set<PhaseDiagonal> members(elements.begin(), elements.end());
    CHECK(members.contains(PhaseDiagonal::identity(r.modulus_used, n)));
    for (const auto& x : elements) {
      T neg(n);
      for (std::size_t k = 0; k < n; ++k) neg[k] = (r.modulus_used - x.t()[k]) % r.modulus_used;
      CHECK(members.contains(PhaseDiagonal(r.modulus_used, neg)));
      for (const auto& y : elements) {
        T sum(n);
        for (std::size_t k = 0; k < n; ++k) sum[k] = (x.t()[k] + y.t()[k]) % r.modulus_used;
        CHECK(members.contains(PhaseDiagonal(r.modulus_used, sum)));
      }
    }
    // generators regenerate the group
    CHECK(canonical_generators(elements) == r.generators);
    for (std::uint64_t j = 0; j < r.ell; ++j) {
      REQUIRE(r.cosets[j]);
      const auto coset = coset_elements(a, r, j, 100000);
      CHECK(coset.size() == r.s);
      const auto sys = constraint_system(a, static_cast<std::int64_t>(j), r.ell, r.coset_modulus);
      for (const auto& d : coset) CHECK(sys.satisfied_by(d.t()));
      CHECK(coset.front() == *r.cosets[j]);
    }
  }
}

TEST_CASE("shift and support invariance of s and the generators") {
  Rng rng(113);
  for (int rep = 0; rep < 150; ++rep) {
    const auto a = random_weakly_irreducible(rng, 3 + rep % 2, 2 + rep % 4);
    const auto r = stabilizing_index(a);
    const auto shifted = stabilizing_index(add_identity(a));
    const auto rescaled_r = stabilizing_index(rescaled(a, rng));
    CHECK(shifted.s == r.s);
    CHECK(shifted.generators == r.generators);
    CHECK(rescaled_r.s == r.s);
    CHECK(rescaled_r.ell == r.ell);
    CHECK(rescaled_r.generators == r.generators);
    CHECK(rescaled_r.cosets == r.cosets);
    // a full diagonal forces ell = 1
    CHECK(shifted.ell == 1);
  }
}

TEST_CASE("torus certificate matches enumeration at growing moduli") {
  Rng rng(127);
  for (int rep = 0; rep < 200; ++rep) {
    const auto a = random_weakly_irreducible(rng, 3 + rep % 3, 2 + rep % 3);
    const auto torus = stabilizer_torus(a);
    REQUIRE(torus);
    const auto e = static_cast<Modulus>(torus->exponent);
    CHECK(count_solutions(constraint_system(a, 0, 1, e)) == torus->order);
    CHECK(count_solutions(constraint_system(a, 0, 1, 2 * e)) == torus->order);
    CHECK(count_solutions(constraint_system(a, 0, 1, 3 * e)) == torus->order);
    CHECK(stabilizing_index(a).s == torus->order);
  }
}

TEST_CASE("order bounds") {
  Rng rng(131);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t m = 3 + rep % 2, n = 2 + rep % 4;
    const auto a = random_irreducible(rng, m, n);
    const auto r = stabilizing_index(a);
    const auto rr = solid_weak_components(a);
    Integer power = 1;
    for (std::size_t k = 0; k < rr; ++k) power *= (m - 1);
    for (const auto& d : coset_elements(a, r, 0, 100000)) {
      for (auto t : d.t()) CHECK((power * t) % d.modulus() == 0);
    }
  }
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t m = 3 + rep % 2, n = 2 + rep % 4;
    const auto a = random_cs_weakly_irreducible(rng, m, n);
    const auto r = stabilizing_index(a);
    for (const auto& d : coset_elements(a, r, 0, 100000)) CHECK(d.has_order_dividing(m));
    CHECK(m % r.ell == 0);
  }
}

TEST_CASE("weakly irreducible fallback is certified") {
  Rng rng(137);
  std::size_t fallback = 0;
  for (int rep = 0; rep < 400 && fallback < 60; ++rep) {
    const auto a = random_weakly_irreducible(rng, 3 + rep % 2, 3 + rep % 3);
    const auto p = structure_profile(a);
    if (p.irreducible || p.combinatorially_symmetric) continue;
    ++fallback;
    const auto r = stabilizing_index(a, p);
    CHECK(r.policy == ModulusPolicy::kWeaklyIrreducible);
    CHECK(r.exact);
    CHECK(r.modulus_used % r.group_exponent == 0);
    const auto spectral = spectral_radius(a);
    const auto v = cross_validate(a, spectral, r);
    if (v.status != VerdictStatus::kSkipped) CHECK(v.status == VerdictStatus::kMatch);
  }
  CHECK(fallback > 10);
}

TEST_CASE("eigenvector synthesis") {
  const auto s2 = spectral_radius(two_cycle());
  const auto r2 = stabilizing_index(two_cycle());
  auto set = eigenvectors(two_cycle(), s2, r2, 0);
  REQUIRE(set.vectors.size() == 2);
  CHECK(close(set.vectors[0][1], 1.0));
  CHECK(close(set.vectors[1][1], -1.0));
  set = eigenvectors(two_cycle(), s2, r2, 1);
  CHECK(close(set.lambda, -1.0));
  CHECK(set.vectors.size() == 2);

  const auto s3 = spectral_radius(single_edge());
  const auto r3 = stabilizing_index(single_edge());
  const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
  set = eigenvectors(single_edge(), s3, r3, 0);
  REQUIRE(set.vectors.size() == 3);
  CHECK(set.rejected == 0);
  CHECK(close(set.vectors[0][1], 1.0));
  CHECK(close(set.vectors[1][1], w));
  CHECK(close(set.vectors[1][2], w * w));
  CHECK(close(set.vectors[2][1], w * w));
  CHECK(close(set.vectors[2][2], w));
  set = eigenvectors(single_edge(), s3, r3, 1);
  CHECK(set.vectors.size() == 3);
  CHECK(close(set.lambda, w));
  for (const auto& x : set.vectors) CHECK(eigen_residual(single_edge(), w, x) <= 1e-12);

  CHECK_THROWS_AS(eigenvectors(single_edge(), s3, r3, 3), InvalidArgument);

  EigenvectorOptions tight;
  tight.cap = 2;
  set = eigenvectors(single_edge(), s3, r3, 0, tight);
  CHECK(set.truncated);
  CHECK(set.vectors.empty());
  CHECK(set.generators == r3.generators);
}

TEST_CASE("phase diagonal invariants") {
  CHECK_THROWS_AS(PhaseDiagonal(3, T{1, 0}), InvalidArgument);
  CHECK_THROWS_AS(PhaseDiagonal(3, T{0, 3}), InvalidArgument);
  const PhaseDiagonal d(4, T{0, 1, 2});
  CHECK(d.lifted(8).t() == T{0, 2, 4});
  CHECK(d.has_order_dividing(4));
  CHECK_FALSE(d.has_order_dividing(2));
}
