#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "nnt/error.hpp"
#include "nnt/tensor.hpp"
#include "random_tensors.hpp"

using namespace nnt;
using namespace nnt::testing;

TEST_CASE("loader reads the two-cycle tensor") {
  const auto a = parse_tensor("3 2 2\n1 2 2 1.0\n2 1 1 1.0\n");
  CHECK(a.order() == 3);
  CHECK(a.dim() == 2);
  CHECK(a.nnz() == 2);
  const Index t1[] = {0, 1, 1};
  const Index t2[] = {1, 0, 0};
  CHECK(a.at(t1) == 1.0);
  CHECK(a.at(t2) == 1.0);
}

TEST_CASE("loader accepts the smallest legal input") {
  const auto a = parse_tensor("2 1 1\n1 1 5.0\n");
  CHECK(a.nnz() == 1);
  CHECK(a.value(0) == 5.0);
}

TEST_CASE("loader reads the four-entry reducible example with comments") {
  const auto a = parse_tensor("# reducible\n3 4 4\n1 1 1 1\n1 2 4 1 # inline\n\n2 3 4 1\n3 4 1 1\n");
  CHECK(a == four_classes());
}

TEST_CASE("loader diagnostics carry line numbers") {
  auto line_of = [](const char* text) {
    try {
      parse_tensor(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("3 2\n") == 1);                            // malformed header
  CHECK(line_of("3 2 1\n1 2 3 1.0\n") == 2);               // index out of range
  CHECK(line_of("3 2 1\n1 2 0 1.0\n") == 2);               // index zero
  CHECK(line_of("3 2 1\n# c\n1 2 2 -1.0\n") == 3);         // negative value
  CHECK(line_of("3 2 2\n1 2 2 1\n1 2 2 2\n") == 3);        // duplicate tuple
  CHECK(line_of("3 2 1\n1 2 2 1e-20\n") == 2);             // below the storage floor
  CHECK(line_of("3 2 2\n1 2 2 1\n") == 2);                 // fewer entries than declared
  CHECK(line_of("3 2 1\n1 2 2 1\n2 1 1 1\n") == 3);        // more entries than declared
  CHECK(line_of("3 2 1\n1 2 2 x\n") == 2);                 // malformed value
  CHECK(line_of("3 2 1\n1 2 1\n") == 2);                   // wrong arity

  try {
    parse_tensor("3 2 2\n1 2 2 1\n1 2 2 2\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("from_entries enforces the invariants") {
  CHECK_THROWS_AS(SparseTensor::from_entries(3, 2, {{{0, 1}, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(SparseTensor::from_entries(3, 2, {{{0, 1, 2}, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(SparseTensor::from_entries(3, 2, {{{0, 1, 1}, -1.0}}), InvalidArgument);
  CHECK_THROWS_AS(SparseTensor::from_entries(3, 2, {{{0, 1, 1}, 1.0}, {{0, 1, 1}, 2.0}}),
                  InvalidArgument);
  const auto a = SparseTensor::from_entries(3, 2, {{{0, 1, 1}, 0.0}, {{1, 0, 0}, 2.0}});
  CHECK(a.nnz() == 1);
}

TEST_CASE("apply expands the defining sum") {
  const auto a = two_cycle();
  const auto ones = nnt::apply(a, DenseVector{1.0, 1.0});
  CHECK(ones[0] == Complex(1.0));
  CHECK(ones[1] == Complex(1.0));
  const auto y = nnt::apply(a, DenseVector{1.0, Complex(0.0, 1.0)});
  CHECK(y[0] == Complex(-1.0));
  CHECK(y[1] == Complex(1.0));
  const auto z = nnt::apply(a, DenseVector{0.0, 0.0});
  CHECK(z[0] == Complex(0.0));
  CHECK_THROWS_AS(nnt::apply(a, DenseVector{1.0}), DimensionError);
}

TEST_CASE("apply is homogeneous and shifts by the identity") {
  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t m = 3 + rep % 2, n = 2 + rep % 4;
    const auto a = random_tensor(rng, m, n, 3 * n);
    DenseVector x(n);
    for (auto& v : x) v = Complex(random_value(rng) - 2.0, random_value(rng) - 2.0);
    const Complex c(0.7, -1.3);
    DenseVector cx = x;
    for (auto& v : cx) v *= c;
    const auto y = nnt::apply(a, x);
    const auto cy = nnt::apply(a, cx);
    const auto shifted = nnt::apply(add_identity(a, 2.5), x);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(cy[i] - std::pow(c, static_cast<double>(m - 1)) * y[i]) <= 1e-9 * (1 + std::abs(cy[i])));
      CHECK(std::abs(shifted[i] - (y[i] + 2.5 * std::pow(x[i], static_cast<double>(m - 1)))) <=
            1e-9 * (1 + std::abs(shifted[i])));
    }
  }
}

TEST_CASE("add_identity") {
  const auto b = add_identity(two_cycle(), 1.0);
  CHECK(b.nnz() == 4);
  const Index d1[] = {0, 0, 0}, d2[] = {1, 1, 1};
  CHECK(b.at(d1) == 1.0);
  CHECK(b.at(d2) == 1.0);
  CHECK(add_identity(SparseTensor(3, 3)) == identity_tensor(3, 3));

  const auto c = add_identity(four_classes(), 2.0);
  CHECK(c.at(d1) == 3.0);
  const Index d4[] = {3, 3, 3}, off[] = {0, 1, 3};
  CHECK(c.at(d4) == 2.0);
  CHECK(c.at(off) == 1.0);
  CHECK_THROWS_AS(add_identity(two_cycle(), 0.0), InvalidArgument);
}

TEST_CASE("diagonal_product") {
  const auto a = to_complex(two_cycle());
  const DenseVector id{1.0, 1.0};
  const auto same = diagonal_product(id, a, id);
  CHECK(same.indices == a.indices);
  CHECK(same.values == a.values);

  const auto single = to_complex(SparseTensor::from_entries(3, 2, {{{0, 1, 1}, 1.0}}));
  const auto p = diagonal_product(DenseVector{2.0, 1.0}, single, DenseVector{1.0, 3.0});
  CHECK(p.values.at(0) == Complex(18.0));

  // D^{-(m-1)} A D with D = diag(1, -1) leaves the two-cycle tensor unchanged.
  const DenseVector d{1.0, -1.0};
  DenseVector dinv(2);
  for (int i = 0; i < 2; ++i) dinv[i] = 1.0 / (d[i] * d[i]);
  const auto q = diagonal_product(dinv, a, d);
  CHECK(q.values == a.values);

  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const auto r = to_complex(random_tensor(rng, 3, 4, 10));
    DenseVector u(4), v(4);
    for (auto& x : u) x = Complex(random_value(rng), -random_value(rng));
    for (auto& x : v) x = Complex(-random_value(rng), random_value(rng));
    CHECK(diagonal_product(u, r, v).indices == r.indices);
  }
  CHECK_THROWS_AS(diagonal_product(DenseVector{1.0}, a, id), DimensionError);
}

TEST_CASE("symmetry predicates") {
  const auto edge = single_edge();
  CHECK(is_symmetric(edge));
  CHECK(is_combinatorially_symmetric(edge));
  CHECK_FALSE(is_symmetric(two_cycle()));
  CHECK_FALSE(is_combinatorially_symmetric(two_cycle()));
  CHECK(is_symmetric(identity_tensor(4, 3)));
  CHECK(is_combinatorially_symmetric(identity_tensor(4, 3)));

  // Same support, different values: only the combinatorial test passes.
  auto skew = edge.map_values([](double, std::size_t k) { return 1.0 + static_cast<double>(k); });
  CHECK_FALSE(is_symmetric(skew));
  CHECK(is_combinatorially_symmetric(skew));
}

TEST_CASE("majorization and induced tensor") {
  const auto m = majorization(two_cycle());
  CHECK(m(0, 0) == 0.0);
  CHECK(m(0, 1) == 1.0);
  CHECK(m(1, 0) == 1.0);
  CHECK(m(1, 1) == 0.0);
  CHECK(induced(two_cycle()) == two_cycle());

  const auto e = majorization(single_edge());
  CHECK(std::all_of(e.data.begin(), e.data.end(), [](double v) { return v == 0.0; }));
  CHECK(induced(single_edge()).is_zero());

  const auto im = majorization(identity_tensor(3, 3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(im(i, j) == (i == j ? 1.0 : 0.0));

  Rng rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = random_tensor(rng, 3 + rep % 2, 3, 12);
    const auto ia = induced(a);
    CHECK(majorization(ia) == majorization(a));
    for (std::size_t k = 0; k < ia.nnz(); ++k) CHECK(ia.value(k) <= a.at(ia.index(k)));
  }
}

TEST_CASE("principal subtensors") {
  const Index four[] = {3};
  const auto s = subtensor(four_classes(), four);
  CHECK(s.tensor.dim() == 1);
  CHECK(s.tensor.is_zero());
  CHECK(s.parent == std::vector<Index>{3});

  const Index all[] = {0, 1};
  CHECK(subtensor(two_cycle(), all).tensor == two_cycle());

  const Index edge[] = {3, 4, 5};
  const auto t = subtensor(two_edges(), edge);
  CHECK(t.tensor == single_edge());
  CHECK(t.parent == std::vector<Index>{3, 4, 5});

  CHECK_THROWS_AS(subtensor(two_cycle(), std::span<const Index>{}), InvalidArgument);
}

TEST_CASE("support object") {
  const auto s = support(single_edge());
  CHECK(s.size() == 6);
  const Index t[] = {2, 0, 1}, u[] = {0, 0, 1};
  CHECK(s.contains(t));
  CHECK_FALSE(s.contains(u));
  CHECK(support(scaled(single_edge(), 3.0)) == s);
}

TEST_CASE("store and load round-trip canonically") {
  Rng rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    const auto a = random_tensor(rng, 2 + rep % 3, 4, 9);
    const auto text = format_tensor(a);
    const auto b = parse_tensor(text);
    CHECK(b == a);
    CHECK(format_tensor(b) == text);
  }
  // Unsorted input comes back sorted.
  CHECK(format_tensor(parse_tensor("3 2 2\n2 1 1 1\n1 2 2 0.5\n")) == "3 2 2\n1 2 2 0.5\n2 1 1 1\n");
}
