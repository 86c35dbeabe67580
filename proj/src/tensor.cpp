#include "nnt/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "nnt/error.hpp"

namespace nnt {

namespace {

bool tuple_less(std::span<const Index> a, std::span<const Index> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Binary search over a flat, sorted tuple array.
std::ptrdiff_t find_tuple(const std::vector<Index>& flat, std::size_t order,
                          std::span<const Index> tuple) {
  if (order == 0 || tuple.size() != order) return -1;
  std::size_t lo = 0;
  std::size_t hi = flat.size() / order;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    std::span<const Index> probe{flat.data() + mid * order, order};
    if (tuple_less(probe, tuple)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < flat.size() / order &&
      std::equal(tuple.begin(), tuple.end(), flat.begin() + static_cast<std::ptrdiff_t>(lo * order))) {
    return static_cast<std::ptrdiff_t>(lo);
  }
  return -1;
}

std::uint64_t factorial(std::size_t k) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

// Number of distinct permutations of a sorted multiset.
std::uint64_t distinct_permutations(std::span<const Index> sorted) {
  std::uint64_t count = factorial(sorted.size());
  std::size_t run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      count /= factorial(run);
      run = 1;
    }
  }
  return count;
}

struct OrbitStats {
  std::uint64_t members = 0;
  double first_value = 0.0;
  bool values_equal = true;
};

std::map<std::vector<Index>, OrbitStats> permutation_orbits(const SparseTensor& a) {
  std::map<std::vector<Index>, OrbitStats> orbits;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    std::vector<Index> key(idx.begin(), idx.end());
    std::sort(key.begin(), key.end());
    auto& stats = orbits[key];
    if (stats.members == 0) {
      stats.first_value = a.value(k);
    } else if (a.value(k) != stats.first_value) {
      stats.values_equal = false;
    }
    ++stats.members;
  }
  return orbits;
}

}  // namespace

SparseTensor::SparseTensor(std::size_t order, std::size_t dim) : order_(order), dim_(dim) {
  if (order < 2) throw InvalidArgument("tensor order must be at least 2");
  if (dim < 1) throw InvalidArgument("tensor dimension must be at least 1");
}

SparseTensor SparseTensor::from_entries(std::size_t order, std::size_t dim,
                                        std::vector<Entry> entries) {
  SparseTensor t(order, dim);
  std::erase_if(entries, [](const Entry& e) { return e.value == 0.0; });
  for (const auto& e : entries) {
    if (e.index.size() != order) {
      throw InvalidArgument("entry has " + std::to_string(e.index.size()) + " indices, expected " +
                            std::to_string(order));
    }
    for (Index i : e.index) {
      if (i >= dim) throw InvalidArgument("index " + std::to_string(i) + " out of range");
    }
    if (!std::isfinite(e.value) || e.value < 0.0) {
      throw InvalidArgument("tensor values must be finite and nonnegative");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return x.index < y.index; });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].index == entries[k - 1].index) throw InvalidArgument("duplicate tuple");
  }
  t.indices_.reserve(entries.size() * order);
  t.values_.reserve(entries.size());
  for (const auto& e : entries) {
    t.indices_.insert(t.indices_.end(), e.index.begin(), e.index.end());
    t.values_.push_back(e.value);
  }
  return t;
}

void SparseTensor::check_values() const {
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("stored tensor values must be finite and positive");
    }
  }
}

double SparseTensor::at(std::span<const Index> tuple) const {
  const auto k = find_tuple(indices_, order_, tuple);
  return k < 0 ? 0.0 : values_[static_cast<std::size_t>(k)];
}

bool SparseTensor::contains(std::span<const Index> tuple) const {
  return find_tuple(indices_, order_, tuple) >= 0;
}

ComplexTensor to_complex(const SparseTensor& a) {
  ComplexTensor c;
  c.order = a.order();
  c.dim = a.dim();
  c.indices.reserve(a.nnz() * a.order());
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    c.indices.insert(c.indices.end(), idx.begin(), idx.end());
    c.values.emplace_back(a.value(k), 0.0);
  }
  return c;
}

Support::Support(const SparseTensor& a) : order_(a.order()) {
  flat_.reserve(a.nnz() * a.order());
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    flat_.insert(flat_.end(), idx.begin(), idx.end());
  }
}

bool Support::contains(std::span<const Index> tuple) const {
  return find_tuple(flat_, order_, tuple) >= 0;
}

template <class T>
std::vector<T> apply(const SparseTensor& a, std::span<const T> x) {
  if (x.size() != a.dim()) {
    throw DimensionError("vector length " + std::to_string(x.size()) +
                         " does not match tensor dimension " + std::to_string(a.dim()));
  }
  std::vector<T> y(a.dim(), T{});
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    T term = T(a.value(k));
    for (std::size_t p = 1; p < idx.size(); ++p) term *= x[idx[p]];
    y[idx[0]] += term;
  }
  return y;
}

template std::vector<double> apply<double>(const SparseTensor&, std::span<const double>);
template std::vector<Complex> apply<Complex>(const SparseTensor&, std::span<const Complex>);

SparseTensor identity_tensor(std::size_t order, std::size_t dim) {
  return add_identity(SparseTensor(order, dim), 1.0);
}

SparseTensor add_identity(const SparseTensor& a, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("identity shift must be positive");
  std::vector<Entry> entries;
  entries.reserve(a.nnz() + a.dim());
  std::vector<bool> has_diagonal(a.dim(), false);
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    Entry e{{idx.begin(), idx.end()}, a.value(k)};
    if (std::all_of(idx.begin(), idx.end(), [&](Index i) { return i == idx[0]; })) {
      e.value += c;
      has_diagonal[idx[0]] = true;
    }
    entries.push_back(std::move(e));
  }
  for (Index i = 0; i < a.dim(); ++i) {
    if (!has_diagonal[i]) entries.push_back({std::vector<Index>(a.order(), i), c});
  }
  return SparseTensor::from_entries(a.order(), a.dim(), std::move(entries));
}

ComplexTensor diagonal_product(std::span<const Complex> p, const ComplexTensor& a,
                               std::span<const Complex> q) {
  if (p.size() != a.dim || q.size() != a.dim) {
    throw DimensionError("diagonal length does not match tensor dimension");
  }
  ComplexTensor out;
  out.order = a.order;
  out.dim = a.dim;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    Complex v = p[idx[0]] * a.values[k];
    for (std::size_t r = 1; r < idx.size(); ++r) v *= q[idx[r]];
    if (v == Complex{}) continue;
    out.indices.insert(out.indices.end(), idx.begin(), idx.end());
    out.values.push_back(v);
  }
  return out;
}

Support support(const SparseTensor& a) { return Support(a); }

bool is_symmetric(const SparseTensor& a) {
  for (const auto& [key, stats] : permutation_orbits(a)) {
    if (!stats.values_equal || stats.members != distinct_permutations(key)) return false;
  }
  return true;
}

bool is_combinatorially_symmetric(const SparseTensor& a) {
  for (const auto& [key, stats] : permutation_orbits(a)) {
    if (stats.members != distinct_permutations(key)) return false;
  }
  return true;
}

DenseMatrix majorization(const SparseTensor& a) {
  DenseMatrix m{a.dim(), std::vector<double>(a.dim() * a.dim(), 0.0)};
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    if (std::all_of(idx.begin() + 1, idx.end(), [&](Index i) { return i == idx[1]; })) {
      m(idx[0], idx[1]) = a.value(k);
    }
  }
  return m;
}

SparseTensor induced(const SparseTensor& a) {
  std::vector<Entry> entries;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    if (std::all_of(idx.begin() + 1, idx.end(), [&](Index i) { return i == idx[1]; })) {
      entries.push_back({{idx.begin(), idx.end()}, a.value(k)});
    }
  }
  return SparseTensor::from_entries(a.order(), a.dim(), std::move(entries));
}

Subtensor subtensor(const SparseTensor& a, std::span<const Index> alpha) {
  if (alpha.empty()) throw InvalidArgument("subtensor index set must be nonempty");
  std::vector<Index> parent(alpha.begin(), alpha.end());
  std::sort(parent.begin(), parent.end());
  if (std::adjacent_find(parent.begin(), parent.end()) != parent.end()) {
    throw InvalidArgument("subtensor index set has repeated indices");
  }
  if (parent.back() >= a.dim()) throw InvalidArgument("subtensor index out of range");

  constexpr Index absent = static_cast<Index>(-1);
  std::vector<Index> local(a.dim(), absent);
  for (std::size_t k = 0; k < parent.size(); ++k) local[parent[k]] = static_cast<Index>(k);

  std::vector<Entry> entries;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    Entry e;
    e.index.reserve(idx.size());
    bool inside = true;
    for (Index i : idx) {
      if (local[i] == absent) {
        inside = false;
        break;
      }
      e.index.push_back(local[i]);
    }
    if (!inside) continue;
    e.value = a.value(k);
    entries.push_back(std::move(e));
  }
  return {SparseTensor::from_entries(a.order(), parent.size(), std::move(entries)),
          std::move(parent)};
}

}  // namespace nnt
