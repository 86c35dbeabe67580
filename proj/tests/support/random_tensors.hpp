#pragma once

// Seeded random tensor families used by the property tests and the
// acceptance suite. Every generator rejects until its structural promise
// holds, so callers can rely on the family membership.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "nnt/graph.hpp"
#include "nnt/tensor.hpp"

namespace nnt::testing {

using Rng = std::mt19937_64;

inline double random_value(Rng& rng) { return std::uniform_real_distribution<double>(0.25, 4.0)(rng); }

inline std::vector<Index> random_tuple(Rng& rng, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(n - 1));
  std::vector<Index> t(m);
  for (auto& v : t) v = pick(rng);
  return t;
}

/// Every distinct permutation of a multiset tuple, each with its own value.
inline void add_orbit(std::vector<Entry>& out, std::set<std::vector<Index>>& seen,
                      std::vector<Index> tuple, Rng& rng, bool equal_values) {
  std::sort(tuple.begin(), tuple.end());
  const double shared = random_value(rng);
  do {
    if (seen.insert(tuple).second) out.push_back({tuple, equal_values ? shared : random_value(rng)});
  } while (std::next_permutation(tuple.begin(), tuple.end()));
}

/// Random support with `tuples` index tuples; duplicates collapse.
inline SparseTensor random_tensor(Rng& rng, std::size_t m, std::size_t n, std::size_t tuples) {
  std::set<std::vector<Index>> seen;
  std::vector<Entry> entries;
  for (std::size_t k = 0; k < tuples; ++k) {
    auto t = random_tuple(rng, m, n);
    if (seen.insert(t).second) entries.push_back({t, random_value(rng)});
  }
  return SparseTensor::from_entries(m, n, std::move(entries));
}

/// Random permutation-closed support built from `orbits` random multisets;
/// values differ within an orbit unless `symmetric_values`.
inline SparseTensor random_comb_symmetric(Rng& rng, std::size_t m, std::size_t n, std::size_t orbits,
                                          bool symmetric_values = false) {
  std::set<std::vector<Index>> seen;
  std::vector<Entry> entries;
  for (std::size_t k = 0; k < orbits; ++k) add_orbit(entries, seen, random_tuple(rng, m, n), rng, symmetric_values);
  return SparseTensor::from_entries(m, n, std::move(entries));
}

/// Combinatorially symmetric and weakly irreducible.
inline SparseTensor random_cs_weakly_irreducible(Rng& rng, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<std::size_t> count(1, 2 * n + 1);
  for (;;) {
    auto a = random_comb_symmetric(rng, m, n, count(rng));
    if (is_weakly_irreducible(a)) return a;
  }
}

/// Combinatorially symmetric and irreducible: orbits of (i, j, ..., j) supply
/// solid arcs, plus random orbits on top.
inline SparseTensor random_cs_irreducible(Rng& rng, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(n - 1));
  std::uniform_int_distribution<std::size_t> extra(0, n);
  for (;;) {
    std::set<std::vector<Index>> seen;
    std::vector<Entry> entries;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Index> t(m, pick(rng));
      t[0] = pick(rng);
      add_orbit(entries, seen, t, rng, false);
    }
    const auto e = extra(rng);
    for (std::size_t k = 0; k < e; ++k) add_orbit(entries, seen, random_tuple(rng, m, n), rng, false);
    auto a = SparseTensor::from_entries(m, n, std::move(entries));
    if (is_irreducible(a)) return a;
  }
}

/// Irreducible, usually not combinatorially symmetric: every vertex gets an
/// incoming solid arc, plus random tuples.
inline SparseTensor random_irreducible(Rng& rng, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(n - 1));
  std::uniform_int_distribution<std::size_t> extra(0, 2 * n);
  for (;;) {
    std::set<std::vector<Index>> seen;
    std::vector<Entry> entries;
    for (Index j = 0; j < n; ++j) {
      Index i = pick(rng);
      if (n > 1) {
        while (i == j) i = pick(rng);
      }
      std::vector<Index> t(m, j);
      t[0] = i;
      if (seen.insert(t).second) entries.push_back({t, random_value(rng)});
    }
    const auto e = extra(rng);
    for (std::size_t k = 0; k < e; ++k) {
      auto t = random_tuple(rng, m, n);
      if (seen.insert(t).second) entries.push_back({t, random_value(rng)});
    }
    auto a = SparseTensor::from_entries(m, n, std::move(entries));
    if (is_irreducible(a)) return a;
  }
}

/// Weakly irreducible with no further promise.
inline SparseTensor random_weakly_irreducible(Rng& rng, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<std::size_t> count(n, 3 * n);
  for (;;) {
    auto a = random_tensor(rng, m, n, count(rng));
    if (is_weakly_irreducible(a)) return a;
  }
}

/// Block-diagonal direct sum; block k occupies the next block[k].dim() indices.
inline SparseTensor direct_sum(const std::vector<SparseTensor>& blocks) {
  std::size_t n = 0;
  std::vector<Entry> entries;
  const std::size_t m = blocks.front().order();
  for (const auto& b : blocks) {
    for (std::size_t k = 0; k < b.nnz(); ++k) {
      auto idx = b.index(k);
      std::vector<Index> t(idx.begin(), idx.end());
      for (auto& v : t) v += static_cast<Index>(n);
      entries.push_back({t, b.value(k)});
    }
    n += b.dim();
  }
  return SparseTensor::from_entries(m, n, std::move(entries));
}

inline SparseTensor scaled(const SparseTensor& a, double c) {
  return a.map_values([c](double v, std::size_t) { return c * v; });
}

/// Same support, every value replaced by a fresh random positive number.
inline SparseTensor rescaled(const SparseTensor& a, Rng& rng) {
  return a.map_values([&](double, std::size_t) { return random_value(rng); });
}

}  // namespace nnt::testing
