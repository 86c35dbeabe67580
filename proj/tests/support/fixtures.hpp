#pragma once

// Small named tensors shared across the test binaries.

#include "nnt/hypergraph.hpp"
#include "nnt/tensor.hpp"

namespace nnt::testing {

/// a_122 = a_211 = 1 (order 3, dimension 2).
inline SparseTensor two_cycle() {
  return SparseTensor::from_entries(3, 2, {{{0, 1, 1}, 1.0}, {{1, 0, 0}, 1.0}});
}

/// a_111 = a_124 = a_234 = a_341 = 1 (order 3, dimension 4).
inline SparseTensor four_classes() {
  return SparseTensor::from_entries(
      3, 4, {{{0, 0, 0}, 1.0}, {{0, 1, 3}, 1.0}, {{1, 2, 3}, 1.0}, {{2, 3, 0}, 1.0}});
}

/// Adjacency tensor of the single edge {1, 2, 3}.
inline SparseTensor single_edge() { return adjacency_tensor(make_hypergraph(3, 3, {{0, 1, 2}})); }

/// Adjacency tensor of the disjoint edges {1, 2, 3} and {4, 5, 6}.
inline SparseTensor two_edges() {
  return adjacency_tensor(make_hypergraph(3, 6, {{0, 1, 2}, {3, 4, 5}}));
}

}  // namespace nnt::testing
