#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nnt/decomposition.hpp"
#include "nnt/graph.hpp"
#include "nnt/phase_group.hpp"
#include "nnt/spectral.hpp"
#include "nnt/tensor.hpp"

namespace nnt {

/// Largest accepted edge size; the adjacency tensor stores m! tuples per edge.
inline constexpr std::size_t kMaxHypergraphUniformity = 8;

/// m-uniform hypergraph on vertices 0..n-1. Edges are sorted vertex tuples,
/// kept in sorted order without duplicates.
struct UniformHypergraph {
  std::size_t m = 2;
  std::size_t n = 0;
  std::vector<std::vector<Index>> edges;
};

/// Validates and canonicalizes; throws InvalidArgument on a bad edge.
UniformHypergraph make_hypergraph(std::size_t m, std::size_t n,
                                  std::vector<std::vector<Index>> edges);

// Text format: header "m n l", then l lines of m distinct 1-based vertex ids.
UniformHypergraph load_hypergraph(std::istream& in);
UniformHypergraph parse_hypergraph(std::string_view text);
UniformHypergraph load_hypergraph_file(const std::string& path);

/// Every permutation of every edge with value 1/(m-1)!.
SparseTensor adjacency_tensor(const UniformHypergraph& g);

/// Vertex classes under shared-edge incidence, ordered by smallest vertex.
/// Isolated vertices form singleton classes.
IndexPartition connected_components(const UniformHypergraph& g);

struct HypergraphOptions {
  SpectralOptions spectral;
  PhaseGroupOptions phase;
  std::size_t eigenvector_cap = 10000;
};

struct HypergraphAnalysis {
  bool connected = false;
  IndexPartition components;
  /// Connected input: spectral data, eigenvariety report, and the size of
  /// each eigenvariety at rho e^{2 pi i j / ell}.
  std::optional<SpectralResult> spectral;
  std::optional<EigenvarietyReport> eigen;
  std::vector<std::size_t> eigenvector_counts;
  /// Disconnected input: the dimension verdict.
  std::optional<DimensionVerdict> verdict;
  double rho = 0.0;
  std::size_t dim = 0;
};

/// Throws InvalidArgument for a hypergraph without edges.
HypergraphAnalysis analyze_hypergraph(const UniformHypergraph& g,
                                      const HypergraphOptions& options = {});

}  // namespace nnt
