#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nnt/tensor.hpp"

namespace nnt {

/// Directed graph on vertices 0..n-1 with sorted, duplicate-free adjacency.
class Digraph {
 public:
  explicit Digraph(std::size_t vertex_count);
  Digraph(std::size_t vertex_count, std::vector<std::pair<Index, Index>> arcs);

  std::size_t vertex_count() const noexcept { return out_.size(); }
  std::size_t arc_count() const noexcept;
  const std::vector<Index>& successors(Index v) const { return out_[v]; }
  bool has_arc(Index from, Index to) const;
  std::vector<std::pair<Index, Index>> arcs() const;

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::vector<std::vector<Index>> out_;
};

using IndexPartition = std::vector<std::vector<Index>>;

/// G(A): arc (i, j) iff some stored tuple starts with i and contains j later.
Digraph build_digraph(const SparseTensor& a);

/// Digraph of a square matrix's nonzero pattern (loops included).
Digraph matrix_digraph(const DenseMatrix& m);

/// Strongly connected components in topological order of the condensation:
/// every arc leaves a class for itself or a later class, so the last class is
/// final and class i is final within classes 1..i. Among classes available at
/// the same step, the one with the smallest vertex comes first. Each class is
/// sorted.
IndexPartition strongly_connected_components(const Digraph& g);

/// Connected components after forgetting arc direction, ordered by smallest vertex.
IndexPartition weak_components(const Digraph& g);

/// gcd of the directed cycle lengths of a strongly connected graph.
std::size_t cycle_gcd(const Digraph& g);

bool is_strongly_connected(const Digraph& g);

bool is_weakly_irreducible(const SparseTensor& a);
bool is_irreducible(const SparseTensor& a);

/// A nonempty proper I with a_{i1..im} = 0 whenever i1 in I and i2..im all
/// outside I, or nullopt when the tensor is irreducible.
std::optional<std::vector<Index>> reducibility_witness(const SparseTensor& a);

bool is_essentially_positive(const SparseTensor& a);
bool is_weakly_positive(const SparseTensor& a);
bool is_strongly_irreducible(const SparseTensor& a);
bool is_strongly_primitive(const SparseTensor& a);
bool is_weakly_primitive(const SparseTensor& a);

/// Solid arcs (i, j), i != j, backed by a_{ij...j} > 0.
Digraph solid_graph(const SparseTensor& a);

/// Number of weakly connected components of the solid graph over all n vertices.
std::size_t solid_weak_components(const SparseTensor& a);

struct StructureProfile {
  bool essentially_positive = false;
  bool weakly_positive = false;
  bool weakly_irreducible = false;
  bool irreducible = false;
  bool strongly_irreducible = false;
  bool weakly_primitive = false;
  bool strongly_primitive = false;
  bool symmetric = false;
  bool combinatorially_symmetric = false;
  /// Weakly connected components of the solid graph; meaningful when irreducible.
  std::size_t solid_component_count = 0;
};

/// Computes every flag and checks the implication hierarchy
/// (strong => irreducible => weak, strongly primitive => weakly primitive).
StructureProfile structure_profile(const SparseTensor& a);

}  // namespace nnt
