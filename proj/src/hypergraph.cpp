#include "nnt/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

#include "nnt/error.hpp"
#include "parse_util.hpp"

namespace nnt {

namespace {

void check_uniformity(std::size_t m) {
  if (m < 2 || m > kMaxHypergraphUniformity) {
    throw InvalidArgument("edge size must lie in [2, " + std::to_string(kMaxHypergraphUniformity) +
                          "]");
  }
}

// Returns an empty string when the edge is valid, otherwise the reason.
std::string edge_problem(const std::vector<Index>& sorted_edge, std::size_t m, std::size_t n) {
  if (sorted_edge.size() != m) return "edge has " + std::to_string(sorted_edge.size()) +
                                      " vertices, expected " + std::to_string(m);
  if (sorted_edge.back() >= n) return "vertex out of range";
  if (std::adjacent_find(sorted_edge.begin(), sorted_edge.end()) != sorted_edge.end()) {
    return "repeated vertex within an edge";
  }
  return {};
}

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Index{0}); }
  Index find(Index v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

UniformHypergraph make_hypergraph(std::size_t m, std::size_t n,
                                  std::vector<std::vector<Index>> edges) {
  check_uniformity(m);
  UniformHypergraph g{m, n, {}};
  for (auto& e : edges) {
    std::sort(e.begin(), e.end());
    if (auto why = edge_problem(e, m, n); !why.empty()) throw InvalidArgument(why);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw InvalidArgument("duplicate edge");
  }
  g.edges = std::move(edges);
  return g;
}

UniformHypergraph load_hypergraph(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0, m = 0, n = 0, count = 0;
  bool have_header = false;
  std::map<std::vector<Index>, std::size_t> seen;
  std::vector<std::vector<Index>> edges;

  while (std::getline(in, raw)) {
    ++line_no;
    auto fields = detail::split_fields(raw);
    if (fields.empty()) continue;
    if (!have_header) {
      if (fields.size() != 3) throw ParseError(line_no, "header must be 'm n l'");
      m = detail::parse_count(fields[0], line_no, "edge size");
      n = detail::parse_count(fields[1], line_no, "vertex count");
      count = detail::parse_count(fields[2], line_no, "edge count");
      if (m < 2 || m > kMaxHypergraphUniformity) {
        throw ParseError(line_no, "edge size must lie in [2, " +
                                      std::to_string(kMaxHypergraphUniformity) + "]");
      }
      have_header = true;
      continue;
    }
    if (edges.size() == count) throw ParseError(line_no, "more edges than declared");
    if (fields.size() != m) {
      throw ParseError(line_no, "non-uniform edge: expected " + std::to_string(m) + " vertices");
    }
    std::vector<Index> e;
    for (auto f : fields) {
      const auto v = detail::parse_count(f, line_no, "vertex");
      if (v < 1 || v > n) {
        throw ParseError(line_no, "vertex " + std::to_string(v) + " out of range [1, " +
                                      std::to_string(n) + "]");
      }
      e.push_back(static_cast<Index>(v - 1));
    }
    std::sort(e.begin(), e.end());
    if (auto why = edge_problem(e, m, n); !why.empty()) throw ParseError(line_no, why);
    if (auto [it, fresh] = seen.emplace(e, line_no); !fresh) {
      throw ParseError(line_no,
                       "duplicate edge (first given on line " + std::to_string(it->second) + ")");
    }
    edges.push_back(std::move(e));
  }
  if (!have_header) throw ParseError(std::max<std::size_t>(line_no, 1), "missing header");
  if (edges.size() != count) {
    throw ParseError(line_no, "declared " + std::to_string(count) + " edges, found " +
                                  std::to_string(edges.size()));
  }
  return make_hypergraph(m, n, std::move(edges));
}

UniformHypergraph parse_hypergraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_hypergraph(in);
}

UniformHypergraph load_hypergraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return load_hypergraph(in);
}

SparseTensor adjacency_tensor(const UniformHypergraph& g) {
  double factorial = 1.0;
  for (std::size_t k = 2; k < g.m; ++k) factorial *= static_cast<double>(k);
  const double weight = 1.0 / factorial;
  std::vector<Entry> entries;
  for (const auto& edge : g.edges) {
    std::vector<Index> perm = edge;  // sorted, so next_permutation visits all m!
    do {
      entries.push_back({perm, weight});
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return SparseTensor::from_entries(g.m, g.n, std::move(entries));
}

IndexPartition connected_components(const UniformHypergraph& g) {
  UnionFind uf(g.n);
  for (const auto& e : g.edges) {
    for (std::size_t k = 1; k < e.size(); ++k) uf.unite(e[0], e[k]);
  }
  std::map<Index, std::vector<Index>> groups;
  for (Index v = 0; v < g.n; ++v) groups[uf.find(v)].push_back(v);
  IndexPartition out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

HypergraphAnalysis analyze_hypergraph(const UniformHypergraph& g, const HypergraphOptions& options) {
  if (g.edges.empty()) throw InvalidArgument("hypergraph has no edges");
  const SparseTensor a = adjacency_tensor(g);
  HypergraphAnalysis out;
  out.components = connected_components(g);
  out.connected = out.components.size() == 1;

  if (out.connected) {
    out.spectral = spectral_radius(a, options.spectral);
    out.eigen = stabilizing_index(a, options.phase);
    out.rho = out.spectral->rho;
    out.dim = 0;
    if (out.eigen->s <= options.eigenvector_cap) {
      for (std::uint64_t j = 0; j < out.eigen->ell; ++j) {
        EigenvectorOptions eo;
        eo.cap = options.eigenvector_cap;
        out.eigenvector_counts.push_back(eigenvectors(a, *out.spectral, *out.eigen, j, eo).vectors.size());
      }
    }
    return out;
  }
  DimensionOptions dopt;
  dopt.spectral = options.spectral;
  out.verdict = eigenvariety_dimension(a, dopt);
  out.rho = out.verdict->rho;
  out.dim = out.verdict->dim;
  return out;
}

}  // namespace nnt
