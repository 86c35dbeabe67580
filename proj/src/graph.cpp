#include "nnt/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "nnt/error.hpp"

namespace nnt {

Digraph::Digraph(std::size_t vertex_count) : out_(vertex_count) {}

Digraph::Digraph(std::size_t vertex_count, std::vector<std::pair<Index, Index>> arcs)
    : out_(vertex_count) {
  for (auto [from, to] : arcs) {
    if (from >= vertex_count || to >= vertex_count) throw InvalidArgument("arc endpoint out of range");
    out_[from].push_back(to);
  }
  for (auto& succ : out_) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
}

std::size_t Digraph::arc_count() const noexcept {
  std::size_t total = 0;
  for (const auto& succ : out_) total += succ.size();
  return total;
}

bool Digraph::has_arc(Index from, Index to) const {
  return std::binary_search(out_[from].begin(), out_[from].end(), to);
}

std::vector<std::pair<Index, Index>> Digraph::arcs() const {
  std::vector<std::pair<Index, Index>> result;
  for (Index v = 0; v < out_.size(); ++v) {
    for (Index w : out_[v]) result.emplace_back(v, w);
  }
  return result;
}

Digraph build_digraph(const SparseTensor& a) {
  std::vector<std::pair<Index, Index>> arcs;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    for (std::size_t p = 1; p < idx.size(); ++p) arcs.emplace_back(idx[0], idx[p]);
  }
  return Digraph(a.dim(), std::move(arcs));
}

Digraph matrix_digraph(const DenseMatrix& m) {
  std::vector<std::pair<Index, Index>> arcs;
  for (Index i = 0; i < m.n; ++i) {
    for (Index j = 0; j < m.n; ++j) {
      if (m(i, j) != 0.0) arcs.emplace_back(i, j);
    }
  }
  return Digraph(m.n, std::move(arcs));
}

namespace {

// Iterative Tarjan. Returns comp[v] and the number of components.
std::pair<std::vector<std::size_t>, std::size_t> tarjan(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> number(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<Index> stack;
  std::vector<std::pair<Index, std::size_t>> call;  // vertex, next successor position
  std::size_t counter = 0, components = 0;

  for (Index root = 0; root < n; ++root) {
    if (number[root] != unvisited) continue;
    call.emplace_back(root, 0);
    number[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      const auto& succ = g.successors(v);
      if (pos < succ.size()) {
        const Index w = succ[pos++];
        if (number[w] == unvisited) {
          number[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], number[w]);
        }
        continue;
      }
      const Index done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == number[done]) {
        Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != done);
        ++components;
      }
    }
  }
  return {std::move(comp), components};
}

}  // namespace

IndexPartition strongly_connected_components(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  auto [comp, count] = tarjan(g);

  IndexPartition classes(count);
  for (Index v = 0; v < n; ++v) classes[comp[v]].push_back(v);  // vertices ascend

  // Kahn's algorithm on the condensation, smallest-vertex class first.
  std::vector<std::vector<std::size_t>> succ(count);
  std::vector<std::size_t> indegree(count, 0);
  for (Index v = 0; v < n; ++v) {
    for (Index w : g.successors(v)) {
      if (comp[v] != comp[w]) succ[comp[v]].push_back(comp[w]);
    }
  }
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (std::size_t c : s) ++indegree[c];
  }
  using Item = std::pair<Index, std::size_t>;  // smallest vertex, component id
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  for (std::size_t c = 0; c < count; ++c) {
    if (indegree[c] == 0) ready.emplace(classes[c].front(), c);
  }
  IndexPartition ordered;
  ordered.reserve(count);
  while (!ready.empty()) {
    const std::size_t c = ready.top().second;
    ready.pop();
    ordered.push_back(std::move(classes[c]));
    for (std::size_t d : succ[c]) {
      if (--indegree[d] == 0) ready.emplace(classes[d].front(), d);
    }
  }
  return ordered;
}

IndexPartition weak_components(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [v, w] : g.arcs()) {
    const Index a = find(v), b = find(w);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  IndexPartition parts;
  std::vector<std::size_t> slot(n, static_cast<std::size_t>(-1));
  for (Index v = 0; v < n; ++v) {
    const Index r = find(v);
    if (slot[r] == static_cast<std::size_t>(-1)) {
      slot[r] = parts.size();
      parts.emplace_back();
    }
    parts[slot[r]].push_back(v);
  }
  return parts;
}

bool is_strongly_connected(const Digraph& g) {
  return g.vertex_count() > 0 && strongly_connected_components(g).size() == 1;
}

std::size_t cycle_gcd(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return 0;
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> level(n, unseen);
  std::queue<Index> queue;
  level[0] = 0;
  queue.push(0);
  while (!queue.empty()) {
    const Index v = queue.front();
    queue.pop();
    for (Index w : g.successors(v)) {
      if (level[w] == unseen) {
        level[w] = level[v] + 1;
        queue.push(w);
      }
    }
  }
  std::size_t period = 0;
  for (auto [v, w] : g.arcs()) {
    if (level[v] == unseen || level[w] == unseen) continue;
    const auto diff = static_cast<long long>(level[v]) + 1 - static_cast<long long>(level[w]);
    period = std::gcd(period, static_cast<std::size_t>(diff < 0 ? -diff : diff));
  }
  return period;
}

bool is_weakly_irreducible(const SparseTensor& a) {
  return !a.is_zero() && is_strongly_connected(build_digraph(a));
}

std::optional<std::vector<Index>> reducibility_witness(const SparseTensor& a) {
  const std::size_t n = a.dim();
  if (a.is_zero()) {
    // n = 1: the lone index set is [n] itself; report it so the caller still
    // sees "reducible" for the zero tensor.
    std::vector<Index> all(n);
    std::iota(all.begin(), all.end(), Index{0});
    return n == 1 ? all : std::vector<Index>(all.begin() + 1, all.end());
  }
  // {v} is a witness when every tuple headed by v mentions v again. Prefer the
  // smallest such singleton; it is the most informative certificate.
  if (n >= 2) {
    std::vector<bool> escapes(n, false);
    for (std::size_t k = 0; k < a.nnz(); ++k) {
      auto idx = a.index(k);
      if (std::find(idx.begin() + 1, idx.end(), idx[0]) == idx.end()) escapes[idx[0]] = true;
    }
    for (Index v = 0; v < n; ++v) {
      if (!escapes[v]) return std::vector<Index>{v};
    }
  }
  // closure(J): add i whenever some tuple (i, i2..im) has its whole tail in J.
  // A is reducible iff some closure(J) is proper; closure is monotone in J, so
  // singleton seeds suffice and the complement of a proper closure is a witness.
  for (Index seed = 0; seed < n; ++seed) {
    std::vector<bool> in(n, false);
    in[seed] = true;
    std::size_t size = 1;
    bool grew = true;
    while (grew && size < n) {
      grew = false;
      for (std::size_t k = 0; k < a.nnz(); ++k) {
        auto idx = a.index(k);
        if (in[idx[0]]) continue;
        if (std::all_of(idx.begin() + 1, idx.end(), [&](Index i) { return in[i]; })) {
          in[idx[0]] = true;
          ++size;
          grew = true;
        }
      }
    }
    if (size < n) {
      std::vector<Index> witness;
      for (Index i = 0; i < n; ++i) {
        if (!in[i]) witness.push_back(i);
      }
      return witness;
    }
  }
  return std::nullopt;
}

bool is_irreducible(const SparseTensor& a) { return !reducibility_witness(a).has_value(); }

bool is_essentially_positive(const SparseTensor& a) {
  const auto m = majorization(a);
  return std::all_of(m.data.begin(), m.data.end(), [](double v) { return v > 0.0; });
}

bool is_weakly_positive(const SparseTensor& a) {
  const auto m = majorization(a);
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      if (i != j && !(m(i, j) > 0.0)) return false;
    }
  }
  return true;
}

namespace {

// Matrix irreducibility of M(A); a 1x1 matrix counts only when nonzero.
bool majorization_irreducible(const DenseMatrix& m, const Digraph& g) {
  if (m.n == 1) return m(0, 0) > 0.0;
  return is_strongly_connected(g);
}

}  // namespace

bool is_strongly_irreducible(const SparseTensor& a) {
  const auto m = majorization(a);
  return majorization_irreducible(m, matrix_digraph(m));
}

bool is_strongly_primitive(const SparseTensor& a) {
  const auto m = majorization(a);
  const auto g = matrix_digraph(m);
  return majorization_irreducible(m, g) && cycle_gcd(g) == 1;
}

bool is_weakly_primitive(const SparseTensor& a) {
  if (!is_weakly_irreducible(a)) return false;
  return cycle_gcd(build_digraph(a)) == 1;
}

Digraph solid_graph(const SparseTensor& a) {
  std::vector<std::pair<Index, Index>> arcs;
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    auto idx = a.index(k);
    if (idx[0] == idx[1]) continue;
    if (std::all_of(idx.begin() + 1, idx.end(), [&](Index i) { return i == idx[1]; })) {
      arcs.emplace_back(idx[0], idx[1]);
    }
  }
  return Digraph(a.dim(), std::move(arcs));
}

std::size_t solid_weak_components(const SparseTensor& a) {
  return weak_components(solid_graph(a)).size();
}

StructureProfile structure_profile(const SparseTensor& a) {
  StructureProfile p;
  p.essentially_positive = is_essentially_positive(a);
  p.weakly_positive = is_weakly_positive(a);
  p.weakly_irreducible = is_weakly_irreducible(a);
  p.irreducible = is_irreducible(a);
  p.strongly_irreducible = is_strongly_irreducible(a);
  p.weakly_primitive = is_weakly_primitive(a);
  p.strongly_primitive = is_strongly_primitive(a);
  p.symmetric = is_symmetric(a);
  p.combinatorially_symmetric = is_combinatorially_symmetric(a);
  p.solid_component_count = solid_weak_components(a);
  if ((p.strongly_irreducible && !p.irreducible) || (p.irreducible && !p.weakly_irreducible) ||
      (p.strongly_primitive && !p.weakly_primitive)) {
    throw std::logic_error("structure hierarchy violated");
  }
  return p;
}

}  // namespace nnt
