#ifndef LFLOW_GRAPH_HPP
#define LFLOW_GRAPH_HPP

#include "lflow/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lflow {

using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex neighbor;
  EdgeId edge;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Edge indices follow construction order and never change. Each edge is stored
/// with u < v. Adjacency lists are ordered by edge index.
class Graph {
 public:
  Graph() = default;

  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adjacency_(n) {
    if (n < 0) throw PreconditionError("vertex count must be nonnegative");
    std::set<std::pair<Vertex, Vertex>> seen;
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
      auto& [u, v] = edges_[e];
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw PreconditionError("edge " + std::to_string(e) + " has an endpoint out of range");
      if (u == v) throw PreconditionError("edge " + std::to_string(e) + " is a loop");
      if (u > v) std::swap(u, v);
      if (!seen.emplace(u, v).second)
        throw PreconditionError("edge " + std::to_string(e) + " duplicates an earlier edge");
      adjacency_[u].push_back({v, e});
      adjacency_[v].push_back({u, e});
    }
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int m() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_[e]; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::span<const Incidence> incident(Vertex v) const { return adjacency_[v]; }
  [[nodiscard]] int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }

  [[nodiscard]] Vertex other(EdgeId e, Vertex v) const {
    return edges_[e].u == v ? edges_[e].v : edges_[e].u;
  }

  [[nodiscard]] std::optional<EdgeId> find_edge(Vertex a, Vertex b) const {
    const auto& shorter = adjacency_[a].size() <= adjacency_[b].size() ? adjacency_[a] : adjacency_[b];
    Vertex target = adjacency_[a].size() <= adjacency_[b].size() ? b : a;
    for (const auto& inc : shorter)
      if (inc.neighbor == target) return inc.edge;
    return std::nullopt;
  }

  [[nodiscard]] std::vector<int> degrees() const {
    std::vector<int> d(n_);
    for (Vertex v = 0; v < n_; ++v) d[v] = degree(v);
    return d;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Spanning subgraph of a host graph, with the map back to host edge indices.
struct EdgeSubgraph {
  Graph graph;
  std::vector<EdgeId> host_edge;
};

/// Same vertex set, edges restricted to `edges` (in the given order).
inline EdgeSubgraph edge_subgraph(const Graph& g, std::span<const EdgeId> edges) {
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (EdgeId e : edges) list.push_back(g.edge(e));
  return {Graph(g.n(), std::move(list)), std::vector<EdgeId>(edges.begin(), edges.end())};
}

/// Component label per vertex, numbered in order of lowest vertex.
inline std::vector<int> component_labels(const Graph& g, int* count = nullptr) {
  std::vector<int> label(g.n(), -1);
  int next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (label[s] != -1) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (const auto& inc : g.incident(v))
        if (label[inc.neighbor] == -1) {
          label[inc.neighbor] = next;
          stack.push_back(inc.neighbor);
        }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

inline int component_count(const Graph& g) {
  int c = 0;
  component_labels(g, &c);
  return c;
}

inline bool is_connected(const Graph& g) { return g.n() <= 1 || component_count(g) == 1; }

inline void require_connected(const Graph& g, const char* what) {
  if (!is_connected(g)) throw StructuralError(std::string(what) + ": graph is disconnected");
}

inline bool is_tree(const Graph& g) { return g.n() >= 1 && g.m() == g.n() - 1 && is_connected(g); }

inline bool is_unicyclic(const Graph& g) { return g.n() >= 3 && g.m() == g.n() && is_connected(g); }

inline std::optional<int> regular_degree(const Graph& g) {
  if (g.n() == 0) return 0;
  int d = g.degree(0);
  for (Vertex v = 1; v < g.n(); ++v)
    if (g.degree(v) != d) return std::nullopt;
  return d;
}

inline int leaf_count(const Graph& g) {
  int p = 0;
  for (Vertex v = 0; v < g.n(); ++v) p += g.degree(v) == 1;
  return p;
}

struct Bipartition {
  std::vector<int> side;  // 1 or 2
  int size1 = 0;
  int size2 = 0;

  [[nodiscard]] bool balanced() const { return size1 == size2; }
};

namespace detail {

/// BFS 2-coloring per component, colors 0/1; returns parent edges and depth too.
struct BfsForest {
  std::vector<int> color;
  std::vector<int> depth;
  std::vector<EdgeId> parent_edge;
  std::vector<Vertex> order;
};

inline BfsForest bfs_forest(const Graph& g) {
  BfsForest f{std::vector<int>(g.n(), -1), std::vector<int>(g.n(), -1),
              std::vector<EdgeId>(g.n(), -1), {}};
  std::queue<Vertex> queue;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (f.depth[s] != -1) continue;
    f.depth[s] = 0;
    f.color[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop();
      f.order.push_back(v);
      for (const auto& inc : g.incident(v)) {
        if (f.depth[inc.neighbor] != -1) continue;
        f.depth[inc.neighbor] = f.depth[v] + 1;
        f.color[inc.neighbor] = 1 - f.color[v];
        f.parent_edge[inc.neighbor] = inc.edge;
        queue.push(inc.neighbor);
      }
    }
  }
  return f;
}

}  // namespace detail

/// Two-coloring with vertex 0 on side 1, or nullopt when an odd cycle exists.
inline std::optional<Bipartition> bipartition(const Graph& g) {
  require_connected(g, "bipartition");
  auto f = detail::bfs_forest(g);
  for (const auto& e : g.edges())
    if (f.color[e.u] == f.color[e.v]) return std::nullopt;
  Bipartition b;
  b.side.resize(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    b.side[v] = f.color[v] + 1;
    (f.color[v] == 0 ? b.size1 : b.size2)++;
  }
  return b;
}

/// Bipartition of a possibly disconnected graph (each component colored from its lowest vertex).
inline std::optional<std::vector<int>> two_coloring(const Graph& g) {
  auto f = detail::bfs_forest(g);
  for (const auto& e : g.edges())
    if (f.color[e.u] == f.color[e.v]) return std::nullopt;
  return f.color;
}

inline bool is_bipartite(const Graph& g) { return two_coloring(g).has_value(); }

/// A simple odd cycle as a closed edge sequence, or nullopt if bipartite.
inline std::optional<std::vector<EdgeId>> find_odd_cycle(const Graph& g) {
  require_connected(g, "find_odd_cycle");
  auto f = detail::bfs_forest(g);
  for (EdgeId e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edge(e);
    if (f.color[u] != f.color[v]) continue;
    // Same BFS layer: climb both tree paths to their meeting point.
    std::vector<EdgeId> left, right;
    Vertex a = u, b = v;
    while (a != b) {
      if (f.depth[a] >= f.depth[b]) {
        left.push_back(f.parent_edge[a]);
        a = g.other(f.parent_edge[a], a);
      } else {
        right.push_back(f.parent_edge[b]);
        b = g.other(f.parent_edge[b], b);
      }
    }
    // Walk: v -> ... -> meet (right), meet -> ... -> u (left reversed), u -> v (e).
    std::vector<EdgeId> cycle(right.begin(), right.end());
    cycle.insert(cycle.end(), left.rbegin(), left.rend());
    cycle.push_back(e);
    return cycle;
  }
  return std::nullopt;
}

/// Edges whose removal disconnects their component (lowpoint DFS, linear time).
inline std::vector<EdgeId> bridges(const Graph& g) {
  std::vector<int> tin(g.n(), -1), low(g.n(), 0);
  std::vector<EdgeId> result;
  int timer = 0;
  struct Frame {
    Vertex v;
    EdgeId via;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (tin[s] != -1) continue;
    tin[s] = low[s] = timer++;
    stack.push_back({s, -1, 0});
    while (!stack.empty()) {
      auto& top = stack.back();
      auto adj = g.incident(top.v);
      if (top.next < adj.size()) {
        auto inc = adj[top.next++];
        if (inc.edge == top.via) continue;
        if (tin[inc.neighbor] == -1) {
          tin[inc.neighbor] = low[inc.neighbor] = timer++;
          stack.push_back({inc.neighbor, inc.edge, 0});
        } else {
          low[top.v] = std::min(low[top.v], tin[inc.neighbor]);
        }
      } else {
        Frame done = top;
        stack.pop_back();
        if (!stack.empty()) {
          Vertex parent = stack.back().v;
          low[parent] = std::min(low[parent], low[done.v]);
          if (low[done.v] > tin[parent]) result.push_back(done.via);
        }
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

/// DFS spanning tree from vertex 0, following adjacency in edge-index order.
inline std::vector<EdgeId> spanning_tree(const Graph& g) {
  require_connected(g, "spanning_tree");
  std::vector<EdgeId> tree;
  if (g.n() == 0) return tree;
  std::vector<bool> seen(g.n(), false);
  std::vector<std::pair<Vertex, std::size_t>> stack{{0, 0}};
  seen[0] = true;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    auto adj = g.incident(v);
    if (next == adj.size()) {
      stack.pop_back();
      continue;
    }
    auto inc = adj[next++];
    if (seen[inc.neighbor]) continue;
    seen[inc.neighbor] = true;
    tree.push_back(inc.edge);
    stack.emplace_back(inc.neighbor, 0);
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

namespace detail {

/// Hierholzer from `start`; consumes edges through `used`. Returns edges in walk order.
inline std::vector<EdgeId> closed_trail_from(const Graph& g, Vertex start, std::vector<bool>& used,
                                             std::vector<std::size_t>& next) {
  std::vector<std::pair<Vertex, EdgeId>> stack{{start, -1}};
  std::vector<EdgeId> trail;
  while (!stack.empty()) {
    Vertex v = stack.back().first;
    auto adj = g.incident(v);
    while (next[v] < adj.size() && used[adj[next[v]].edge]) ++next[v];
    if (next[v] == adj.size()) {
      if (stack.back().second != -1) trail.push_back(stack.back().second);
      stack.pop_back();
    } else {
      auto inc = adj[next[v]];
      used[inc.edge] = true;
      stack.emplace_back(inc.neighbor, inc.edge);
    }
  }
  std::reverse(trail.begin(), trail.end());
  return trail;
}

/// One Euler circuit per nontrivial component; requires all degrees even.
inline std::vector<std::vector<EdgeId>> euler_circuits_by_component(const Graph& g) {
  for (Vertex v = 0; v < g.n(); ++v)
    if (g.degree(v) % 2 != 0)
      throw PreconditionError("euler circuit: vertex " + std::to_string(v) + " has odd degree");
  std::vector<bool> used(g.m(), false);
  std::vector<std::size_t> next(g.n(), 0);
  std::vector<std::vector<EdgeId>> circuits;
  for (Vertex v = 0; v < g.n(); ++v) {
    auto adj = g.incident(v);
    bool fresh = std::any_of(adj.begin(), adj.end(), [&](const Incidence& i) { return !used[i.edge]; });
    if (fresh) circuits.push_back(closed_trail_from(g, v, used, next));
  }
  return circuits;
}

}  // namespace detail

/// Closed walk using every edge once, starting at the lowest non-isolated vertex.
inline std::vector<EdgeId> euler_circuit(const Graph& g) {
  require_connected(g, "euler_circuit");
  auto circuits = detail::euler_circuits_by_component(g);
  return circuits.empty() ? std::vector<EdgeId>{} : circuits.front();
}

/// Bipartite double cover: x_i = i, y_i = n + i; base edge {i,j} (i<j) lifts to
/// cover edges 2e = {x_i, y_j} and 2e+1 = {x_j, y_i}.
struct DoubleCover {
  Graph cover;
  std::vector<std::array<EdgeId, 2>> lift;
  std::vector<EdgeId> base_edge;
};

inline DoubleCover bipartite_double_cover(const Graph& g) {
  std::vector<Edge> edges;
  edges.reserve(2 * g.m());
  DoubleCover dc;
  for (EdgeId e = 0; e < g.m(); ++e) {
    auto [i, j] = g.edge(e);
    edges.push_back({i, g.n() + j});
    edges.push_back({j, g.n() + i});
    dc.lift.push_back({2 * e, 2 * e + 1});
    dc.base_edge.push_back(e);
    dc.base_edge.push_back(e);
  }
  dc.cover = Graph(2 * g.n(), std::move(edges));
  return dc;
}

/// Exact independence number by branch and bound (exponential; n capped).
inline int independence_number(const Graph& g, int cap = 24) {
  if (g.n() > cap || g.n() > 64)
    throw CapExceeded("independence_number: n = " + std::to_string(g.n()) + " exceeds cap " +
                      std::to_string(std::min(cap, 64)));
  std::vector<std::uint64_t> nbr(g.n(), 0);
  for (const auto& e : g.edges()) {
    nbr[e.u] |= std::uint64_t{1} << e.v;
    nbr[e.v] |= std::uint64_t{1} << e.u;
  }
  int best = 0;
  auto search = [&](auto&& self, std::uint64_t cand, int size) -> void {
    if (size + std::popcount(cand) <= best) return;
    if (cand == 0) {
      best = size;
      return;
    }
    int pick = -1, pick_deg = -1;
    for (std::uint64_t rest = cand; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      int d = std::popcount(nbr[v] & cand);
      if (d > pick_deg) {
        pick = v;
        pick_deg = d;
      }
    }
    std::uint64_t bit = std::uint64_t{1} << pick;
    if (pick_deg == 0) {
      // Every candidate is isolated among candidates.
      self(self, 0, size + std::popcount(cand));
      return;
    }
    self(self, cand & ~bit & ~nbr[pick], size + 1);
    self(self, cand & ~bit, size);
  };
  std::uint64_t all = g.n() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << g.n()) - 1);
  search(search, all, 0);
  return best;
}

/// Vertex-induced subgraph on the vertices with keep[v] true, relabeled in increasing order.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> host_vertex;
  std::vector<EdgeId> host_edge;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const std::vector<bool>& keep) {
  InducedSubgraph s;
  std::vector<int> index(g.n(), -1);
  for (Vertex v = 0; v < g.n(); ++v)
    if (keep[v]) {
      index[v] = static_cast<int>(s.host_vertex.size());
      s.host_vertex.push_back(v);
    }
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edge(e);
    if (index[u] >= 0 && index[v] >= 0) {
      edges.push_back({index[u], index[v]});
      s.host_edge.push_back(e);
    }
  }
  s.graph = Graph(static_cast<int>(s.host_vertex.size()), std::move(edges));
  return s;
}

}  // namespace lflow

#endif  // LFLOW_GRAPH_HPP
