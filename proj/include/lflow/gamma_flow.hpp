#ifndef LFLOW_GAMMA_FLOW_HPP
#define LFLOW_GAMMA_FLOW_HPP

// Exact solutions of A(G) w = gamma over the vertex-edge incidence matrix.

#include "lflow/errors.hpp"
#include "lflow/graph.hpp"
#include "lflow/linalg.hpp"
#include "lflow/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lflow {

inline GammaVector constant_gamma(const Graph& g, const Rational& c) { return GammaVector(g.n(), c); }

/// Per-vertex sum of incident edge values.
inline GammaVector vertex_values(const Graph& g, const FlowAssignment& flow) {
  if (static_cast<int>(flow.size()) != g.m())
    throw PreconditionError("vertex_values: flow has " + std::to_string(flow.size()) + " entries, graph has " +
                            std::to_string(g.m()) + " edges");
  GammaVector sums(g.n(), 0);
  for (EdgeId e = 0; e < g.m(); ++e) {
    sums[g.edge(e).u] += flow[e];
    sums[g.edge(e).v] += flow[e];
  }
  return sums;
}

inline bool has_vertex_values(const Graph& g, const FlowAssignment& flow, const GammaVector& gamma) {
  return static_cast<int>(flow.size()) == g.m() && vertex_values(g, flow) == gamma;
}

inline void require_gamma_size(const Graph& g, const GammaVector& gamma, const char* what) {
  if (static_cast<int>(gamma.size()) != g.n())
    throw PreconditionError(std::string(what) + ": gamma has " + std::to_string(gamma.size()) +
                            " entries, graph has " + std::to_string(g.n()) + " vertices");
}

struct GammaDecision {
  bool feasible = false;
  bool bipartite = false;
  /// For bipartite graphs: sum over side 1 minus sum over side 2.
  Rational imbalance = 0;
  /// y with y_v = +1 on side 1, -1 on side 2; spans ker A^T. Empty when non-bipartite.
  std::vector<Rational> obstruction;
};

/// Non-bipartite: always feasible. Bipartite: feasible iff the sides balance in gamma.
inline GammaDecision gamma_flow_exists(const Graph& g, const GammaVector& gamma) {
  require_gamma_size(g, gamma, "gamma_flow_exists");
  require_connected(g, "gamma_flow_exists");
  GammaDecision d;
  auto parts = bipartition(g);
  if (!parts) {
    d.feasible = true;
    return d;
  }
  d.bipartite = true;
  d.obstruction.resize(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    d.obstruction[v] = parts->side[v] == 1 ? 1 : -1;
    d.imbalance += d.obstruction[v] * gamma[v];
  }
  d.feasible = d.imbalance == 0;
  return d;
}

namespace detail {

/// Back-substitution from the leaves of a spanning tree rooted at vertex 0. Returns
/// nullopt if the root residual is nonzero (gamma unbalanced).
inline std::optional<FlowAssignment> solve_on_tree(const Graph& g, const GammaVector& gamma,
                                                   const std::vector<EdgeId>& tree) {
  FlowAssignment flow(g.m(), 0);
  if (g.n() == 0) return flow;
  std::vector<std::vector<Incidence>> adj(g.n());
  for (EdgeId e : tree) {
    adj[g.edge(e).u].push_back({g.edge(e).v, e});
    adj[g.edge(e).v].push_back({g.edge(e).u, e});
  }
  std::vector<Vertex> order{0};
  std::vector<EdgeId> parent_edge(g.n(), -1);
  std::vector<bool> seen(g.n(), false);
  seen[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& inc : adj[order[i]])
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = true;
        parent_edge[inc.neighbor] = inc.edge;
        order.push_back(inc.neighbor);
      }
  GammaVector residual = gamma;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex v = *it;
    if (parent_edge[v] == -1) continue;
    EdgeId e = parent_edge[v];
    flow[e] = residual[v];
    residual[g.other(e, v)] -= residual[v];
  }
  if (residual[0] != 0) return std::nullopt;
  return flow;
}

/// Peel pendant vertices of a unicyclic support, then solve the remaining odd
/// cycle in closed form. `support` must have n edges forming one odd cycle plus trees.
inline FlowAssignment solve_on_odd_unicyclic(const Graph& g, const GammaVector& gamma,
                                             const std::vector<EdgeId>& support) {
  FlowAssignment flow(g.m(), 0);
  std::vector<std::vector<Incidence>> adj(g.n());
  for (EdgeId e : support) {
    adj[g.edge(e).u].push_back({g.edge(e).v, e});
    adj[g.edge(e).v].push_back({g.edge(e).u, e});
  }
  std::vector<int> deg(g.n());
  std::vector<bool> removed_edge(g.m(), false);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < g.n(); ++v) {
    deg[v] = static_cast<int>(adj[v].size());
    if (deg[v] == 1) queue.push_back(v);
  }
  GammaVector residual = gamma;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Vertex v = queue[i];
    for (const auto& inc : adj[v]) {
      if (removed_edge[inc.edge]) continue;
      removed_edge[inc.edge] = true;
      flow[inc.edge] = residual[v];
      residual[inc.neighbor] -= residual[v];
      --deg[v];
      if (--deg[inc.neighbor] == 1) queue.push_back(inc.neighbor);
      break;
    }
  }
  // The vertices left with degree 2 form the odd cycle c_0 .. c_{l-1},
  // with edge f_i joining c_i and c_{i+1}.
  Vertex start = -1;
  for (Vertex v = 0; v < g.n(); ++v)
    if (deg[v] == 2) {
      start = v;
      break;
    }
  if (start == -1) throw ConstructionDefect("odd unicyclic support has no cycle");
  std::vector<Vertex> cyc{start};
  std::vector<EdgeId> cyc_edges;
  Vertex prev = -1, cur = start;
  while (true) {
    EdgeId step = -1;
    Vertex to = -1;
    for (const auto& inc : adj[cur]) {
      if (removed_edge[inc.edge] || (!cyc_edges.empty() && inc.edge == cyc_edges.back())) continue;
      step = inc.edge;
      to = inc.neighbor;
      break;
    }
    cyc_edges.push_back(step);
    if (to == start) break;
    prev = cur;
    cur = to;
    cyc.push_back(cur);
  }
  (void)prev;
  const std::size_t len = cyc.size();
  if (len % 2 == 0) throw ConstructionDefect("support cycle is even");
  // x_{i-1} + x_i = r_i with x_{-1} = x_{len-1}. Setting x_0 = t gives
  // x_{len-1} = S + t with S = sum_{i=1}^{len-1} (-1)^{len-1-i} r_i, and r_0 = S + 2t.
  Rational alternating = 0;
  for (std::size_t i = 1; i < len; ++i) {
    if ((len - 1 - i) % 2 == 0)
      alternating += residual[cyc[i]];
    else
      alternating -= residual[cyc[i]];
  }
  Rational x = (residual[cyc[0]] - alternating) / 2;
  flow[cyc_edges[0]] = x;
  for (std::size_t i = 1; i < len; ++i) {
    x = residual[cyc[i]] - x;
    flow[cyc_edges[i]] = x;
  }
  return flow;
}

}  // namespace detail

/// Integer flow supported on a spanning tree (zero elsewhere).
inline FlowAssignment solve_integer_bipartite(const Graph& g, const GammaVector& gamma) {
  require_gamma_size(g, gamma, "solve_integer_bipartite");
  for (const auto& x : gamma)
    if (!is_integral(x)) throw PreconditionError("solve_integer_bipartite: gamma must be integral");
  auto d = gamma_flow_exists(g, gamma);
  if (!d.bipartite) throw StructuralError("solve_integer_bipartite: graph is not bipartite");
  if (!d.feasible) throw PreconditionError("solve_integer_bipartite: gamma is unbalanced across the bipartition");
  auto flow = detail::solve_on_tree(g, gamma, spanning_tree(g));
  if (!flow) throw ConstructionDefect("tree back-substitution left a nonzero root residual");
  return *flow;
}

/// Edges of a spanning tree plus one edge closing an odd cycle (BFS tree + same-layer edge).
inline std::vector<EdgeId> odd_unicyclic_support(const Graph& g) {
  auto f = lflow::detail::bfs_forest(g);
  std::vector<EdgeId> support;
  std::vector<bool> in_tree(g.m(), false);
  for (Vertex v = 0; v < g.n(); ++v)
    if (f.parent_edge[v] != -1) {
      support.push_back(f.parent_edge[v]);
      in_tree[f.parent_edge[v]] = true;
    }
  for (EdgeId e = 0; e < g.m(); ++e)
    if (!in_tree[e] && f.color[g.edge(e).u] == f.color[g.edge(e).v]) {
      support.push_back(e);
      std::sort(support.begin(), support.end());
      return support;
    }
  throw StructuralError("graph is bipartite; no odd cycle edge");
}

/// Flow supported on n edges (spanning tree plus one odd-cycle edge); for integral
/// gamma every value is an integer or half-integer.
inline FlowAssignment solve_halfinteger(const Graph& g, const GammaVector& gamma) {
  require_gamma_size(g, gamma, "solve_halfinteger");
  require_connected(g, "solve_halfinteger");
  if (is_bipartite(g)) throw StructuralError("solve_halfinteger: graph is bipartite");
  return detail::solve_on_odd_unicyclic(g, gamma, odd_unicyclic_support(g));
}

/// Exact solution of A w = gamma using the structured constructions, or nullopt.
inline std::optional<FlowAssignment> solve_gamma_flow(const Graph& g, const GammaVector& gamma) {
  auto d = gamma_flow_exists(g, gamma);
  if (!d.feasible) return std::nullopt;
  if (d.bipartite) return detail::solve_on_tree(g, gamma, spanning_tree(g));
  return detail::solve_on_odd_unicyclic(g, gamma, odd_unicyclic_support(g));
}

/// det A(C_l) by fraction-free elimination, columns ordered (0,1), (1,2), ..., (l-1,0).
inline Integer odd_cycle_incidence_det(int length) {
  if (length < 3 || length % 2 == 0) throw PreconditionError("odd_cycle_incidence_det: length must be odd and >= 3");
  linalg::IntMatrix a(length, std::vector<Integer>(length, 0));
  for (int j = 0; j < length; ++j) {
    a[j][j] = 1;
    a[(j + 1) % length][j] = 1;
  }
  return linalg::bareiss_determinant(std::move(a));
}

/// Integer basis of the 0-sum flows, ker A(G).
inline std::vector<FlowAssignment> nullspace(const Graph& g) {
  std::vector<FlowAssignment> basis;
  if (g.m() == 0) return basis;
  for (auto& v : linalg::integer_nullspace(linalg::incidence_matrix(g))) basis.emplace_back(v.begin(), v.end());
  return basis;
}

}  // namespace lflow

#endif  // LFLOW_GAMMA_FLOW_HPP
