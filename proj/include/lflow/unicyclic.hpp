#ifndef LFLOW_UNICYCLIC_HPP
#define LFLOW_UNICYCLIC_HPP

// 1-sum flows on connected unicyclic graphs by leaf-pair elimination.

#include "lflow/errors.hpp"
#include "lflow/gamma_flow.hpp"
#include "lflow/graph.hpp"
#include "lflow/rational.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <tuple>
#include <vector>

namespace lflow {

enum class UnicyclicCase {
  Cycle,        // p = 0, values {1/2}
  OneLeaf,      // p = 1, values in [0,1]
  NonBipartite, // p >= 2, values in [1-p, p]
  Bipartite,    // p >= 2 balanced, values in [1-floor(p/2), floor(p/2)]
};

struct UnicyclicFlow {
  FlowAssignment flow;
  UnicyclicCase kind = UnicyclicCase::Cycle;
  int leaves = 0;
  Rational lo = 0;
  Rational hi = 0;
  /// Every value lies in [lo, hi]. Can fail for bipartite graphs with an odd number
  /// of leaves, some of which admit no 1-sum flow in that interval at all.
  bool within_interval = true;
};

inline std::pair<Rational, Rational> unicyclic_interval(UnicyclicCase kind, int p) {
  switch (kind) {
    case UnicyclicCase::Cycle:
      return {Rational(1, 2), Rational(1, 2)};
    case UnicyclicCase::OneLeaf:
      return {Rational(0), Rational(1)};
    case UnicyclicCase::NonBipartite:
      return {Rational(1 - p), Rational(p)};
    case UnicyclicCase::Bipartite:
      return {Rational(1 - p / 2), Rational(p / 2)};
  }
  return {};
}

namespace detail {

/// The shrinking graph of the induction: vertex deletions on a fixed host.
class ShrinkingGraph {
 public:
  explicit ShrinkingGraph(const Graph& g) : g_(g), alive_(g.n(), true), deg_(g.degrees()) {}

  [[nodiscard]] bool alive(Vertex v) const { return alive_[v]; }
  [[nodiscard]] int degree(Vertex v) const { return deg_[v]; }

  [[nodiscard]] bool edge_alive(EdgeId e) const { return alive_[g_.edge(e).u] && alive_[g_.edge(e).v]; }

  void remove(Vertex v) {
    alive_[v] = false;
    for (const auto& inc : g_.incident(v))
      if (alive_[inc.neighbor]) --deg_[inc.neighbor];
    deg_[v] = 0;
  }

  [[nodiscard]] std::vector<Vertex> leaves() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g_.n(); ++v)
      if (alive_[v] && deg_[v] == 1) out.push_back(v);
    return out;
  }

  /// The unique alive incidence of a leaf.
  [[nodiscard]] Incidence leaf_edge(Vertex v) const {
    for (const auto& inc : g_.incident(v))
      if (alive_[inc.neighbor]) return inc;
    throw ConstructionDefect("leaf without an alive edge");
  }

  /// Shortest walk from s to t whose length has the given parity (0 even, 1 odd),
  /// by BFS over (vertex, parity) states. Lowest edge index first on ties.
  [[nodiscard]] std::vector<EdgeId> walk(Vertex s, Vertex t, int parity) const {
    const int n = g_.n();
    std::vector<int> prev_state(2 * n, -1), prev_edge(2 * n, -1);
    std::vector<bool> seen(2 * n, false);
    std::queue<int> q;
    q.push(2 * s);
    seen[2 * s] = true;
    const int goal = 2 * t + parity;
    while (!q.empty() && !seen[goal]) {
      int st = q.front();
      q.pop();
      Vertex v = st / 2;
      int par = st % 2;
      for (const auto& inc : g_.incident(v)) {
        if (!alive_[inc.neighbor]) continue;
        int next = 2 * inc.neighbor + (1 - par);
        if (seen[next]) continue;
        seen[next] = true;
        prev_state[next] = st;
        prev_edge[next] = inc.edge;
        q.push(next);
      }
    }
    if (!seen[goal]) throw ConstructionDefect("no walk of the required parity between the chosen leaves");
    std::vector<EdgeId> edges;
    for (int st = goal; st != 2 * s; st = prev_state[st]) edges.push_back(prev_edge[st]);
    std::reverse(edges.begin(), edges.end());
    return edges;
  }

  /// Marks the vertices of the alive cycle (pendant trees peeled away).
  [[nodiscard]] std::vector<bool> cycle_mask() const {
    std::vector<int> d = deg_;
    std::vector<bool> on(g_.n(), false);
    std::vector<Vertex> stack;
    for (Vertex v = 0; v < g_.n(); ++v)
      if (alive_[v]) {
        on[v] = true;
        if (d[v] == 1) stack.push_back(v);
      }
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      on[v] = false;
      for (const auto& inc : g_.incident(v))
        if (on[inc.neighbor] && --d[inc.neighbor] == 1) stack.push_back(inc.neighbor);
    }
    return on;
  }

  /// Vertices of the alive cycle in order from `start` (lowest cycle vertex when -1),
  /// and the edges between consecutive ones (edge i joins cyc[i] and cyc[i+1 mod l]).
  void cycle_from(Vertex start, std::vector<Vertex>& cyc, std::vector<EdgeId>& edges) const {
    auto on = cycle_mask();
    if (start < 0) start = static_cast<Vertex>(std::find(on.begin(), on.end(), true) - on.begin());
    if (start >= g_.n() || !on[start]) throw ConstructionDefect("cycle walk started off the cycle");
    cyc = {start};
    edges.clear();
    Vertex cur = start;
    EdgeId last = -1;
    while (true) {
      const Incidence* step = nullptr;
      for (const auto& inc : g_.incident(cur))
        if (on[inc.neighbor] && inc.edge != last) {
          step = &inc;
          break;
        }
      edges.push_back(step->edge);
      if (step->neighbor == start) return;
      last = step->edge;
      cur = step->neighbor;
      cyc.push_back(cur);
    }
  }

 private:
  const Graph& g_;
  std::vector<bool> alive_;
  std::vector<int> deg_;
};

}  // namespace detail

/// Constructive 1-sum flow on a connected unicyclic graph.
///
/// Reductions, repeated until the remaining graph has at most one leaf:
///  - a leaf u whose neighbour w has degree 2: omega(uw) = 1, omega(w x) = 0, delete u, w;
///  - otherwise two leaves u, v (opposite sides when bipartite, distinct neighbours
///    preferred): delete both and, on the way back, add +1, -1, +1, ... along an odd u-v
///    walk (a path when bipartite).
/// Base: a cycle (1/2 everywhere if odd; an alternating 0/1 matching if even) or a
/// cycle with one pendant edge (the edge 1, a perfect matching on the rest of the cycle).
/// In the bipartite case the result is finally shifted along the cycle alternation to
/// land in the stated interval when it can. nullopt iff the graph is bipartite and unbalanced.
inline std::optional<UnicyclicFlow> unicyclic_flow(const Graph& g) {
  if (!is_unicyclic(g)) throw StructuralError("unicyclic_flow: graph is not connected unicyclic");
  auto parts = bipartition(g);
  if (parts && !parts->balanced()) return std::nullopt;
  const bool bip = parts.has_value();

  UnicyclicFlow out;
  out.leaves = leaf_count(g);
  if (out.leaves == 0)
    out.kind = UnicyclicCase::Cycle;
  else if (out.leaves == 1)
    out.kind = UnicyclicCase::OneLeaf;
  else
    out.kind = bip ? UnicyclicCase::Bipartite : UnicyclicCase::NonBipartite;
  std::tie(out.lo, out.hi) = unicyclic_interval(out.kind, out.leaves);

  FlowAssignment flow(g.m(), 0);
  if (out.kind == UnicyclicCase::Cycle) {
    flow.assign(g.m(), Rational(1, 2));
    out.flow = std::move(flow);
    return out;
  }

  detail::ShrinkingGraph h(g);
  struct Step {
    std::vector<EdgeId> walk;  // pair step
    EdgeId fixed_one = -1;     // shortcut step
  };
  std::vector<Step> steps;

  while (true) {
    auto leaves = h.leaves();
    if (leaves.empty()) break;
    bool shortcut = false;
    for (Vertex u : leaves) {
      auto inc = h.leaf_edge(u);
      if (h.degree(inc.neighbor) != 2) continue;
      steps.push_back({{}, inc.edge});
      h.remove(u);
      h.remove(inc.neighbor);
      shortcut = true;
      break;
    }
    if (shortcut) continue;
    if (leaves.size() == 1) break;

    Vertex u = -1, v = -1;
    auto consider = [&](bool need_distinct) {
      for (std::size_t i = 0; i < leaves.size() && u < 0; ++i)
        for (std::size_t j = i + 1; j < leaves.size(); ++j) {
          if (bip && parts->side[leaves[i]] == parts->side[leaves[j]]) continue;
          if (need_distinct && h.leaf_edge(leaves[i]).neighbor == h.leaf_edge(leaves[j]).neighbor) continue;
          u = leaves[i];
          v = leaves[j];
          break;
        }
    };
    consider(true);
    if (u < 0) consider(false);
    if (u < 0) throw ConstructionDefect("no admissible leaf pair");
    steps.push_back({h.walk(u, v, 1), -1});
    h.remove(u);
    h.remove(v);
  }

  // Base case on what is left.
  auto leaves = h.leaves();
  std::vector<Vertex> cyc;
  std::vector<EdgeId> cyc_edges;
  if (leaves.empty()) {
    h.cycle_from(-1, cyc, cyc_edges);
    if (cyc.size() % 2 == 1) {
      for (EdgeId e : cyc_edges) flow[e] = Rational(1, 2);
    } else {
      for (std::size_t i = 0; i < cyc_edges.size(); i += 2) flow[cyc_edges[i]] = 1;
    }
  } else {
    auto inc = h.leaf_edge(leaves.front());
    flow[inc.edge] = 1;
    h.cycle_from(inc.neighbor, cyc, cyc_edges);
    if (cyc.size() % 2 == 0) throw ConstructionDefect("one-leaf base case on an even cycle");
    // Edges 1..l-2 join c_1..c_{l-1}; match c_1c_2, c_3c_4, ...
    for (std::size_t i = 1; i + 1 < cyc_edges.size(); i += 2) flow[cyc_edges[i]] = 1;
  }

  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (it->fixed_one >= 0) {
      flow[it->fixed_one] = 1;  // the other edge at w stays 0
      continue;
    }
    for (std::size_t j = 0; j < it->walk.size(); ++j) flow[it->walk[j]] += j % 2 == 0 ? 1 : -1;
  }

  if (bip) {
    // Shift by t times the cycle alternation; pick the integer t closest to 0 that fits.
    std::vector<Vertex> full_cyc;
    std::vector<EdgeId> full_edges;
    detail::ShrinkingGraph(g).cycle_from(-1, full_cyc, full_edges);
    std::optional<Rational> t_lo, t_hi;
    for (std::size_t i = 0; i < full_edges.size(); ++i) {
      const Rational& x = flow[full_edges[i]];
      // x + t >= lo and x + t <= hi on even positions, x - t within on odd ones.
      Rational a = i % 2 == 0 ? out.lo - x : x - out.hi;
      Rational b = i % 2 == 0 ? out.hi - x : x - out.lo;
      if (!t_lo || a > *t_lo) t_lo = a;
      if (!t_hi || b < *t_hi) t_hi = b;
    }
    Rational t = 0;
    if (*t_lo > 0) t = Rational(Integer(-floor_of(-*t_lo)));
    if (*t_hi < 0) t = Rational(floor_of(*t_hi));
    if (t != 0)
      for (std::size_t i = 0; i < full_edges.size(); ++i) flow[full_edges[i]] += i % 2 == 0 ? t : Rational(-t);
  }

  if (!has_vertex_values(g, flow, constant_gamma(g, 1)))
    throw ConstructionDefect("unicyclic_flow: construction misses the 1-sum condition");
  out.within_interval =
      std::all_of(flow.begin(), flow.end(), [&](const Rational& x) { return x >= out.lo && x <= out.hi; });
  out.flow = std::move(flow);
  return out;
}

}  // namespace lflow

#endif  // LFLOW_UNICYCLIC_HPP
