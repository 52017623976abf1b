#ifndef LFLOW_TREE_FLOW_HPP
#define LFLOW_TREE_FLOW_HPP

// Leaf pruning of trees and the unique 1-sum flow it determines.

#include "lflow/errors.hpp"
#include "lflow/gamma_flow.hpp"
#include "lflow/generators.hpp"
#include "lflow/graph.hpp"
#include "lflow/rational.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace lflow {

struct PruningLevel {
  std::vector<Vertex> leaves;  // P_i
  std::vector<EdgeId> edges;   // E(P_i)
};

/// T = T_1 > T_2 > ... > T_k, each T_{i+1} obtained by deleting the leaves of T_i,
/// stopping at K2 or a star.
struct PruningTrace {
  std::vector<PruningLevel> levels;
  enum class Residual { K2, Star } residual = Residual::K2;
  /// Center of the final star (Residual::Star only).
  Vertex center = -1;

  [[nodiscard]] int k() const { return static_cast<int>(levels.size()); }
  [[nodiscard]] std::vector<int> sizes() const {
    std::vector<int> p;
    for (const auto& l : levels) p.push_back(static_cast<int>(l.leaves.size()));
    return p;
  }
};

inline void require_tree(const Graph& t, const char* what) {
  if (!is_tree(t)) throw StructuralError(std::string(what) + ": input is not a tree");
}

inline PruningTrace prune(const Graph& t) {
  require_tree(t, "prune");
  if (t.n() < 2) throw StructuralError("prune: a tree needs at least one edge");
  PruningTrace trace;
  std::vector<bool> alive_edge(t.m(), true);
  std::vector<int> deg = t.degrees();
  int alive_vertices = t.n();
  std::vector<bool> alive(t.n(), true);
  while (true) {
    PruningLevel level;
    for (Vertex v = 0; v < t.n(); ++v)
      if (alive[v] && deg[v] == 1) level.leaves.push_back(v);
    const int leaves = static_cast<int>(level.leaves.size());
    const bool k2 = alive_vertices == 2;
    const bool star = !k2 && leaves == alive_vertices - 1;
    if (k2 || star) {
      for (EdgeId e = 0; e < t.m(); ++e)
        if (alive_edge[e]) level.edges.push_back(e);
      trace.residual = k2 ? PruningTrace::Residual::K2 : PruningTrace::Residual::Star;
      if (star)
        for (Vertex v = 0; v < t.n(); ++v)
          if (alive[v] && deg[v] > 1) trace.center = v;
      trace.levels.push_back(std::move(level));
      return trace;
    }
    for (Vertex v : level.leaves) {
      for (const auto& inc : t.incident(v)) {
        if (!alive_edge[inc.edge]) continue;
        alive_edge[inc.edge] = false;
        level.edges.push_back(inc.edge);
        --deg[inc.neighbor];
      }
      deg[v] = 0;
      alive[v] = false;
      --alive_vertices;
    }
    std::sort(level.edges.begin(), level.edges.end());
    trace.levels.push_back(std::move(level));
  }
}

/// Level recursion: the edge of each leaf of T_i takes the leaf's residual target,
/// which is then subtracted at the other endpoint. nullopt when the final K2 / star
/// condition fails.
inline std::optional<FlowAssignment> tree_unique_flow(const Graph& t, const GammaVector& gamma) {
  require_tree(t, "tree_unique_flow");
  require_gamma_size(t, gamma, "tree_unique_flow");
  if (t.n() == 1) {
    if (gamma[0] != 0) return std::nullopt;
    return FlowAssignment{};
  }
  auto trace = prune(t);
  GammaVector residual = gamma;
  FlowAssignment flow(t.m(), 0);
  for (int i = 0; i + 1 < trace.k(); ++i) {
    for (Vertex leaf : trace.levels[i].leaves)
      for (const auto& inc : t.incident(leaf)) {
        if (!std::binary_search(trace.levels[i].edges.begin(), trace.levels[i].edges.end(), inc.edge)) continue;
        flow[inc.edge] = residual[leaf];
        residual[inc.neighbor] -= residual[leaf];
      }
  }
  const auto& last = trace.levels.back();
  if (trace.residual == PruningTrace::Residual::K2) {
    EdgeId e = last.edges.front();
    if (residual[t.edge(e).u] != residual[t.edge(e).v]) return std::nullopt;
    flow[e] = residual[t.edge(e).u];
    return flow;
  }
  Rational leaf_total = 0;
  for (EdgeId e : last.edges) {
    Vertex leaf = t.other(e, trace.center);
    flow[e] = residual[leaf];
    leaf_total += residual[leaf];
  }
  if (leaf_total != residual[trace.center]) return std::nullopt;
  return flow;
}

/// Per-level data of the unique 1-sum flow.
struct TreeLevelReport {
  int p = 0;
  Rational edge_sum = 0;  // omega(E(P_i))
  /// Right-hand side of the alternating partial-sum bound,
  /// (-1)^i omega(E(P_i)) >= (-1)^i sum_{j=0}^{i-1} (-1)^j p_{i-j}.
  Rational bound = 0;
  /// Odd levels >= 1, even levels <= 0. Not universal: a vertex carrying leaves of
  /// two different levels can push an odd level down to 0.
  bool sign_ok = true;
  bool bound_ok = true;
};

struct TreeRangeReport {
  int n = 0;
  int p1 = 0;
  FlowAssignment flow;
  std::vector<TreeLevelReport> levels;
  Rational predicted_lo = 0;
  Rational predicted_hi = 0;
  /// Sorted distinct flow values.
  std::vector<Rational> achieved_values;

  bool integral = true;
  bool first_level_ones = true;
  bool signs_alternate = true;
  bool partial_sums_ok = true;
  bool leaf_in_each_part = true;
  bool within_predicted = true;
  /// Values in [2 - n/2, n/2 - 2] (checked for n >= 6).
  bool within_size_window = true;
};

/// Interval claimed for a balanced tree with p1 leaves.
inline std::pair<Rational, Rational> predicted_tree_interval(int p1) {
  if (p1 <= 3) return {Rational(0), Rational(1)};
  Rational half = p1 / 2;
  return {1 - half, half};
}

inline TreeRangeReport tree_range_report(const Graph& t) {
  require_tree(t, "tree_range_report");
  if (t.n() < 2) throw StructuralError("tree_range_report: a tree needs at least one edge");
  auto flow = tree_unique_flow(t, constant_gamma(t, 1));
  if (!flow) throw PreconditionError("tree_range_report: tree is not balanced, no 1-sum flow exists");
  TreeRangeReport r;
  r.n = t.n();
  r.flow = *flow;
  auto trace = prune(t);
  auto p = trace.sizes();
  r.p1 = p.front();
  std::tie(r.predicted_lo, r.predicted_hi) = predicted_tree_interval(r.p1);

  for (int i = 1; i <= trace.k(); ++i) {
    const auto& level = trace.levels[i - 1];
    TreeLevelReport lr;
    lr.p = p[i - 1];
    const int sign = i % 2 == 0 ? 1 : -1;
    for (EdgeId e : level.edges) {
      lr.edge_sum += r.flow[e];
      const bool ok = i % 2 == 0 ? r.flow[e] <= 0 : r.flow[e] >= 1;
      lr.sign_ok = lr.sign_ok && ok;
      if (i == 1 && r.flow[e] != 1) r.first_level_ones = false;
    }
    if (i >= 2) {
      for (int j = 0; j <= i - 1; ++j) lr.bound += (j % 2 == 0 ? 1 : -1) * p[i - j - 1];
      lr.bound_ok = sign * lr.edge_sum >= sign * lr.bound;
    }
    r.signs_alternate = r.signs_alternate && lr.sign_ok;
    r.partial_sums_ok = r.partial_sums_ok && lr.bound_ok;
    r.levels.push_back(std::move(lr));
  }

  r.achieved_values = r.flow;
  std::sort(r.achieved_values.begin(), r.achieved_values.end());
  r.achieved_values.erase(std::unique(r.achieved_values.begin(), r.achieved_values.end()), r.achieved_values.end());
  for (const auto& x : r.achieved_values) {
    if (!is_integral(x)) r.integral = false;
    if (x < r.predicted_lo || x > r.predicted_hi) r.within_predicted = false;
    if (r.n >= 6 && (x < 2 - Rational(r.n, 2) || x > Rational(r.n, 2) - 2)) r.within_size_window = false;
  }
  auto parts = bipartition(t);
  bool leaf1 = false, leaf2 = false;
  for (Vertex v = 0; v < t.n(); ++v)
    if (t.degree(v) == 1) (parts->side[v] == 1 ? leaf1 : leaf2) = true;
  r.leaf_in_each_part = leaf1 && leaf2;
  return r;
}

enum class ExtremalTree { Tmin, Tmax, Topt, S1, S2 };

inline Graph make_extremal_tree(ExtremalTree kind, int n) {
  const int floor = kind == ExtremalTree::Tmin || kind == ExtremalTree::Tmax ? 6 : 8;
  if (n % 2 != 0 || n < floor)
    throw PreconditionError("make_extremal_tree: n must be even and at least " + std::to_string(floor));
  switch (kind) {
    case ExtremalTree::Tmin:
      return gen::tree_min(n);
    case ExtremalTree::Tmax:
      return gen::tree_max(n);
    case ExtremalTree::Topt:
      return gen::tree_opt(n);
    case ExtremalTree::S1:
      return gen::tree_s1(n);
    case ExtremalTree::S2:
      return gen::tree_s2(n);
  }
  throw PreconditionError("make_extremal_tree: unknown kind");
}

/// Value set listed for each extremal tree on n vertices.
inline std::vector<Rational> extremal_tree_values(ExtremalTree kind, int n) {
  Rational h(n, 2);
  std::vector<Rational> v;
  switch (kind) {
    case ExtremalTree::Tmin:
      v = {2 - h, Rational(1)};
      break;
    case ExtremalTree::Tmax:
      v = {3 - h, Rational(1), h - 2};
      break;
    case ExtremalTree::Topt:
      v = {3 - h, 4 - h, Rational(1), h - 4, h - 3};
      break;
    case ExtremalTree::S1:
      v = {3 - h, Rational(0), Rational(1)};
      break;
    case ExtremalTree::S2:
      v = {4 - h, Rational(1), h - 4};
      break;
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace lflow

#endif  // LFLOW_TREE_FLOW_HPP
