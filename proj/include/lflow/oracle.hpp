#ifndef LFLOW_ORACLE_HPP
#define LFLOW_ORACLE_HPP

// Brute-force ground truth: finite-label enumeration, forced edge values, factor
// enumeration, and two LP-free feasibility probes for closed intervals.

#include "lflow/errors.hpp"
#include "lflow/gamma_flow.hpp"
#include "lflow/graph.hpp"
#include "lflow/labels.hpp"
#include "lflow/linalg.hpp"
#include "lflow/rational.hpp"
#include "lflow/special_flows.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

namespace lflow::oracle {

struct EnumerationReport {
  std::string instance;
  std::uint64_t count = 0;
  /// Kept solutions (the first `solution_cap` found; 0 keeps none), sorted by label
  /// index with edge 0 most significant. The count is always exact.
  std::vector<FlowAssignment> solutions;
  bool solutions_truncated = false;
  std::uint64_t nodes = 0;
  double wall_ms = 0;
};

/// All w in L^E with every vertex sum equal to c. `budget` bounds the number of search
/// nodes; running out throws CapExceeded. `stop_after` > 0 ends the search once that
/// many solutions are counted (an existence query).
inline EnumerationReport enumerate_finite_flows(const Graph& g, const std::vector<Rational>& labels_in, const Rational& c,
                                                std::size_t solution_cap = 1000, std::uint64_t budget = 100000000,
                                                std::uint64_t stop_after = 0) {
  auto start = std::chrono::steady_clock::now();
  auto labels = LabelSet::finite(labels_in).values();
  const int m = g.m(), k = static_cast<int>(labels.size());
  EnumerationReport rep;
  rep.instance = "n=" + std::to_string(g.n()) + " m=" + std::to_string(m) + " L=" + LabelSet::finite(labels).to_string() +
                 " c=" + to_string(c);
  // Edges by min endpoint degree, descending.
  std::vector<EdgeId> order(m);
  for (EdgeId e = 0; e < m; ++e) order[e] = e;
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    auto key = [&](EdgeId e) { return std::min(g.degree(g.edge(e).u), g.degree(g.edge(e).v)); };
    return key(a) > key(b);
  });
  std::vector<Rational> sum(g.n(), 0);
  std::vector<int> left(g.n());
  for (Vertex v = 0; v < g.n(); ++v) left[v] = g.degree(v);
  for (Vertex v = 0; v < g.n(); ++v)
    if (left[v] == 0 && c != 0) return rep;
  const Rational lo = labels.front(), hi = labels.back();
  auto viable = [&](Vertex v) {
    if (left[v] == 0) return sum[v] == c;
    return sum[v] + left[v] * lo <= c && c <= sum[v] + left[v] * hi;
  };
  std::vector<int> choice(m, -1);
  auto dfs = [&](auto&& self, int depth) -> void {
    if (stop_after != 0 && rep.count >= stop_after) return;
    if (++rep.nodes > budget)
      throw CapExceeded("enumerate_finite_flows: search budget of " + std::to_string(budget) + " nodes exhausted");
    if (depth == m) {
      ++rep.count;
      if (rep.solutions.size() < solution_cap) {
        FlowAssignment w(m);
        for (EdgeId e = 0; e < m; ++e) w[e] = labels[choice[e]];
        rep.solutions.push_back(std::move(w));
      }
      return;
    }
    const EdgeId e = order[depth];
    auto [u, v] = g.edge(e);
    --left[u];
    --left[v];
    for (int i = 0; i < k; ++i) {
      sum[u] += labels[i];
      sum[v] += labels[i];
      if (viable(u) && viable(v)) {
        choice[e] = i;
        self(self, depth + 1);
      }
      sum[u] -= labels[i];
      sum[v] -= labels[i];
    }
    ++left[u];
    ++left[v];
  };
  dfs(dfs, 0);
  // Search order differs from edge order: restore lexicographic output order.
  std::sort(rep.solutions.begin(), rep.solutions.end());
  rep.solutions_truncated = solution_cap != 0 && rep.count > rep.solutions.size();
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Per edge, the value shared by every gamma-flow, or nullopt where it varies.
inline std::vector<std::optional<Rational>> forced_edge_values(const Graph& g, const GammaVector& gamma) {
  require_gamma_size(g, gamma, "forced_edge_values");
  auto w = solve_gamma_flow(g, gamma);
  if (!w) throw PreconditionError("forced_edge_values: no gamma-flow exists");
  auto forced = constant_coordinates(g);
  std::vector<std::optional<Rational>> out(g.m());
  for (EdgeId e = 0; e < g.m(); ++e)
    if (forced[e]) out[e] = (*w)[e];
  return out;
}

/// All {1,2}-factors (components K2 or cycles) by subset backtracking with degree pruning.
inline std::vector<Factor> enumerate_one_two_factors(const Graph& g, int max_edges = 20,
                                                     std::size_t cap = 1000000) {
  if (g.m() > max_edges)
    throw CapExceeded("enumerate_one_two_factors: m = " + std::to_string(g.m()) + " exceeds " +
                      std::to_string(max_edges));
  std::vector<Factor> out;
  std::vector<int> deg(g.n(), 0), left(g.n());
  for (Vertex v = 0; v < g.n(); ++v) left[v] = g.degree(v);
  std::vector<EdgeId> chosen;
  auto shape_ok = [&]() {
    // Degrees are in {1,2}; a K2 component needs both ends of degree 1, so reject any
    // edge joining degree 1 to degree 2.
    for (EdgeId e : chosen)
      if (deg[g.edge(e).u] != deg[g.edge(e).v]) return false;
    return true;
  };
  auto dfs = [&](auto&& self, EdgeId e) -> void {
    if (e == g.m()) {
      if (shape_ok()) {
        if (out.size() >= cap) throw CapExceeded("enumerate_one_two_factors: more than " + std::to_string(cap) + " factors");
        out.push_back(make_factor(g, chosen));
      }
      return;
    }
    auto [u, v] = g.edge(e);
    --left[u];
    --left[v];
    // include
    if (deg[u] < 2 && deg[v] < 2) {
      ++deg[u];
      ++deg[v];
      chosen.push_back(e);
      self(self, e + 1);
      chosen.pop_back();
      --deg[u];
      --deg[v];
    }
    // exclude
    if ((left[u] > 0 || deg[u] > 0) && (left[v] > 0 || deg[v] > 0)) self(self, e + 1);
    ++left[u];
    ++left[v];
  };
  bool isolated = false;
  for (Vertex v = 0; v < g.n(); ++v) isolated = isolated || g.degree(v) == 0;
  if (!isolated && g.n() > 0) dfs(dfs, 0);
  return out;
}

/// All perfect matchings, matching the lowest unmatched vertex first.
inline std::vector<Matching> enumerate_perfect_matchings(const Graph& g, std::size_t cap = 1000000) {
  std::vector<Matching> out;
  if (g.n() % 2 != 0) return out;
  std::vector<bool> used(g.n(), false);
  Matching cur;
  auto dfs = [&](auto&& self) -> void {
    Vertex v = 0;
    while (v < g.n() && used[v]) ++v;
    if (v == g.n()) {
      if (out.size() >= cap) throw CapExceeded("enumerate_perfect_matchings: more than " + std::to_string(cap));
      auto m = cur;
      std::sort(m.begin(), m.end());
      out.push_back(std::move(m));
      return;
    }
    used[v] = true;
    for (const auto& inc : g.incident(v))
      if (!used[inc.neighbor]) {
        used[inc.neighbor] = true;
        cur.push_back(inc.edge);
        self(self);
        cur.pop_back();
        used[inc.neighbor] = false;
      }
    used[v] = false;
  };
  dfs(dfs);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline void require_probe_interval(const IntervalSpec& l, const char* what) {
  validate(l);
  if (!l.is_closed() || !l.lo) throw PreconditionError(std::string(what) + ": needs a closed interval with finite lower bound");
}

}  // namespace detail

/// Feasibility of {A w = gamma, a <= w <= b} by enumerating every basis B (rank-many
/// independent columns) and every assignment of the other edges to a bound.
inline bool polytope_feasibility_probe(const Graph& g, const GammaVector& gamma, const IntervalSpec& l, int max_edges = 10) {
  require_gamma_size(g, gamma, "polytope_feasibility_probe");
  detail::require_probe_interval(l, "polytope_feasibility_probe");
  const int m = g.m(), n = g.n();
  if (m > max_edges)
    throw CapExceeded("polytope_feasibility_probe: m = " + std::to_string(m) + " exceeds " + std::to_string(max_edges));
  auto a_int = linalg::incidence_matrix(g);
  auto a = linalg::to_rational(a_int);
  if (m == 0) {
    for (const auto& x : gamma)
      if (x != 0) return false;
    return true;
  }
  // Independent rows of A.
  linalg::Matrix at(m, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) at[j][i] = a[i][j];
  auto rows = linalg::rref(at).pivot_columns;
  const int r = static_cast<int>(rows.size());
  const Rational lo = *l.lo;
  const std::optional<Rational> hi = l.hi;
  std::vector<Rational> w(m);
  auto check = [&]() {
    for (int i = 0; i < n; ++i) {
      Rational s = 0;
      for (int j = 0; j < m; ++j)
        if (a[i][j] != 0) s += w[j];
      if (s != gamma[i]) return false;
    }
    for (const auto& x : w)
      if (x < lo || (hi && x > *hi)) return false;
    return true;
  };
  std::vector<int> basis;
  linalg::Matrix inv;
  // Gauss-Jordan inverse of the square basis block; false when singular.
  auto invert = [&](linalg::Matrix sq) {
    inv.assign(r, std::vector<Rational>(r, 0));
    for (int i = 0; i < r; ++i) inv[i][i] = 1;
    for (int c = 0; c < r; ++c) {
      int p = c;
      while (p < r && sq[p][c] == 0) ++p;
      if (p == r) return false;
      std::swap(sq[p], sq[c]);
      std::swap(inv[p], inv[c]);
      const Rational piv = sq[c][c];
      for (int j = 0; j < r; ++j) {
        sq[c][j] /= piv;
        inv[c][j] /= piv;
      }
      for (int i = 0; i < r; ++i) {
        if (i == c || sq[i][c] == 0) continue;
        const Rational f = sq[i][c];
        for (int j = 0; j < r; ++j) {
          sq[i][j] -= f * sq[c][j];
          inv[i][j] -= f * inv[c][j];
        }
      }
    }
    return true;
  };
  auto try_basis = [&]() -> bool {
    linalg::Matrix sq(r, std::vector<Rational>(r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) sq[i][j] = a[rows[i]][basis[j]];
    if (!invert(std::move(sq))) return false;
    std::vector<bool> in_basis(m, false);
    for (int j : basis) in_basis[j] = true;
    std::vector<int> rest;
    for (int j = 0; j < m; ++j)
      if (!in_basis[j]) rest.push_back(j);
    const int free = static_cast<int>(rest.size());
    const std::uint64_t choices = hi && *hi != lo ? (std::uint64_t{1} << free) : 1;
    std::vector<Rational> rhs(r);
    for (std::uint64_t mask = 0; mask < choices; ++mask) {
      for (int t = 0; t < free; ++t) w[rest[t]] = (mask >> t) & 1 ? *hi : lo;
      for (int i = 0; i < r; ++i) {
        rhs[i] = gamma[rows[i]];
        for (int t : rest)
          if (a[rows[i]][t] != 0) rhs[i] -= w[t];
      }
      bool in_bounds = true;
      for (int j = 0; j < r && in_bounds; ++j) {
        Rational x = 0;
        for (int i = 0; i < r; ++i)
          if (inv[j][i] != 0) x += inv[j][i] * rhs[i];
        w[basis[j]] = x;
        in_bounds = x >= lo && (!hi || x <= *hi);
      }
      if (in_bounds && check()) return true;
    }
    return false;
  };
  auto choose = [&](auto&& self, int from) -> bool {
    if (static_cast<int>(basis.size()) == r) return try_basis();
    for (int j = from; j <= m - (r - static_cast<int>(basis.size())); ++j) {
      basis.push_back(j);
      if (self(self, j + 1)) return true;
      basis.pop_back();
    }
    return false;
  };
  return choose(choose, 0);
}

/// Same question as a transportation problem on the bipartite double cover: supplies
/// beta_i = gamma_i - a deg(i) at x_i, demands beta_j at y_j, arc capacity b - a on both
/// lifts of every edge. Feasible iff beta >= 0 and the maximum flow saturates all
/// supplies (w_e is the mean of the two lifted arc flows). Exact Edmonds-Karp.
inline bool network_feasibility_probe(const Graph& g, const GammaVector& gamma, const IntervalSpec& l) {
  require_gamma_size(g, gamma, "network_feasibility_probe");
  detail::require_probe_interval(l, "network_feasibility_probe");
  const int n = g.n();
  std::vector<Rational> beta(n);
  Rational total = 0;
  for (Vertex v = 0; v < n; ++v) {
    beta[v] = gamma[v] - *l.lo * g.degree(v);
    if (beta[v] < 0) return false;
    total += beta[v];
  }
  if (total == 0) return true;
  const Rational big = l.hi ? *l.hi - *l.lo : total;
  // Nodes: source 0, x_i = 1 + i, y_i = 1 + n + i, sink 1 + 2n.
  const int source = 0, sink = 1 + 2 * n, nodes = 2 + 2 * n;
  struct Arc {
    int to;
    Rational cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out(nodes);
  auto add = [&](int u, int v, const Rational& cap) {
    out[u].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({v, cap});
    out[v].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({u, Rational(0)});
  };
  for (Vertex v = 0; v < n; ++v) {
    add(source, 1 + v, beta[v]);
    add(1 + n + v, sink, beta[v]);
  }
  for (const auto& e : g.edges()) {
    add(1 + e.u, 1 + n + e.v, big);
    add(1 + e.v, 1 + n + e.u, big);
  }
  Rational flow = 0;
  while (true) {
    std::vector<int> via(nodes, -1);
    std::deque<int> q{source};
    std::vector<bool> seen(nodes, false);
    seen[source] = true;
    while (!q.empty() && !seen[sink]) {
      int u = q.front();
      q.pop_front();
      for (int id : out[u])
        if (arcs[id].cap > 0 && !seen[arcs[id].to]) {
          seen[arcs[id].to] = true;
          via[arcs[id].to] = id;
          q.push_back(arcs[id].to);
        }
    }
    if (!seen[sink]) break;
    Rational push = -1;
    for (int v = sink; v != source; v = arcs[via[v] ^ 1].to)
      if (push < 0 || arcs[via[v]].cap < push) push = arcs[via[v]].cap;
    for (int v = sink; v != source; v = arcs[via[v] ^ 1].to) {
      arcs[via[v]].cap -= push;
      arcs[via[v] ^ 1].cap += push;
    }
    flow += push;
  }
  return flow == total;
}

/// Basis probe when small enough, network probe otherwise.
inline bool closed_interval_probe(const Graph& g, const GammaVector& gamma, const IntervalSpec& l) {
  if (g.m() <= 10) return polytope_feasibility_probe(g, gamma, l);
  return network_feasibility_probe(g, gamma, l);
}

}  // namespace lflow::oracle

#endif  // LFLOW_ORACLE_HPP
