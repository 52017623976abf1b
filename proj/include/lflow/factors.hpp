#ifndef LFLOW_FACTORS_HPP
#define LFLOW_FACTORS_HPP

// Perfect matchings, {1,2}-factors, f-factors and factorizations of regular graphs.

#include "lflow/errors.hpp"
#include "lflow/graph.hpp"
#include "lflow/matching.hpp"
#include "lflow/rational.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace lflow {

/// Spanning subgraph given by a sorted edge-index set.
struct Factor {
  std::vector<EdgeId> edges;
  std::vector<int> degree;  // per host vertex
};

using FactorDecomposition = std::vector<Factor>;

inline Factor make_factor(const Graph& g, std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  Factor f;
  f.degree.assign(g.n(), 0);
  for (EdgeId e : edges) {
    ++f.degree[g.edge(e).u];
    ++f.degree[g.edge(e).v];
  }
  f.edges = std::move(edges);
  return f;
}

inline std::optional<Matching> perfect_matching(const Graph& g) {
  if (g.n() % 2 != 0) return std::nullopt;
  Matching m;
  if (auto side = two_coloring(g))
    m = bipartite_max_matching(g, *side);
  else
    m = max_matching(g);
  if (2 * static_cast<int>(m.size()) != g.n()) return std::nullopt;
  return m;
}

/// A {1,2}-factor together with its half-integral weight: 1 on K2 components and
/// 1/2 on cycle edges.
struct OneTwoFactor {
  Factor factor;
  std::vector<Rational> weight;  // per host edge, in {0, 1/2, 1}
};

namespace detail {

/// Symmetrize a perfect matching of the double cover: w_e = (M(2e) + M(2e+1)) / 2.
/// Even cycles of weight 1/2 are then split into their alternate edges, so only odd
/// cycles keep weight 1/2.
inline OneTwoFactor fold_cover_matching(const Graph& g, const Matching& cover_matching) {
  std::vector<int> count(g.m(), 0);
  for (EdgeId ce : cover_matching) ++count[ce / 2];
  std::vector<Rational> w(g.m(), 0);
  for (EdgeId e = 0; e < g.m(); ++e) w[e] = Rational(count[e], 2);

  std::vector<bool> done(g.m(), false);
  for (EdgeId e0 = 0; e0 < g.m(); ++e0) {
    if (count[e0] != 1 || done[e0]) continue;
    // Trace the half-weight cycle through e0.
    std::vector<EdgeId> cyc{e0};
    done[e0] = true;
    Vertex start = g.edge(e0).u, cur = g.edge(e0).v;
    EdgeId last = e0;
    while (cur != start) {
      for (const auto& inc : g.incident(cur))
        if (count[inc.edge] == 1 && inc.edge != last) {
          last = inc.edge;
          break;
        }
      done[last] = true;
      cyc.push_back(last);
      cur = g.other(last, cur);
    }
    if (cyc.size() % 2 == 0)
      for (std::size_t i = 0; i < cyc.size(); ++i) w[cyc[i]] = i % 2 == 0 ? 1 : 0;
  }
  OneTwoFactor out;
  out.weight = std::move(w);
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < g.m(); ++e)
    if (out.weight[e] != 0) edges.push_back(e);
  out.factor = make_factor(g, std::move(edges));
  return out;
}

inline std::vector<int> cover_sides(int base_n) {
  std::vector<int> side(2 * base_n, 2);
  for (Vertex i = 0; i < base_n; ++i) side[i] = 1;
  return side;
}

/// Perfect matching of the double cover with cover vertices `drop` removed.
inline std::optional<Matching> cover_matching_without(const DoubleCover& dc, const std::vector<Vertex>& drop) {
  if (drop.empty()) {
    auto m = bipartite_max_matching(dc.cover, cover_sides(dc.cover.n() / 2));
    if (2 * static_cast<int>(m.size()) != dc.cover.n()) return std::nullopt;
    return m;
  }
  std::vector<bool> keep(dc.cover.n(), true);
  for (Vertex v : drop) keep[v] = false;
  auto sub = induced_subgraph(dc.cover, keep);
  std::vector<int> side(sub.graph.n());
  for (Vertex v = 0; v < sub.graph.n(); ++v) side[v] = sub.host_vertex[v] < dc.cover.n() / 2 ? 1 : 2;
  auto m = bipartite_max_matching(sub.graph, side);
  if (2 * static_cast<int>(m.size()) != sub.graph.n()) return std::nullopt;
  Matching host;
  for (EdgeId e : m) host.push_back(sub.host_edge[e]);
  std::sort(host.begin(), host.end());
  return host;
}

}  // namespace detail

/// {1,2}-factor via a perfect matching of the bipartite double cover.
inline std::optional<OneTwoFactor> one_two_factor(const Graph& g) {
  auto dc = bipartite_double_cover(g);
  auto m = detail::cover_matching_without(dc, {});
  if (!m) return std::nullopt;
  return detail::fold_cover_matching(g, *m);
}

enum class FactorKind { PerfectMatching, OneTwoFactor };

/// Some factor of the given kind containing edge e, when one exists.
inline std::optional<Factor> factor_containing(const Graph& g, EdgeId e, FactorKind kind) {
  if (e < 0 || e >= g.m()) throw PreconditionError("edge index out of range");
  auto [u, v] = g.edge(e);
  if (kind == FactorKind::PerfectMatching) {
    std::vector<bool> keep(g.n(), true);
    keep[u] = keep[v] = false;
    auto sub = induced_subgraph(g, keep);
    auto m = perfect_matching(sub.graph);
    if (!m) return std::nullopt;
    std::vector<EdgeId> edges{e};
    for (EdgeId se : *m) edges.push_back(sub.host_edge[se]);
    return make_factor(g, std::move(edges));
  }
  auto dc = bipartite_double_cover(g);
  const int n = g.n();
  // Cover edge 2e = {x_u, y_v}, 2e+1 = {x_v, y_u}.
  for (int which = 0; which < 2; ++which) {
    Vertex x = which == 0 ? u : v, y = n + (which == 0 ? v : u);
    auto m = detail::cover_matching_without(dc, {x, y});
    if (!m) continue;
    m->push_back(2 * e + which);
    std::sort(m->begin(), m->end());
    // Keep the raw symmetrized support so e stays in the factor.
    std::vector<EdgeId> edges;
    std::vector<bool> in(g.m(), false);
    for (EdgeId ce : *m) in[ce / 2] = true;
    for (EdgeId b = 0; b < g.m(); ++b)
      if (in[b]) edges.push_back(b);
    return make_factor(g, std::move(edges));
  }
  return std::nullopt;
}

inline bool edge_in_some_factor(const Graph& g, EdgeId e, FactorKind kind) {
  return factor_containing(g, e, kind).has_value();
}

/// Spanning subgraph with degree exactly f(v), by Tutte's gadget: vertex v becomes
/// deg(v) outer nodes (one per incident edge) and deg(v) - f(v) inner nodes joined to
/// all of v's outer nodes; edge uv joins the matching outer nodes of u and v.
inline std::optional<Factor> f_factor(const Graph& g, const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != g.n()) throw PreconditionError("f_factor: demand vector size");
  for (Vertex v = 0; v < g.n(); ++v)
    if (f[v] < 0 || f[v] > g.degree(v))
      throw PreconditionError("f_factor: demand at vertex " + std::to_string(v) + " out of range");
  long total = 0;
  for (int x : f) total += x;
  if (total % 2 != 0) return std::nullopt;

  std::vector<int> outer_base(g.n());
  int nodes = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    outer_base[v] = nodes;
    nodes += g.degree(v) + (g.degree(v) - f[v]);
  }
  std::vector<Edge> gadget;
  // Position of edge e within each endpoint's incidence list.
  std::vector<std::array<int, 2>> slot(g.m(), {-1, -1});
  for (Vertex v = 0; v < g.n(); ++v) {
    auto inc = g.incident(v);
    const int d = static_cast<int>(inc.size());
    for (int i = 0; i < d; ++i) {
      slot[inc[i].edge][g.edge(inc[i].edge).u == v ? 0 : 1] = outer_base[v] + i;
      for (int j = 0; j < d - f[v]; ++j) gadget.push_back({outer_base[v] + i, outer_base[v] + d + j});
    }
  }
  const std::size_t inner_edges = gadget.size();
  for (EdgeId e = 0; e < g.m(); ++e) gadget.push_back({slot[e][0], slot[e][1]});
  Graph gg(nodes, std::move(gadget));
  auto m = max_matching(gg);
  if (2 * static_cast<int>(m.size()) != nodes) return std::nullopt;
  std::vector<EdgeId> edges;
  for (EdgeId ge : m)
    if (static_cast<std::size_t>(ge) >= inner_edges) edges.push_back(static_cast<EdgeId>(ge - inner_edges));
  auto out = make_factor(g, std::move(edges));
  if (out.degree != f) throw ConstructionDefect("f_factor: gadget matching gave wrong degrees");
  return out;
}

inline std::optional<Factor> k_factor(const Graph& g, int k) {
  if (k < 0) throw PreconditionError("k_factor: k must be nonnegative");
  for (Vertex v = 0; v < g.n(); ++v)
    if (g.degree(v) < k) return std::nullopt;
  return f_factor(g, std::vector<int>(g.n(), k));
}

namespace detail {

inline int require_regular(const Graph& g, const char* what) {
  auto r = regular_degree(g);
  if (!r) throw StructuralError(std::string(what) + ": graph is not regular");
  return *r;
}

/// Two spanning halves by alternating edges along an Euler circuit of every component.
/// Each half is (k/2)-regular when every circuit has even length.
inline std::pair<std::vector<EdgeId>, std::vector<EdgeId>> euler_split(const Graph& g) {
  std::pair<std::vector<EdgeId>, std::vector<EdgeId>> halves;
  for (const auto& circuit : euler_circuits_by_component(g)) {
    if (circuit.size() % 2 != 0) throw PreconditionError("euler_split: a component has an odd number of edges");
    for (std::size_t i = 0; i < circuit.size(); ++i) (i % 2 == 0 ? halves.first : halves.second).push_back(circuit[i]);
  }
  std::sort(halves.first.begin(), halves.first.end());
  std::sort(halves.second.begin(), halves.second.end());
  return halves;
}

inline void factorize_bipartite(const Graph& g, const std::vector<int>& side, const std::vector<EdgeId>& host,
                                int k, std::vector<std::vector<EdgeId>>& out) {
  if (k == 0) return;
  if (k % 2 == 1) {
    auto m = bipartite_max_matching(g, side);
    if (2 * static_cast<int>(m.size()) != g.n()) throw ConstructionDefect("regular bipartite graph without a perfect matching");
    std::vector<EdgeId> mapped;
    std::vector<bool> in(g.m(), false);
    for (EdgeId e : m) {
      in[e] = true;
      mapped.push_back(host[e]);
    }
    out.push_back(std::move(mapped));
    std::vector<EdgeId> rest;
    for (EdgeId e = 0; e < g.m(); ++e)
      if (!in[e]) rest.push_back(e);
    auto sub = edge_subgraph(g, rest);
    std::vector<EdgeId> sub_host;
    for (EdgeId e : sub.host_edge) sub_host.push_back(host[e]);
    factorize_bipartite(sub.graph, side, sub_host, k - 1, out);
    return;
  }
  auto [a, b] = euler_split(g);
  for (const auto* half : {&a, &b}) {
    auto sub = edge_subgraph(g, *half);
    std::vector<EdgeId> sub_host;
    for (EdgeId e : sub.host_edge) sub_host.push_back(host[e]);
    factorize_bipartite(sub.graph, side, sub_host, k / 2, out);
  }
}

}  // namespace detail

/// k disjoint perfect matchings covering a k-regular bipartite graph.
inline FactorDecomposition one_factorization_bipartite(const Graph& g) {
  const int k = detail::require_regular(g, "one_factorization_bipartite");
  auto side = two_coloring(g);
  if (!side) throw StructuralError("one_factorization_bipartite: graph is not bipartite");
  std::vector<EdgeId> host(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) host[e] = e;
  std::vector<std::vector<EdgeId>> parts;
  detail::factorize_bipartite(g, *side, host, k, parts);
  FactorDecomposition out;
  for (auto& p : parts) out.push_back(make_factor(g, std::move(p)));
  return out;
}

/// k disjoint 2-factors of a 2k-regular graph: orient along Euler circuits, split each
/// vertex into an out-copy and an in-copy, 1-factorize the k-regular bipartite result.
inline FactorDecomposition two_factorization(const Graph& g) {
  const int r = detail::require_regular(g, "two_factorization");
  if (r % 2 != 0) throw PreconditionError("two_factorization: degree is odd");
  const int n = g.n();
  if (r == 0) return {};
  std::vector<Edge> arcs;
  std::vector<EdgeId> arc_host;
  for (const auto& circuit : detail::euler_circuits_by_component(g)) {
    // Recover the traversal direction: consecutive edges share a vertex.
    Vertex start;
    {
      const Edge& a = g.edge(circuit.front());
      if (circuit.size() == 1) {
        start = a.u;
      } else {
        const Edge& b = g.edge(circuit[1]);
        start = (a.v == b.u || a.v == b.v) ? a.u : a.v;
      }
    }
    Vertex cur = start;
    for (EdgeId e : circuit) {
      Vertex next = g.other(e, cur);
      arcs.push_back({cur, n + next});
      arc_host.push_back(e);
      cur = next;
    }
  }
  Graph split(2 * n, std::move(arcs));
  auto by_factor = one_factorization_bipartite(split);
  FactorDecomposition out;
  for (const auto& f : by_factor) {
    std::vector<EdgeId> edges;
    for (EdgeId e : f.edges) edges.push_back(arc_host[e]);
    auto two = make_factor(g, std::move(edges));
    for (int d : two.degree)
      if (d != 2) throw ConstructionDefect("two_factorization: lifted factor is not 2-regular");
    out.push_back(std::move(two));
  }
  return out;
}

/// Spanning subgraph whose every component is (k-1)- or k-regular (isolated vertices count
/// as 0-regular components). Demand patterns are tried in lexicographic order, vertex 0
/// most significant and k-1 before k; a pattern only keeps edges inside one demand class,
/// which makes every component uniform.
inline std::optional<Factor> regular_component_factor(const Graph& g, int k, int cap = 14) {
  const int r = detail::require_regular(g, "regular_component_factor");
  if (r < 3 || r % 2 == 0) throw PreconditionError("regular_component_factor: degree must be odd and >= 3");
  if (k < 1 || 3 * k > 2 * r) throw PreconditionError("regular_component_factor: need 1 <= k <= 2r/3");
  const int n = g.n();
  if (n > cap) throw CapExceeded("regular_component_factor: " + std::to_string(n) + " vertices exceed the cap of " +
                                 std::to_string(cap));
  std::vector<int> demand(n);
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << n); ++pattern) {
    int count_hi = 0;
    for (Vertex v = 0; v < n; ++v) {
      demand[v] = (pattern >> (n - 1 - v)) & 1 ? k : k - 1;
      count_hi += demand[v] == k;
    }
    // Each class needs an even degree sum.
    if (((n - count_hi) * (k - 1)) % 2 != 0 || (count_hi * k) % 2 != 0) continue;
    std::vector<EdgeId> inside;
    std::vector<int> room(n, 0);
    for (EdgeId e = 0; e < g.m(); ++e)
      if (demand[g.edge(e).u] == demand[g.edge(e).v]) {
        inside.push_back(e);
        ++room[g.edge(e).u];
        ++room[g.edge(e).v];
      }
    bool possible = true;
    for (Vertex v = 0; v < n && possible; ++v) possible = room[v] >= demand[v];
    if (!possible) continue;
    auto sub = edge_subgraph(g, inside);
    auto f = f_factor(sub.graph, demand);
    if (!f) continue;
    std::vector<EdgeId> edges;
    for (EdgeId e : f->edges) edges.push_back(sub.host_edge[e]);
    return make_factor(g, std::move(edges));
  }
  return std::nullopt;
}

/// True when every component of the factor (isolated vertices included) is regular
/// with degree in {k-1, k}.
inline bool has_regular_components(const Graph& g, const Factor& f, int k) {
  auto sub = edge_subgraph(g, f.edges);
  int count = 0;
  auto label = component_labels(sub.graph, &count);
  std::vector<int> comp_degree(count, -1);
  for (Vertex v = 0; v < g.n(); ++v) {
    int d = f.degree[v];
    if (d != k - 1 && d != k) return false;
    if (comp_degree[label[v]] == -1) comp_degree[label[v]] = d;
    if (comp_degree[label[v]] != d) return false;
  }
  return true;
}

}  // namespace lflow

#endif  // LFLOW_FACTORS_HPP
