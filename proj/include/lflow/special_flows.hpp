#ifndef LFLOW_SPECIAL_FLOWS_HPP
#define LFLOW_SPECIAL_FLOWS_HPP

// Named constructions: {0,1/2,1} and positive flows from factors, {-1,0,1} flows and
// 3-flows on regular graphs, nowhere-zero flows, k-factor scaling, tree averaging.

#include "lflow/errors.hpp"
#include "lflow/factors.hpp"
#include "lflow/gamma_flow.hpp"
#include "lflow/graph.hpp"
#include "lflow/interval_flow.hpp"
#include "lflow/labels.hpp"
#include "lflow/rational.hpp"
#include "lflow/simplex.hpp"
#include "lflow/tree_flow.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace lflow {

struct FlowResult {
  FlowAssignment flow;
  GammaVector gamma;
  LabelSet claimed = LabelSet::nonzero_reals();
  std::string provenance;
};

/// Exact check: vertex sums equal gamma and every value lies in the label set.
/// Returns an empty string on success, otherwise the first violated constraint.
inline std::string flow_violation(const Graph& g, const FlowAssignment& flow, const GammaVector& gamma,
                                  const LabelSet& labels) {
  if (static_cast<int>(flow.size()) != g.m()) return "flow has " + std::to_string(flow.size()) + " values for " +
                                                      std::to_string(g.m()) + " edges";
  if (static_cast<int>(gamma.size()) != g.n()) return "gamma has wrong length";
  for (EdgeId e = 0; e < g.m(); ++e)
    if (!labels.contains(flow[e]))
      return "edge " + std::to_string(e) + " value " + to_string(flow[e]) + " not in " + labels.to_string();
  auto sums = vertex_values(g, flow);
  for (Vertex v = 0; v < g.n(); ++v)
    if (sums[v] != gamma[v])
      return "vertex " + std::to_string(v) + " sum " + to_string(sums[v]) + " != " + to_string(gamma[v]);
  return {};
}

namespace detail {

inline FlowResult finalize(const Graph& g, FlowAssignment flow, GammaVector gamma, LabelSet claimed,
                           std::string provenance) {
  auto bad = flow_violation(g, flow, gamma, claimed);
  if (!bad.empty()) throw ConstructionDefect(provenance + ": " + bad);
  return {std::move(flow), std::move(gamma), std::move(claimed), std::move(provenance)};
}

inline LabelSet zero_half_one() { return LabelSet::finite({Rational(0), Rational(1, 2), Rational(1)}); }

/// 1 on K2 components of a {1,2}-factor, 1/2 on its cycle edges.
inline FlowAssignment factor_flow(const Graph& g, const Factor& f) {
  FlowAssignment w(g.m(), 0);
  for (EdgeId e : f.edges) {
    auto [u, v] = g.edge(e);
    w[e] = f.degree[u] == 1 && f.degree[v] == 1 ? Rational(1) : Rational(1, 2);
  }
  return w;
}

}  // namespace detail

/// 1-sum flow with values in {0,1/2,1}: a perfect matching (bipartite) or a
/// {1,2}-factor (non-bipartite).
inline std::optional<FlowResult> one_zero_one_flow(const Graph& g) {
  require_connected(g, "one_zero_one_flow");
  FlowAssignment w(g.m(), 0);
  std::string how;
  if (is_bipartite(g)) {
    auto m = perfect_matching(g);
    if (!m) return std::nullopt;
    for (EdgeId e : *m) w[e] = 1;
    how = "perfect matching";
  } else {
    auto f = one_two_factor(g);
    if (!f) return std::nullopt;
    w = f->weight;
    how = "{1,2}-factor from a double-cover perfect matching";
  }
  return detail::finalize(g, std::move(w), constant_gamma(g, 1), detail::zero_half_one(), how);
}

struct PositiveFlowDecision {
  bool exists = false;
  /// First edge lying in no factor, when !exists.
  std::optional<EdgeId> uncovered;
  std::optional<FlowResult> witness;
  /// Witness skipped because m exceeded the cap (the decision is still exact).
  bool witness_capped = false;
};

/// 1-sum flow with values in (0,1]: exists iff every edge lies in some perfect matching
/// (bipartite) or {1,2}-factor (otherwise); the witness averages one factor per edge.
inline PositiveFlowDecision one_positive_flow(const Graph& g, int cap = 20) {
  require_connected(g, "one_positive_flow");
  const auto kind = is_bipartite(g) ? FactorKind::PerfectMatching : FactorKind::OneTwoFactor;
  PositiveFlowDecision out;
  std::vector<Factor> witnesses;
  std::vector<bool> covered(g.m(), false);
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (covered[e]) continue;
    auto f = factor_containing(g, e, kind);
    if (!f) {
      out.uncovered = e;
      return out;
    }
    for (EdgeId x : f->edges) covered[x] = true;
    witnesses.push_back(std::move(*f));
  }
  out.exists = true;
  if (g.m() > cap) {
    out.witness_capped = true;
    return out;
  }
  FlowAssignment avg(g.m(), 0);
  for (const auto& f : witnesses) {
    auto w = detail::factor_flow(g, f);
    for (EdgeId e = 0; e < g.m(); ++e) avg[e] += w[e];
  }
  const Rational count(static_cast<long>(witnesses.size()));
  for (auto& x : avg) x /= count;
  IntervalSpec positive{Rational(0), Rational(1), true, false};
  out.witness = detail::finalize(g, std::move(avg), constant_gamma(g, 1), LabelSet::interval(positive),
                                 "average of " + std::to_string(witnesses.size()) + " factors covering every edge");
  return out;
}

namespace detail {

inline LabelSet pm1_labels() { return LabelSet::finite({Rational(-1), Rational(0), Rational(1)}); }

/// Odd-regular core (components need not be connected): 1-factorize the double cover,
/// put (-1)^(i-1)/2 on factor i, fold b_e = a_{2e} + a_{2e+1}.
inline FlowAssignment pm1_fold(const Graph& g) {
  auto dc = bipartite_double_cover(g);
  auto factors = one_factorization_bipartite(dc.cover);
  std::vector<Rational> a(dc.cover.m(), 0);
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (EdgeId ce : factors[i].edges) a[ce] = i % 2 == 0 ? Rational(1, 2) : Rational(-1, 2);
  FlowAssignment b(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) b[e] = a[2 * e] + a[2 * e + 1];
  return b;
}

inline int require_connected_regular(const Graph& g, const char* what) {
  require_connected(g, what);
  auto r = regular_degree(g);
  if (!r) throw StructuralError(std::string(what) + ": graph is not regular");
  return *r;
}

}  // namespace detail

inline FlowResult pm1_flow_odd_regular(const Graph& g) {
  const int k = detail::require_connected_regular(g, "pm1_flow_odd_regular");
  if (k % 2 == 0) throw PreconditionError("pm1_flow_odd_regular: degree must be odd");
  return detail::finalize(g, detail::pm1_fold(g), constant_gamma(g, 1), detail::pm1_labels(),
                          "odd regular: alternating 1-factorization of the double cover, folded");
}

/// k = 2 mod 4, n even: Euler-split into two (k/2)-regular halves, fold the first, zero
/// on the second.
inline FlowResult pm1_flow_mod4_regular(const Graph& g) {
  const int k = detail::require_connected_regular(g, "pm1_flow_mod4_regular");
  if (k % 4 != 2) throw PreconditionError("pm1_flow_mod4_regular: degree must be 2 mod 4");
  if (g.n() % 2 != 0) throw PreconditionError("pm1_flow_mod4_regular: n must be even");
  auto [first, second] = detail::euler_split(g);
  auto half = edge_subgraph(g, first);
  if (regular_degree(half.graph) != k / 2) throw ConstructionDefect("pm1_flow_mod4_regular: Euler split is unbalanced");
  auto folded = detail::pm1_fold(half.graph);
  FlowAssignment w(g.m(), 0);
  for (EdgeId e = 0; e < half.graph.m(); ++e) w[half.host_edge[e]] = folded[e];
  return detail::finalize(g, std::move(w), constant_gamma(g, 1), detail::pm1_labels(),
                          "degree 2 mod 4: Euler split, odd-regular fold on one half, 0 on the other");
}

namespace detail {

inline LabelSet three_flow_labels() {
  return LabelSet::finite({Rational(-2), Rational(-1), Rational(1), Rational(2)});
}

/// Component degree of each factor edge (factor components are regular).
inline std::vector<int> component_degree_of_edges(const Graph& g, const Factor& f) {
  std::vector<int> d(g.m(), -1);
  for (EdgeId e : f.edges) d[e] = f.degree[g.edge(e).u];
  return d;
}

/// 2-factors of the subgraph made of `edges` on its non-isolated vertices (regular of
/// even degree there), in host indices.
inline std::vector<std::vector<EdgeId>> host_two_factors(const Graph& g, const std::vector<EdgeId>& edges) {
  auto sub = edge_subgraph(g, edges);
  std::vector<bool> keep(g.n());
  for (Vertex v = 0; v < g.n(); ++v) keep[v] = sub.graph.degree(v) > 0;
  auto core = induced_subgraph(sub.graph, keep);
  std::vector<std::vector<EdgeId>> out;
  for (const auto& f : two_factorization(core.graph)) {
    std::vector<EdgeId> host;
    for (EdgeId e : f.edges) host.push_back(sub.host_edge[core.host_edge[e]]);
    out.push_back(std::move(host));
  }
  return out;
}

/// Edges of `within` whose both endpoints satisfy `pick`.
template <class Pred>
std::vector<EdgeId> edges_where(const Graph& g, const std::vector<EdgeId>& within, Pred pick) {
  std::vector<EdgeId> out;
  for (EdgeId e : within)
    if (pick(e)) out.push_back(e);
  return out;
}

}  // namespace detail

/// 1-sum flow with values in {-2,-1,1,2} on an r-regular graph, r odd >= 5, built from a
/// factor whose components are regular.
inline FlowResult one_sum_3flow(const Graph& g, int cap = 14) {
  const int r = detail::require_connected_regular(g, "one_sum_3flow");
  if (r % 2 == 0 || r < 5) throw PreconditionError("one_sum_3flow: degree must be odd and >= 5");
  const int t = (r - 1) / 2;
  const int k = r == 5 ? 3 : t + 1;
  auto h = regular_component_factor(g, k, cap);
  if (!h) throw ConstructionDefect("one_sum_3flow: no factor with regular components found");
  auto comp_deg = detail::component_degree_of_edges(g, *h);
  FlowAssignment w(g.m(), 0);
  std::string how;
  if (r == 5) {
    for (EdgeId e = 0; e < g.m(); ++e) w[e] = comp_deg[e] == -1 ? -1 : comp_deg[e] == 3 ? 1 : 2;
    how = "degree 5: [2,3]-factor, -1 outside, 1 on cubic parts, 2 on cycles";
  } else {
    std::vector<EdgeId> low, high;  // t-regular and (t+1)-regular components
    for (EdgeId e : h->edges) (comp_deg[e] == t ? low : high).push_back(e);
    if (t % 2 == 1) {
      for (EdgeId e = 0; e < g.m(); ++e) w[e] = comp_deg[e] == -1 ? 1 : 0;
      for (EdgeId e : low) w[e] = -1;
      for (EdgeId e : high) w[e] = -1;
      if (!high.empty()) {
        auto parts = detail::host_two_factors(g, high);
        if (parts.size() < 2) throw ConstructionDefect("one_sum_3flow: even part lacks two 2-factors");
        for (EdgeId e : parts[0]) w[e] = -2;
        for (EdgeId e : parts[1]) w[e] = 1;
      }
      how = "degree 2t+1, t odd: [t,t+1]-factor, 4-factor split as -2/1 on the even parts";
    } else {
      for (EdgeId e = 0; e < g.m(); ++e) w[e] = comp_deg[e] == -1 ? -1 : 1;
      if (!low.empty()) {
        auto parts = detail::host_two_factors(g, low);
        for (EdgeId e : parts.at(0)) w[e] = 2;
      }
      how = "degree 2t+1, t even: [t,t+1]-factor, 2 on a 2-factor of the t-regular parts";
    }
  }
  return detail::finalize(g, std::move(w), constant_gamma(g, 1), detail::three_flow_labels(), how);
}

/// 0-sum flow with values in {-2,-1,1,2} on a 2-edge-connected r-regular graph, r odd,
/// r != 5 (open for r = 5).
inline FlowResult zero_sum_3flow(const Graph& g) {
  const int r = detail::require_connected_regular(g, "zero_sum_3flow");
  if (r % 2 == 0 || r < 3) throw PreconditionError("zero_sum_3flow: degree must be odd and >= 3");
  if (!bridges(g).empty()) throw StructuralError("zero_sum_3flow: graph has a bridge");
  if (r == 5) throw ConjectureCase("zero_sum_3flow: degree 5 is an open case");
  const int t = r / 3;
  auto need_factor = [&](int k) {
    auto f = k_factor(g, k);
    if (!f) throw ConstructionDefect("zero_sum_3flow: no " + std::to_string(k) + "-factor found");
    return *f;
  };
  FlowAssignment w(g.m(), 0);
  std::string how;
  auto complement_of = [&](const Factor& f) {
    std::vector<bool> in(g.m(), false);
    for (EdgeId e : f.edges) in[e] = true;
    std::vector<EdgeId> rest;
    for (EdgeId e = 0; e < g.m(); ++e)
      if (!in[e]) rest.push_back(e);
    return rest;
  };
  if (r % 3 == 0) {
    auto f = need_factor(t);
    for (EdgeId e = 0; e < g.m(); ++e) w[e] = -1;
    for (EdgeId e : f.edges) w[e] = 2;
    how = "degree 3t: 2 on a t-factor, -1 on the complementary 2t-factor";
  } else {
    const int base = r % 3 == 1 ? t + 1 : t + 2;
    auto f = need_factor(base);
    auto parts = detail::host_two_factors(g, complement_of(f));
    for (EdgeId e : f.edges) w[e] = 2;
    for (const auto& p : parts)
      for (EdgeId e : p) w[e] = -1;
    if (parts.size() < 2) throw ConstructionDefect("zero_sum_3flow: complement has fewer than two 2-factors");
    if (r % 3 == 1) {
      for (EdgeId e : parts[0]) w[e] = -2;
      how = "degree 3t+1: 2 on a (t+1)-factor, -2 and -1 on two 2-factors, -1 on the rest";
    } else {
      for (EdgeId e : parts[0]) w[e] = -2;
      for (EdgeId e : parts[1]) w[e] = -2;
      how = "degree 3t+2: 2 on a (t+2)-factor, -2 on a 4-factor, -1 on the rest";
    }
  }
  return detail::finalize(g, std::move(w), constant_gamma(g, 0), detail::three_flow_labels(), how);
}

/// Edges whose value is the same in every gamma-flow: every nullspace vector vanishes there.
inline std::vector<bool> constant_coordinates(const Graph& g) {
  std::vector<bool> forced(g.m(), true);
  for (const auto& b : nullspace(g))
    for (EdgeId e = 0; e < g.m(); ++e)
      if (b[e] != 0) forced[e] = false;
  return forced;
}

namespace detail {

/// alpha = sum_i M^(i-1) beta_i, nonzero wherever some beta_i is; M escalates on failure.
inline FlowAssignment generic_null_vector(const Graph& g, const std::vector<FlowAssignment>& basis,
                                          const std::vector<bool>& forced) {
  FlowAssignment alpha(g.m(), 0);
  if (basis.empty()) return alpha;
  Rational bound = 0;
  for (const auto& b : basis)
    for (const auto& x : b) bound = std::max(bound, abs(x));
  Rational m = 1 + 2 * bound;
  while (true) {
    std::fill(alpha.begin(), alpha.end(), Rational(0));
    Rational scale = 1;
    for (const auto& b : basis) {
      for (EdgeId e = 0; e < g.m(); ++e) alpha[e] += scale * b[e];
      scale *= m;
    }
    bool ok = true;
    for (EdgeId e = 0; e < g.m() && ok; ++e) ok = forced[e] || alpha[e] != 0;
    if (ok) return alpha;
    m *= 2;
  }
}

}  // namespace detail

/// Nowhere-zero gamma-flow (real, or integral when `integral`), as omega + a alpha with
/// a the smallest admissible positive integer (integral) or half-integer k/2. nullopt
/// when some edge is forced to 0 or, in integral mode, no integral gamma-flow exists.
inline std::optional<FlowResult> nowhere_zero_gamma_flow(const Graph& g, const GammaVector& gamma, bool integral) {
  require_gamma_size(g, gamma, "nowhere_zero_gamma_flow");
  require_connected(g, "nowhere_zero_gamma_flow");
  auto omega = solve_gamma_flow(g, gamma);
  if (!omega) return std::nullopt;
  if (integral) {
    if (!std::all_of(gamma.begin(), gamma.end(), [](const Rational& x) { return is_integral(x); }))
      return std::nullopt;
    if (!std::all_of(omega->begin(), omega->end(), [](const Rational& x) { return is_integral(x); })) {
      // Non-bipartite with an odd gamma total: every solution has a half-integral entry.
      Rational total = 0;
      for (const auto& x : gamma) total += x;
      if (is_integral(total / 2)) throw ConstructionDefect("nowhere_zero_gamma_flow: even total gave a fractional solution");
      return std::nullopt;
    }
  }
  auto forced = constant_coordinates(g);
  for (EdgeId e = 0; e < g.m(); ++e)
    if (forced[e] && (*omega)[e] == 0) return std::nullopt;
  auto alpha = detail::generic_null_vector(g, nullspace(g), forced);
  std::vector<Rational> bad;
  for (EdgeId e = 0; e < g.m(); ++e)
    if (alpha[e] != 0) bad.push_back(-(*omega)[e] / alpha[e]);
  std::sort(bad.begin(), bad.end());
  Rational a;
  for (long k = 1;; ++k) {
    a = integral ? Rational(k) : Rational(k, 2);
    if (!std::binary_search(bad.begin(), bad.end(), a)) break;
  }
  FlowAssignment w(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) w[e] = (*omega)[e] + a * alpha[e];
  return detail::finalize(g, std::move(w), gamma, integral ? LabelSet::nonzero_integers() : LabelSet::nonzero_reals(),
                          std::string("particular solution plus a generic nullspace combination at a = ") +
                              to_string(a));
}

/// Bridge criterion for balanced bipartite graphs: a nowhere-zero 1-sum flow exists iff
/// no bridge leaves a balanced component behind.
struct BridgeCriterion {
  bool feasible = true;
  std::optional<EdgeId> blocking_bridge;
  /// Forced value |A| - |B| per bridge (A the colour class containing the bridge's
  /// endpoint on the lower-labelled side).
  std::vector<std::pair<EdgeId, Rational>> bridge_values;
};

inline BridgeCriterion bridge_criterion(const Graph& g) {
  require_connected(g, "bridge_criterion");
  auto parts = bipartition(g);
  if (!parts) throw StructuralError("bridge_criterion: graph is not bipartite");
  if (!parts->balanced()) throw PreconditionError("bridge_criterion: bipartite graph is not balanced");
  BridgeCriterion out;
  for (EdgeId b : bridges(g)) {
    std::vector<EdgeId> rest;
    for (EdgeId e = 0; e < g.m(); ++e)
      if (e != b) rest.push_back(e);
    auto sub = edge_subgraph(g, rest);
    auto label = component_labels(sub.graph);
    auto [u, v] = g.edge(b);
    // Component of u: count the colour class of u versus the other.
    int same = 0, other = 0;
    for (Vertex x = 0; x < g.n(); ++x)
      if (label[x] == label[u]) (parts->side[x] == parts->side[u] ? same : other)++;
    Rational value(same - other);
    out.bridge_values.emplace_back(b, value);
    if (value == 0 && out.feasible) {
      out.feasible = false;
      out.blocking_bridge = b;
    }
    (void)v;
  }
  return out;
}

/// Nowhere-zero 1-sum flow on a connected balanced bipartite graph.
inline std::optional<FlowResult> nowhere_zero_one_sum(const Graph& g, bool integral) {
  auto crit = bridge_criterion(g);
  auto gamma = constant_gamma(g, 1);
  auto built = nowhere_zero_gamma_flow(g, gamma, integral);
  if (crit.feasible != built.has_value())
    throw ConstructionDefect("nowhere_zero_one_sum: bridge criterion disagrees with the forced-edge analysis");
  if (!built) return std::nullopt;
  for (const auto& [b, value] : crit.bridge_values)
    if (built->flow[b] != value) throw ConstructionDefect("nowhere_zero_one_sum: bridge value differs from |A|-|B|");
  built->provenance = "bridge criterion; " + built->provenance;
  return built;
}

/// gamma-flow with values in an interval with optional open ends, optionally excluding 0.
/// Open ends are handled by maximizing a margin t in [0,1]; the point found with margin
/// t*/2 lies strictly inside. Zeros are then removed edge by edge by moving toward a
/// feasible point that is nonzero on that edge.
struct RestrictedFlowResult {
  bool feasible = false;
  FlowAssignment flow;
  /// Edge whose value is 0 throughout the feasible set (puncture failure).
  std::optional<EdgeId> forced_zero;
};

inline RestrictedFlowResult restricted_interval_flow(const Graph& g, const GammaVector& gamma, const IntervalSpec& l,
                                                     bool puncture) {
  require_gamma_size(g, gamma, "restricted_interval_flow");
  validate(l);
  RestrictedFlowResult out;
  // margin: largest t <= 1 with lo + t <= w_e (open lo) and w_e <= hi - t (open hi)
  Rational margin = 0;
  const bool open = (l.lo && l.open_low) || (l.hi && l.open_high);
  auto build = [&](const std::optional<Rational>& fixed_margin) {
    lp::LinearProgram prog;
    for (EdgeId e = 0; e < g.m(); ++e) prog.add_variable({l.lo, l.hi});
    const int t = prog.add_variable({Rational(0), Rational(1)});
    for (Vertex v = 0; v < g.n(); ++v) {
      lp::Terms row;
      for (const auto& inc : g.incident(v)) row.emplace_back(inc.edge, 1);
      prog.add_equality(std::move(row), gamma[v]);
    }
    for (EdgeId e = 0; e < g.m(); ++e) {
      if (l.lo && l.open_low) prog.add_less_equal({{t, Rational(1)}, {e, Rational(-1)}}, -*l.lo);
      if (l.hi && l.open_high) prog.add_less_equal({{e, Rational(1)}, {t, Rational(1)}}, *l.hi);
    }
    if (fixed_margin) prog.add_equality({{t, Rational(1)}}, *fixed_margin);
    return std::pair{prog, t};
  };
  if (open) {
    auto [prog, t] = build(std::nullopt);
    auto res = prog.maximize({{t, Rational(1)}});
    if (res.status != lp::Status::Optimal || res.objective <= 0) return out;
    margin = res.objective / 2;
  }
  auto [prog, t] = build(margin);
  auto first = prog.feasible();
  if (first.status != lp::Status::Optimal) return out;
  FlowAssignment x(first.values.begin(), first.values.begin() + g.m());
  if (puncture) {
    for (EdgeId e = 0; e < g.m(); ++e) {
      if (x[e] != 0) continue;
      lp::Terms obj{{e, Rational(1)}};
      std::optional<FlowAssignment> p;
      for (int dir = 0; dir < 2 && !p; ++dir) {
        auto r = dir == 0 ? prog.maximize(obj) : prog.minimize(obj);
        if (r.status == lp::Status::Unbounded) {
          // Unbounded in that direction: any improving feasible point works; fall back
          // to a bounded copy of the program.
          auto bounded = prog;
          bounded.add_less_equal({{e, Rational(dir == 0 ? -1 : 1)}}, Rational(-1));
          auto rr = bounded.feasible();
          if (rr.status == lp::Status::Optimal) p = FlowAssignment(rr.values.begin(), rr.values.begin() + g.m());
        } else if (r.status == lp::Status::Optimal && r.objective != 0) {
          p = FlowAssignment(r.values.begin(), r.values.begin() + g.m());
        }
      }
      if (!p) {
        out.forced_zero = e;
        return out;
      }
      // x <- (1 - s) x + s p with s = 1/2, 1/3, ... keeping existing nonzeros.
      for (long d = 2;; ++d) {
        Rational s(1, d);
        bool ok = true;
        FlowAssignment y(g.m());
        for (EdgeId f = 0; f < g.m() && ok; ++f) {
          y[f] = (1 - s) * x[f] + s * (*p)[f];
          if (x[f] != 0 && y[f] == 0) ok = false;
        }
        if (ok) {
          x = std::move(y);
          break;
        }
      }
    }
  }
  out.feasible = true;
  out.flow = std::move(x);
  LabelSet claimed = puncture ? LabelSet::punctured(l) : LabelSet::interval(l);
  auto bad = flow_violation(g, out.flow, gamma, claimed);
  if (!bad.empty()) throw ConstructionDefect("restricted_interval_flow: " + bad);
  return out;
}

/// 1-sum flow with values in {0, 1/k}: 1/k on a k-factor.
inline std::optional<FlowResult> kfactor_scaled_flow(const Graph& g, int k) {
  if (k < 1) throw PreconditionError("kfactor_scaled_flow: k must be at least 1");
  auto f = k_factor(g, k);
  if (!f) return std::nullopt;
  FlowAssignment w(g.m(), 0);
  for (EdgeId e : f->edges) w[e] = Rational(1, k);
  return detail::finalize(g, std::move(w), constant_gamma(g, 1), LabelSet::finite({Rational(0), Rational(1, k)}),
                          std::to_string(k) + "-factor scaled by 1/" + std::to_string(k));
}

/// Average of the unique 1-sum flows of edge-disjoint spanning trees, extended by 0.
inline std::optional<FlowResult> averaged_tree_flow(const Graph& g, const std::vector<std::vector<EdgeId>>& trees) {
  if (trees.empty()) throw PreconditionError("averaged_tree_flow: no trees given");
  std::vector<bool> used(g.m(), false);
  for (const auto& tr : trees) {
    if (static_cast<int>(tr.size()) != g.n() - 1)
      throw PreconditionError("averaged_tree_flow: a tree does not have n-1 edges");
    for (EdgeId e : tr) {
      if (e < 0 || e >= g.m()) throw PreconditionError("averaged_tree_flow: edge index out of range");
      if (used[e]) throw PreconditionError("averaged_tree_flow: trees are not edge-disjoint");
      used[e] = true;
    }
  }
  FlowAssignment avg(g.m(), 0);
  for (const auto& tr : trees) {
    auto sub = edge_subgraph(g, tr);
    if (!is_tree(sub.graph)) throw PreconditionError("averaged_tree_flow: edge set is not a spanning tree");
    auto w = tree_unique_flow(sub.graph, constant_gamma(sub.graph, 1));
    if (!w) return std::nullopt;
    for (EdgeId e = 0; e < sub.graph.m(); ++e) avg[sub.host_edge[e]] += (*w)[e];
  }
  const Rational count(static_cast<long>(trees.size()));
  for (auto& x : avg) x /= count;
  return detail::finalize(g, std::move(avg), constant_gamma(g, 1), LabelSet::interval(IntervalSpec::real_line()),
                          "average over " + std::to_string(trees.size()) + " edge-disjoint spanning trees");
}

struct GeneralRangeReport {
  FlowResult result;
  bool bipartite = false;
  std::vector<Rational> values;  // sorted distinct
  Rational window_lo = 0, window_hi = 0;
  /// The window is only asserted for n >= 8 (bipartite) and n >= 6 (non-bipartite).
  bool window_applies = false;
  bool within_window = true;
};

/// 1-sum flow on a spanning tree (bipartite) or on a spanning tree plus an odd-cycle
/// edge (non-bipartite), zero elsewhere. nullopt for unbalanced bipartite graphs.
inline std::optional<GeneralRangeReport> general_range_flow(const Graph& g) {
  require_connected(g, "general_range_flow");
  GeneralRangeReport rep;
  auto parts = bipartition(g);
  FlowAssignment w;
  const Rational n(g.n());
  if (parts) {
    if (!parts->balanced()) return std::nullopt;
    rep.bipartite = true;
    auto tree = spanning_tree(g);
    auto sub = edge_subgraph(g, tree);
    auto tw = tree_unique_flow(sub.graph, constant_gamma(sub.graph, 1));
    if (!tw) throw ConstructionDefect("general_range_flow: balanced spanning tree without a 1-sum flow");
    w.assign(g.m(), 0);
    for (EdgeId e = 0; e < sub.graph.m(); ++e) w[sub.host_edge[e]] = (*tw)[e];
    rep.window_lo = 2 - n / 2;
    rep.window_hi = n / 2 - 2;
    rep.window_applies = g.n() >= 8;
  } else {
    w = solve_halfinteger(g, constant_gamma(g, 1));
    rep.window_lo = 5 - n;
    rep.window_hi = n - 5;
    rep.window_applies = g.n() >= 6;
  }
  rep.values = w;
  std::sort(rep.values.begin(), rep.values.end());
  rep.values.erase(std::unique(rep.values.begin(), rep.values.end()), rep.values.end());
  for (const auto& x : rep.values)
    if (x < rep.window_lo || x > rep.window_hi) rep.within_window = false;
  rep.result = detail::finalize(g, std::move(w), constant_gamma(g, 1), LabelSet::interval(IntervalSpec::real_line()),
                                parts ? "unique flow of a spanning tree" : "spanning tree plus one odd-cycle edge");
  return rep;
}

}  // namespace lflow

#endif  // LFLOW_SPECIAL_FLOWS_HPP
