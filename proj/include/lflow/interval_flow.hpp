#ifndef LFLOW_INTERVAL_FLOW_HPP
#define LFLOW_INTERVAL_FLOW_HPP

// gamma-[a,b]-flows by exact linear programming, with Farkas certificates.

#include "lflow/errors.hpp"
#include "lflow/gamma_flow.hpp"
#include "lflow/graph.hpp"
#include "lflow/labels.hpp"
#include "lflow/rational.hpp"
#include "lflow/simplex.hpp"

#include <optional>
#include <vector>

namespace lflow {

/// Witness that no gamma-[a,b]-flow exists: w >= 0, A^T z <= w and
/// (gamma - a d)^T z > (b - a) 1^T w.
struct FarkasCertificate {
  std::vector<Rational> z;  // per vertex
  std::vector<Rational> w;  // per edge
};

struct IntervalFlowResult {
  bool feasible = false;
  FlowAssignment flow;           // when feasible
  FarkasCertificate certificate; // when infeasible
};

namespace detail {

inline void require_lower_bounded_closed(const IntervalSpec& l, const char* what) {
  validate(l);
  if (!l.is_closed()) throw PreconditionError(std::string(what) + ": interval must be closed");
  if (!l.lo) throw PreconditionError(std::string(what) + ": lower bound must be finite");
}

/// Variables omega_e with the interval's bounds, one equality row per vertex.
inline lp::LinearProgram flow_program(const Graph& g, const GammaVector& gamma, const IntervalSpec& l) {
  lp::LinearProgram prog;
  for (EdgeId e = 0; e < g.m(); ++e) prog.add_variable({l.lo, l.hi});
  for (Vertex v = 0; v < g.n(); ++v) {
    lp::Terms row;
    for (const auto& inc : g.incident(v)) row.emplace_back(inc.edge, 1);
    prog.add_equality(std::move(row), gamma[v]);
  }
  return prog;
}

/// (A^T z)_e = z_u + z_v.
inline std::vector<Rational> transpose_apply(const Graph& g, const std::vector<Rational>& z) {
  std::vector<Rational> out(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) out[e] = z[g.edge(e).u] + z[g.edge(e).v];
  return out;
}

}  // namespace detail

/// w_e(z) = max(0, (A^T z)_e): the smallest w compatible with a given z.
inline std::vector<Rational> minimal_w(const Graph& g, const std::vector<Rational>& z) {
  auto atz = detail::transpose_apply(g, z);
  for (auto& x : atz)
    if (x < 0) x = 0;
  return atz;
}

/// Decides a gamma-[a,b]-flow (b may be infinite). The simplex works on the shifted
/// system A w' = gamma - a d, 0 <= w' <= b - a; phase-1 duals give z.
inline IntervalFlowResult interval_flow(const Graph& g, const GammaVector& gamma, const IntervalSpec& l) {
  require_gamma_size(g, gamma, "interval_flow");
  detail::require_lower_bounded_closed(l, "interval_flow");
  require_connected(g, "interval_flow");
  IntervalFlowResult out;
  auto res = detail::flow_program(g, gamma, l).feasible();
  if (res.status == lp::Status::Optimal) {
    out.feasible = true;
    out.flow = std::move(res.values);
    if (!has_vertex_values(g, out.flow, gamma)) throw ConstructionDefect("interval_flow: LP solution misses gamma");
    return out;
  }
  out.certificate.z = std::move(res.farkas);
  out.certificate.w = minimal_w(g, out.certificate.z);
  return out;
}

/// Checks the three certificate conditions exactly.
inline bool verify_farkas(const Graph& g, const GammaVector& gamma, const IntervalSpec& l,
                          const FarkasCertificate& cert) {
  require_gamma_size(g, gamma, "verify_farkas");
  detail::require_lower_bounded_closed(l, "verify_farkas");
  if (static_cast<int>(cert.z.size()) != g.n() || static_cast<int>(cert.w.size()) != g.m())
    throw PreconditionError("verify_farkas: certificate dimensions do not match the graph");
  for (const auto& x : cert.w)
    if (x < 0) return false;
  auto atz = detail::transpose_apply(g, cert.z);
  for (EdgeId e = 0; e < g.m(); ++e)
    if (atz[e] > cert.w[e]) return false;
  Rational lhs = 0;
  for (Vertex v = 0; v < g.n(); ++v) lhs += (gamma[v] - *l.lo * g.degree(v)) * cert.z[v];
  if (!l.hi) {
    // (b - a) is infinite: only w = 0 gives a finite right-hand side.
    for (const auto& x : cert.w)
      if (x != 0) return false;
    return lhs > 0;
  }
  Rational total_w = 0;
  for (const auto& x : cert.w) total_w += x;
  return lhs > (*l.hi - *l.lo) * total_w;
}

struct NonnegativeFlowResult {
  bool feasible = false;
  FlowAssignment flow;
  /// A^T z >= 0 and gamma^T z < 0 when infeasible.
  std::vector<Rational> z;
};

/// Nonnegative gamma-flow. gamma = 0 is answered with the zero flow.
inline NonnegativeFlowResult nonnegative_flow(const Graph& g, const GammaVector& gamma) {
  require_gamma_size(g, gamma, "nonnegative_flow");
  NonnegativeFlowResult out;
  bool zero = std::all_of(gamma.begin(), gamma.end(), [](const Rational& x) { return x == 0; });
  if (zero) {
    out.feasible = true;
    out.flow.assign(g.m(), 0);
    return out;
  }
  auto res = detail::flow_program(g, gamma, IntervalSpec::at_least(0)).feasible();
  if (res.status == lp::Status::Optimal) {
    out.feasible = true;
    out.flow = std::move(res.values);
    return out;
  }
  out.z = std::move(res.farkas);
  for (auto& x : out.z) x = -x;
  return out;
}

inline bool verify_nonnegative_certificate(const Graph& g, const GammaVector& gamma, const std::vector<Rational>& z) {
  if (static_cast<int>(z.size()) != g.n()) return false;
  for (const auto& x : detail::transpose_apply(g, z))
    if (x < 0) return false;
  Rational dot = 0;
  for (Vertex v = 0; v < g.n(); ++v) dot += gamma[v] * z[v];
  return dot < 0;
}

/// min and max of a linear functional; nullopt marks an infinite end.
struct ValueRange {
  std::optional<Rational> min;
  std::optional<Rational> max;
  [[nodiscard]] bool forced() const { return min && max && *min == *max; }
};

/// Range of sum_k weights_k omega_{e_k} over {A omega = gamma, omega in L^E}, L closed.
inline ValueRange functional_value_range(const Graph& g, const GammaVector& gamma, const lp::Terms& weights,
                                         const IntervalSpec& l) {
  require_gamma_size(g, gamma, "functional_value_range");
  validate(l);
  if (!l.is_closed()) throw PreconditionError("functional_value_range: interval must be closed");
  for (const auto& [e, c] : weights)
    if (e < 0 || e >= g.m()) throw PreconditionError("functional_value_range: edge index out of range");
  auto prog = detail::flow_program(g, gamma, l);
  ValueRange r;
  auto lo = prog.minimize(weights);
  if (lo.status == lp::Status::Infeasible) throw PreconditionError("value range requested on an infeasible instance");
  if (lo.status == lp::Status::Optimal) r.min = lo.objective;
  auto hi = prog.maximize(weights);
  if (hi.status == lp::Status::Optimal) r.max = hi.objective;
  return r;
}

inline ValueRange edge_value_range(const Graph& g, const GammaVector& gamma, EdgeId e, const IntervalSpec& l) {
  return functional_value_range(g, gamma, {{e, Rational(1)}}, l);
}

}  // namespace lflow

#endif  // LFLOW_INTERVAL_FLOW_HPP
