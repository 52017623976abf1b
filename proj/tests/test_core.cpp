// Graph primitives, exact linear algebra, gamma-flows, the simplex and interval flows.

#include "lflow/lflow.hpp"
#include "support/corpus.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace lflow;

namespace {

std::vector<Rational> R(std::initializer_list<Rational> xs) { return xs; }

bool is_closed_walk(const Graph& g, const std::vector<EdgeId>& cyc) {
  std::vector<int> deg(g.n(), 0);
  for (EdgeId e : cyc) {
    ++deg[g.edge(e).u];
    ++deg[g.edge(e).v];
  }
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d == 0 || d == 2; });
}

const LabelSet kReals = LabelSet::interval(IntervalSpec::real_line());

}  // namespace

// ---------------------------------------------------------------- rational

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(to_string(Rational(-3, 4)), "-3/4");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_EQ(floor_of(Rational(-1, 2)), -1);
}

// ---------------------------------------------------------------- graph

TEST(Graph, RejectsLoopsAndDuplicates) {
  EXPECT_THROW(Graph(2, {{0, 0}}), PreconditionError);
  EXPECT_THROW(Graph(2, {{0, 1}, {1, 0}}), PreconditionError);
  EXPECT_THROW(Graph(2, {{0, 2}}), PreconditionError);
}

TEST(Graph, Bipartition) {
  EXPECT_FALSE(bipartition(gen::cycle(3)));
  auto c4 = bipartition(gen::cycle(4));
  ASSERT_TRUE(c4);
  EXPECT_EQ(c4->side[0], c4->side[2]);
  EXPECT_NE(c4->side[0], c4->side[1]);
  auto k23 = bipartition(gen::complete_bipartite(2, 3));
  ASSERT_TRUE(k23);
  EXPECT_EQ(std::min(k23->size1, k23->size2), 2);
  EXPECT_EQ(std::max(k23->size1, k23->size2), 3);
}

TEST(Graph, OddCycle) {
  EXPECT_FALSE(find_odd_cycle(gen::cycle(4)));
  auto c3 = find_odd_cycle(gen::cycle(3));
  ASSERT_TRUE(c3);
  EXPECT_EQ(c3->size(), 3u);
  Graph pendant(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}});
  auto cyc = find_odd_cycle(pendant);
  ASSERT_TRUE(cyc);
  EXPECT_EQ(cyc->size(), 5u);
  EXPECT_TRUE(is_closed_walk(pendant, *cyc));
  for (EdgeId e : *cyc) EXPECT_NE(e, 5);
}

TEST(Graph, Bridges) {
  auto tree = gen::path(5);
  EXPECT_EQ(bridges(tree).size(), 4u);
  EXPECT_TRUE(bridges(gen::cycle(6)).empty());
  Graph two(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  EXPECT_EQ(bridges(two), std::vector<EdgeId>{6});
}

TEST(Graph, BridgesMatchBruteForce) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto g = corpus::random_connected(8, 0.2, rng);
    std::set<EdgeId> brute;
    for (EdgeId b = 0; b < g.m(); ++b) {
      std::vector<EdgeId> rest;
      for (EdgeId e = 0; e < g.m(); ++e)
        if (e != b) rest.push_back(e);
      if (!is_connected(edge_subgraph(g, rest).graph)) brute.insert(b);
    }
    auto fast = bridges(g);
    EXPECT_EQ(std::set<EdgeId>(fast.begin(), fast.end()), brute);
  }
}

TEST(Graph, SpanningTree) {
  auto c4 = spanning_tree(gen::cycle(4));
  EXPECT_EQ(c4.size(), 3u);
  EXPECT_TRUE(is_tree(edge_subgraph(gen::cycle(4), c4).graph));
  auto k4 = gen::complete(4);
  EXPECT_TRUE(is_tree(edge_subgraph(k4, spanning_tree(k4)).graph));
  auto t = gen::path(5);
  EXPECT_EQ(spanning_tree(t).size(), 4u);
}

TEST(Graph, EulerCircuit) {
  for (const auto& g : {gen::cycle(4), Graph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}), gen::complete(5)}) {
    auto c = euler_circuit(g);
    ASSERT_EQ(static_cast<int>(c.size()), g.m());
    EXPECT_EQ(std::set<EdgeId>(c.begin(), c.end()).size(), c.size());
    // consecutive edges share a vertex, walk closes
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto a = g.edge(c[i]), b = g.edge(c[(i + 1) % c.size()]);
      EXPECT_TRUE(a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v);
    }
  }
  EXPECT_THROW(euler_circuit(gen::path(3)), PreconditionError);
}

TEST(Graph, DoubleCover) {
  auto k2 = bipartite_double_cover(gen::complete(2));
  EXPECT_EQ(k2.cover.n(), 4);
  EXPECT_EQ(k2.cover.m(), 2);
  EXPECT_EQ(component_count(k2.cover), 2);
  auto c5 = bipartite_double_cover(gen::cycle(5)).cover;
  EXPECT_EQ(c5.n(), 10);
  EXPECT_EQ(regular_degree(c5), 2);
  EXPECT_TRUE(is_connected(c5));
  auto c4 = bipartite_double_cover(gen::cycle(4)).cover;
  EXPECT_EQ(component_count(c4), 2);
  EXPECT_EQ(regular_degree(c4), 2);
}

TEST(Graph, IndependenceNumber) {
  EXPECT_EQ(independence_number(gen::complete(5)), 1);
  EXPECT_EQ(independence_number(gen::cycle(5)), 2);
  EXPECT_EQ(independence_number(gen::complete_bipartite(2, 3)), 3);
  EXPECT_EQ(independence_number(gen::petersen()), 4);
}

TEST(Generators, Shapes) {
  EXPECT_EQ(gen::petersen().m(), 15);
  EXPECT_EQ(regular_degree(gen::petersen()), 3);
  EXPECT_EQ(regular_degree(gen::circulant(10, {1, 2, 3, 5})), 7);
  EXPECT_EQ(regular_degree(gen::circulant(8, {1, 2, 4})), 5);
  EXPECT_THROW(gen::cycle(2), PreconditionError);
  auto ex = gen::example_joined_bicliques(1, 1);
  EXPECT_EQ(ex.graph.n(), 8);
  EXPECT_TRUE(is_tree(ex.graph));
  auto ex2 = gen::example_joined_bicliques(2, 1);
  EXPECT_EQ(ex2.graph.n(), 2 * (2 + 5));
  EXPECT_EQ(ex2.joining_edges.size(), 2u);
  EXPECT_TRUE(bridges(ex2.graph).empty());
}

TEST(Corpus, IsomorphismClassCounts) {
  // known counts of connected graphs on n vertices
  const int expected[] = {0, 1, 1, 2, 6, 21, 112};
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(static_cast<int>(corpus::connected_graphs(n).size()), expected[n]) << n;
  const int trees[] = {0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(static_cast<int>(corpus::all_trees(n).size()), trees[n]) << n;
}

// ---------------------------------------------------------------- linear algebra

TEST(Linalg, IncidenceAndRank) {
  auto a = linalg::incidence_matrix(gen::cycle(4));
  EXPECT_EQ(linalg::rank(linalg::to_rational(a)), 3);
  EXPECT_EQ(linalg::rank(linalg::to_rational(linalg::incidence_matrix(gen::cycle(5)))), 5);
}

TEST(Linalg, OddCycleDeterminant) {
  for (int l : {3, 5, 7}) EXPECT_EQ(odd_cycle_incidence_det(l), 2);
  EXPECT_EQ(linalg::bareiss_determinant(linalg::incidence_matrix(gen::cycle(4))), 0);
}

TEST(Linalg, Nullspace) {
  EXPECT_TRUE(nullspace(gen::path(5)).empty());
  EXPECT_TRUE(nullspace(gen::cycle(3)).empty());
  auto c4 = nullspace(gen::cycle(4));
  ASSERT_EQ(c4.size(), 1u);
  for (int e = 0; e < 4; ++e) EXPECT_EQ(abs(c4[0][e]), abs(c4[0][0]));
  EXPECT_TRUE(has_vertex_values(gen::cycle(4), c4[0], constant_gamma(gen::cycle(4), 0)));
  // m - n + (bipartite components) zero-sum flows
  auto k4 = gen::complete(4);
  EXPECT_EQ(nullspace(k4).size(), 2u);
  auto k33 = gen::complete_bipartite(3, 3);
  EXPECT_EQ(nullspace(k33).size(), 4u);
}

// ---------------------------------------------------------------- gamma flows

TEST(GammaFlow, VertexValues) {
  EXPECT_EQ(vertex_values(gen::complete(2), R({1})), R({1, 1}));
  EXPECT_EQ(vertex_values(gen::cycle(4), R({1, 0, 1, 0})), R({1, 1, 1, 1}));
  auto half = Rational(1, 2);
  EXPECT_EQ(vertex_values(gen::cycle(3), R({half, half, half})), R({1, 1, 1}));
}

TEST(GammaFlow, Existence) {
  auto k12 = gamma_flow_exists(gen::star(2), constant_gamma(gen::star(2), 1));
  EXPECT_FALSE(k12.feasible);
  EXPECT_EQ(abs(k12.imbalance), 1);
  EXPECT_TRUE(gamma_flow_exists(gen::cycle(5), constant_gamma(gen::cycle(5), 1)).feasible);
  EXPECT_TRUE(gamma_flow_exists(gen::cycle(4), constant_gamma(gen::cycle(4), 1)).feasible);
}

TEST(GammaFlow, Trees) {
  auto star = gen::star(3);
  GammaVector g(4, 1);
  g[0] = 3;
  auto w = solve_gamma_flow(star, g);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, R({1, 1, 1}));
  auto p4 = gen::path(4);
  EXPECT_EQ(*solve_gamma_flow(p4, constant_gamma(p4, 1)), R({1, 0, 1}));
  auto k2 = gen::complete(2);
  EXPECT_EQ(*solve_gamma_flow(k2, GammaVector{5, 5}), R({5}));
}

TEST(GammaFlow, BipartiteIntegral) {
  auto c4 = gen::cycle(4);
  auto w = solve_integer_bipartite(c4, constant_gamma(c4, 1));
  EXPECT_TRUE(has_vertex_values(c4, w, constant_gamma(c4, 1)));
  EXPECT_EQ(std::count(w.begin(), w.end(), Rational(0)), 2);
  auto c6 = gen::cycle(6);
  auto w6 = solve_integer_bipartite(c6, constant_gamma(c6, 2));
  EXPECT_TRUE(has_vertex_values(c6, w6, constant_gamma(c6, 2)));
  for (const auto& x : w6) EXPECT_TRUE(is_integral(x));
}

TEST(GammaFlow, HalfInteger) {
  const auto half = Rational(1, 2);
  EXPECT_EQ(*solve_gamma_flow(gen::cycle(3), constant_gamma(gen::cycle(3), 1)), R({half, half, half}));
  auto c5 = solve_gamma_flow(gen::cycle(5), constant_gamma(gen::cycle(5), 1));
  for (const auto& x : *c5) EXPECT_EQ(x, half);
  Graph paw(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}});
  auto w = solve_gamma_flow(paw, constant_gamma(paw, 1));
  ASSERT_TRUE(w);
  EXPECT_EQ((*w)[3], 1);
  EXPECT_TRUE(has_vertex_values(paw, *w, constant_gamma(paw, 1)));
  for (const auto& x : *w) EXPECT_TRUE(is_integral(2 * x));
}

TEST(GammaFlow, MatchesDenseSolverOnRandomGraphs) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> pick(-3, 3);
  for (int i = 0; i < 300; ++i) {
    auto g = corpus::random_connected(7, 0.3, rng);
    GammaVector gamma(g.n());
    for (auto& x : gamma) x = pick(rng);
    auto w = solve_gamma_flow(g, gamma);
    auto dense = linalg::dense_solve(linalg::to_rational(linalg::incidence_matrix(g)), gamma);
    EXPECT_EQ(w.has_value(), dense.has_value());
    EXPECT_EQ(w.has_value(), gamma_flow_exists(g, gamma).feasible);
    if (w) EXPECT_TRUE(has_vertex_values(g, *w, gamma));
  }
}

// ---------------------------------------------------------------- simplex

TEST(Simplex, SmallPrograms) {
  lp::LinearProgram p;
  int x = p.add_variable({Rational(0), std::nullopt});
  int y = p.add_variable({Rational(0), std::nullopt});
  p.add_less_equal({{x, 1}, {y, 2}}, 4);
  p.add_less_equal({{x, 3}, {y, 1}}, 6);
  auto r = p.maximize({{x, 1}, {y, 1}});
  ASSERT_EQ(r.status, lp::Status::Optimal);
  EXPECT_EQ(r.objective, Rational(14, 5));

  lp::LinearProgram q;
  int a = q.add_variable({Rational(0), Rational(1)});
  q.add_equality({{a, 1}}, 2);
  EXPECT_EQ(q.feasible().status, lp::Status::Infeasible);

  lp::LinearProgram u;
  int b = u.add_variable({std::nullopt, std::nullopt});
  EXPECT_EQ(u.maximize({{b, 1}}).status, lp::Status::Unbounded);
}

// ---------------------------------------------------------------- interval flows

TEST(IntervalFlow, Examples) {
  auto k2 = gen::complete(2);
  auto c4 = gen::cycle(4);
  auto r = interval_flow(k2, constant_gamma(k2, 1), IntervalSpec::closed(2, 3));
  EXPECT_FALSE(r.feasible);
  EXPECT_TRUE(verify_farkas(k2, constant_gamma(k2, 1), IntervalSpec::closed(2, 3), r.certificate));
  auto c = interval_flow(c4, constant_gamma(c4, 1), IntervalSpec::closed(0, 1));
  ASSERT_TRUE(c.feasible);
  EXPECT_TRUE(flow_violation(c4, c.flow, constant_gamma(c4, 1), LabelSet::interval(IntervalSpec::closed(0, 1))).empty());
  auto ex = gen::example_joined_bicliques(1, 1).graph;
  auto l = IntervalSpec::closed(-1, 100);
  auto e = interval_flow(ex, constant_gamma(ex, 1), l);
  EXPECT_FALSE(e.feasible);
  EXPECT_TRUE(verify_farkas(ex, constant_gamma(ex, 1), l, e.certificate));
}

TEST(IntervalFlow, CertificateTampering) {
  auto k2 = gen::complete(2);
  auto gamma = constant_gamma(k2, 1);
  auto l = IntervalSpec::closed(2, 3);
  auto r = interval_flow(k2, gamma, l);
  ASSERT_FALSE(r.feasible);
  EXPECT_FALSE(verify_farkas(k2, gamma, l, {{0, 0}, {0}}));
  auto bad = r.certificate;
  bool changed = false;
  for (auto& w : bad.w)
    if (w != 0) w = -w, changed = true;
  if (changed) EXPECT_FALSE(verify_farkas(k2, gamma, l, bad));
  bad = r.certificate;
  bad.w.assign(bad.w.size(), Rational(-1));
  EXPECT_FALSE(verify_farkas(k2, gamma, l, bad));
}

TEST(IntervalFlow, Nonnegative) {
  auto k2 = gen::complete(2);
  auto r = nonnegative_flow(k2, GammaVector{1, 1});
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.flow, R({1}));
  auto p3 = gen::path(3);
  GammaVector g{0, 1, 0};
  auto n = nonnegative_flow(p3, g);
  EXPECT_FALSE(n.feasible);
  EXPECT_TRUE(verify_nonnegative_certificate(p3, g, n.z));
  auto c3 = nonnegative_flow(gen::cycle(3), constant_gamma(gen::cycle(3), 1));
  ASSERT_TRUE(c3.feasible);
  for (const auto& x : c3.flow) EXPECT_EQ(x, Rational(1, 2));
  EXPECT_TRUE(nonnegative_flow(gen::cycle(3), constant_gamma(gen::cycle(3), 0)).feasible);
}

TEST(IntervalFlow, ValueRange) {
  auto k2 = gen::complete(2);
  auto r = edge_value_range(k2, constant_gamma(k2, 1), 0, IntervalSpec::real_line());
  EXPECT_TRUE(r.forced());
  EXPECT_EQ(*r.min, 1);
  auto c4 = gen::cycle(4);
  auto c = edge_value_range(c4, constant_gamma(c4, 1), 0, IntervalSpec::closed(0, 1));
  EXPECT_EQ(*c.min, 0);
  EXPECT_EQ(*c.max, 1);
  auto free = edge_value_range(c4, constant_gamma(c4, 1), 0, IntervalSpec::real_line());
  EXPECT_FALSE(free.min);
  EXPECT_FALSE(free.max);

  auto ex = gen::example_joined_bicliques(2, 1);
  lp::Terms joining;
  for (EdgeId e : ex.joining_edges) joining.emplace_back(e, 1);
  auto sum = functional_value_range(ex.graph, constant_gamma(ex.graph, 1), joining, IntervalSpec::real_line());
  ASSERT_TRUE(sum.forced());
  EXPECT_EQ(*sum.min, -3);
  for (EdgeId e : ex.joining_edges) {
    auto one = edge_value_range(ex.graph, constant_gamma(ex.graph, 1), e, IntervalSpec::real_line());
    EXPECT_FALSE(one.forced());
  }
  EXPECT_THROW(edge_value_range(gen::star(2), constant_gamma(gen::star(2), 1), 0, IntervalSpec::real_line()),
               PreconditionError);
}

TEST(IntervalFlow, CertificatesOnRandomInstances) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> end(-4, 4);
  for (int i = 0; i < 300; ++i) {
    auto g = corpus::random_connected(6, 0.35, rng);
    int a = end(rng), b = end(rng);
    if (a > b) std::swap(a, b);
    auto l = IntervalSpec::closed(Rational(a, 2), Rational(b, 2));
    auto gamma = constant_gamma(g, 1);
    auto r = interval_flow(g, gamma, l);
    if (r.feasible)
      EXPECT_TRUE(flow_violation(g, r.flow, gamma, LabelSet::interval(l)).empty());
    else
      EXPECT_TRUE(verify_farkas(g, gamma, l, r.certificate));
    EXPECT_EQ(r.feasible, oracle::network_feasibility_probe(g, gamma, l));
  }
}

TEST(Labels, Membership) {
  auto p = LabelSet::punctured(IntervalSpec::closed(-1, 2));
  EXPECT_FALSE(p.contains(0));
  EXPECT_TRUE(p.contains(Rational(-1, 2)));
  EXPECT_FALSE(p.contains(3));
  EXPECT_FALSE(LabelSet::nonzero_integers().contains(Rational(1, 2)));
  IntervalSpec open{Rational(0), Rational(1), true, false};
  EXPECT_FALSE(open.contains(0));
  EXPECT_TRUE(open.contains(1));
  EXPECT_EQ(open.to_string(), "(0,1]");
  EXPECT_THROW(IntervalSpec::closed(2, 1), PreconditionError);
}
