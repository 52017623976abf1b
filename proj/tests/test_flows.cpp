// Trees, unicyclic graphs, matchings and factors, the special constructions and oracles.

#include "lflow/lflow.hpp"
#include "support/corpus.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace lflow;

namespace {

std::vector<Rational> R(std::initializer_list<Rational> xs) { return xs; }

std::vector<Rational> distinct(FlowAssignment w) {
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

const LabelSet kReals = LabelSet::interval(IntervalSpec::real_line());

void expect_partition(const Graph& g, const FactorDecomposition& d, int degree) {
  std::vector<int> used(g.m(), 0);
  for (const auto& f : d) {
    for (EdgeId e : f.edges) ++used[e];
    for (int x : f.degree) EXPECT_EQ(x, degree);
  }
  for (int u : used) EXPECT_EQ(u, 1);
}

bool components_regular(const Graph& g, const Factor& f) {
  auto sub = edge_subgraph(g, f.edges);
  int count = 0;
  auto label = component_labels(sub.graph, &count);
  std::vector<std::set<int>> degs(count);
  for (Vertex v = 0; v < g.n(); ++v) degs[label[v]].insert(sub.graph.degree(v));
  return std::all_of(degs.begin(), degs.end(), [](const auto& s) { return s.size() == 1; });
}

}  // namespace

// ---------------------------------------------------------------- trees

TEST(Pruning, Levels) {
  auto k2 = prune(gen::complete(2));
  EXPECT_EQ(k2.k(), 1);
  auto p6 = prune(gen::path(6));
  EXPECT_EQ(p6.sizes(), (std::vector<int>{2, 2, 2}));
  EXPECT_EQ(p6.residual, PruningTrace::Residual::K2);
  auto s = prune(gen::star(4));
  EXPECT_EQ(s.k(), 1);
  EXPECT_EQ(s.sizes().front(), 4);
}

TEST(TreeFlow, UniqueFlow) {
  auto p4 = gen::path(4);
  EXPECT_EQ(*tree_unique_flow(p4, constant_gamma(p4, 1)), R({1, 0, 1}));
  auto t6 = gen::tree_min(6);
  auto w = *tree_unique_flow(t6, constant_gamma(t6, 1));
  EXPECT_EQ(distinct(w), R({-1, 1}));
  EXPECT_EQ(std::count(w.begin(), w.end(), Rational(1)), 4);
  EXPECT_FALSE(tree_unique_flow(gen::star(2), constant_gamma(gen::star(2), 1)));
}

TEST(TreeFlow, MatchesExactSolver) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto t = corpus::random_tree(10, rng);
    auto a = tree_unique_flow(t, constant_gamma(t, 1));
    auto b = solve_gamma_flow(t, constant_gamma(t, 1));
    EXPECT_EQ(a.has_value(), b.has_value());
    if (a && b) EXPECT_EQ(*a, *b);
  }
}

TEST(TreeFlow, RangeReport) {
  auto p8 = tree_range_report(gen::path(8));
  EXPECT_EQ(p8.achieved_values, R({0, 1}));
  EXPECT_TRUE(p8.within_predicted);
  auto tmax = tree_range_report(gen::tree_max(8));
  EXPECT_EQ(tmax.achieved_values, R({-1, 1, 2}));
  auto topt = tree_range_report(gen::tree_opt(10));
  EXPECT_EQ(topt.achieved_values, R({-2, -1, 1, 2}));
  EXPECT_THROW(tree_range_report(gen::star(4)), PreconditionError);
  EXPECT_THROW(tree_range_report(gen::cycle(4)), StructuralError);
}

TEST(TreeFlow, ExtremalTrees) {
  auto tmin = make_extremal_tree(ExtremalTree::Tmin, 6);
  EXPECT_EQ(leaf_count(tmin), 4);
  EXPECT_EQ(tmin.n(), 6);
  auto tmax = make_extremal_tree(ExtremalTree::Tmax, 8);
  EXPECT_EQ(leaf_count(tmax), 4);
  auto s1 = make_extremal_tree(ExtremalTree::S1, 8);
  EXPECT_TRUE(corpus::balanced_bipartite(s1));
  EXPECT_EQ(leaf_count(s1), 4);
  EXPECT_EQ(distinct(*tree_unique_flow(s1, constant_gamma(s1, 1))), R({-1, 0, 1}));
  for (auto kind : {ExtremalTree::Tmin, ExtremalTree::Tmax, ExtremalTree::Topt, ExtremalTree::S1, ExtremalTree::S2})
    for (int n : {8, 10}) {
      auto t = make_extremal_tree(kind, n);
      EXPECT_TRUE(is_tree(t));
      EXPECT_TRUE(corpus::balanced_bipartite(t));
      EXPECT_EQ(distinct(*tree_unique_flow(t, constant_gamma(t, 1))), extremal_tree_values(kind, n));
    }
  EXPECT_THROW(make_extremal_tree(ExtremalTree::Topt, 7), PreconditionError);
}

// ---------------------------------------------------------------- unicyclic

TEST(Unicyclic, Cases) {
  auto c6 = unicyclic_flow(gen::cycle(6));
  ASSERT_TRUE(c6);
  EXPECT_EQ(c6->kind, UnicyclicCase::Cycle);
  EXPECT_EQ(distinct(c6->flow), R({Rational(1, 2)}));

  Graph tri_tail(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}});
  auto t = unicyclic_flow(tri_tail);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->kind, UnicyclicCase::OneLeaf);
  EXPECT_TRUE(flow_violation(tri_tail, t->flow, constant_gamma(tri_tail, 1), LabelSet::interval(IntervalSpec::closed(0, 1)))
                  .empty());

  auto ext = gen::unicyclic_triangle_star(3);
  auto e = unicyclic_flow(ext);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->kind, UnicyclicCase::NonBipartite);
  EXPECT_EQ(e->leaves, 3);
  EXPECT_TRUE(e->within_interval);
  EXPECT_TRUE(flow_violation(ext, e->flow, constant_gamma(ext, 1), LabelSet::interval(IntervalSpec::closed(-2, 3))).empty());
  // the interval is attained: some edge reaches an endpoint over the whole feasible set
  bool attained = false;
  for (EdgeId x = 0; x < ext.m(); ++x) {
    auto r = edge_value_range(ext, constant_gamma(ext, 1), x, IntervalSpec::closed(-2, 3));
    attained = attained || *r.min == -2 || *r.max == 3;
  }
  EXPECT_TRUE(attained);

  auto sq = gen::unicyclic_square_stars(4);
  auto b = unicyclic_flow(sq);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->kind, UnicyclicCase::Bipartite);
  EXPECT_TRUE(b->within_interval);

  Graph unbalanced(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}});
  EXPECT_FALSE(unicyclic_flow(unbalanced));
  EXPECT_THROW(unicyclic_flow(gen::path(4)), StructuralError);
}

TEST(Unicyclic, RandomNonBipartiteWithinInterval) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto g = corpus::random_unicyclic(5, 6, rng);
    auto r = unicyclic_flow(g);
    ASSERT_TRUE(r);
    EXPECT_TRUE(flow_violation(g, r->flow, constant_gamma(g, 1), kReals).empty());
    EXPECT_TRUE(r->within_interval);
  }
}

// ---------------------------------------------------------------- matching and factors

TEST(Matching, Sizes) {
  EXPECT_EQ(max_matching(gen::cycle(4)).size(), 2u);
  EXPECT_EQ(max_matching(gen::petersen()).size(), 5u);
  EXPECT_EQ(max_matching(gen::star(3)).size(), 1u);
  EXPECT_EQ(max_matching(gen::complete(7)).size(), 3u);
}

TEST(Matching, AgreesWithBruteForce) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    auto g = corpus::random_connected(8, 0.25, rng);
    auto m = max_matching(g);
    EXPECT_TRUE(is_matching(g, m));
    // brute force over edge subsets is too slow; compare with the matching count oracle
    auto pm = oracle::enumerate_perfect_matchings(g);
    EXPECT_EQ(!pm.empty(), static_cast<int>(m.size()) * 2 == g.n());
  }
}

TEST(Factors, PerfectMatching) {
  auto c6 = perfect_matching(gen::cycle(6));
  ASSERT_TRUE(c6);
  EXPECT_EQ(c6->size(), 3u);
  EXPECT_FALSE(perfect_matching(gen::cycle(5)));
  EXPECT_TRUE(perfect_matching(gen::complete_bipartite(3, 3)));
}

TEST(Factors, OneTwoFactor) {
  auto c5 = one_two_factor(gen::cycle(5));
  ASSERT_TRUE(c5);
  EXPECT_EQ(c5->factor.edges.size(), 5u);
  auto k4 = one_two_factor(gen::complete(4));
  ASSERT_TRUE(k4);
  for (int d : k4->factor.degree) EXPECT_TRUE(d == 1 || d == 2);
  EXPECT_FALSE(one_two_factor(gen::star(3)));
}

TEST(Factors, EdgeCoverage) {
  for (EdgeId e = 0; e < 6; ++e) EXPECT_TRUE(edge_in_some_factor(gen::cycle(6), e, FactorKind::PerfectMatching));
  EXPECT_FALSE(edge_in_some_factor(gen::path(4), 1, FactorKind::PerfectMatching));
  EXPECT_TRUE(edge_in_some_factor(gen::path(4), 0, FactorKind::PerfectMatching));
  for (EdgeId e = 0; e < 5; ++e) EXPECT_TRUE(edge_in_some_factor(gen::cycle(5), e, FactorKind::OneTwoFactor));
}

TEST(Factors, FFactor) {
  auto c4 = gen::cycle(4);
  auto two = f_factor(c4, {2, 2, 2, 2});
  ASSERT_TRUE(two);
  EXPECT_EQ(two->edges.size(), 4u);
  auto one = f_factor(c4, {1, 1, 1, 1});
  ASSERT_TRUE(one);
  EXPECT_EQ(one->edges.size(), 2u);
  auto k5 = k_factor(gen::complete(5), 2);
  ASSERT_TRUE(k5);
  for (int d : k5->degree) EXPECT_EQ(d, 2);
  EXPECT_FALSE(k_factor(gen::star(3), 1));
}

TEST(Factors, Factorizations) {
  auto c6 = one_factorization_bipartite(gen::cycle(6));
  EXPECT_EQ(c6.size(), 2u);
  expect_partition(gen::cycle(6), c6, 1);
  auto k33 = gen::complete_bipartite(3, 3);
  expect_partition(k33, one_factorization_bipartite(k33), 1);
  auto dc = bipartite_double_cover(gen::petersen()).cover;
  auto pf = one_factorization_bipartite(dc);
  EXPECT_EQ(pf.size(), 3u);
  expect_partition(dc, pf, 1);

  EXPECT_EQ(two_factorization(gen::cycle(5)).size(), 1u);
  auto k5 = two_factorization(gen::complete(5));
  EXPECT_EQ(k5.size(), 2u);
  expect_partition(gen::complete(5), k5, 2);
  auto k7 = two_factorization(gen::complete(7));
  EXPECT_EQ(k7.size(), 3u);
  expect_partition(gen::complete(7), k7, 2);
  EXPECT_THROW(two_factorization(gen::petersen()), PreconditionError);
}

TEST(Factors, RegularComponents) {
  for (const auto& [g, k] : std::vector<std::pair<Graph, int>>{
           {gen::complete(4), 2}, {gen::petersen(), 2}, {gen::complete(6), 3}, {gen::circulant(10, {1, 2, 3, 5}), 4}}) {
    auto f = regular_component_factor(g, k);
    ASSERT_TRUE(f);
    for (int d : f->degree) EXPECT_TRUE(d == k - 1 || d == k);
    EXPECT_TRUE(components_regular(g, *f));
    EXPECT_TRUE(has_regular_components(g, *f, k));
  }
}

// ---------------------------------------------------------------- special flows

TEST(SpecialFlows, ZeroHalfOne) {
  auto c6 = one_zero_one_flow(gen::cycle(6));
  ASSERT_TRUE(c6);
  EXPECT_EQ(distinct(c6->flow), R({0, 1}));
  auto c5 = one_zero_one_flow(gen::cycle(5));
  ASSERT_TRUE(c5);
  EXPECT_EQ(distinct(c5->flow), R({Rational(1, 2)}));
  EXPECT_FALSE(one_zero_one_flow(gen::star(3)));
}

TEST(SpecialFlows, Positive) {
  auto c6 = one_positive_flow(gen::cycle(6));
  ASSERT_TRUE(c6.exists && c6.witness);
  EXPECT_EQ(distinct(c6.witness->flow), R({Rational(1, 2)}));
  auto p4 = one_positive_flow(gen::path(4));
  EXPECT_FALSE(p4.exists);
  EXPECT_EQ(p4.uncovered, 1);
  auto c5 = one_positive_flow(gen::cycle(5));
  ASSERT_TRUE(c5.exists && c5.witness);
  EXPECT_EQ(distinct(c5.witness->flow), R({Rational(1, 2)}));
}

TEST(SpecialFlows, PlusMinusOne) {
  auto k2 = pm1_flow_odd_regular(gen::complete(2));
  EXPECT_EQ(k2.flow, R({1}));
  for (const auto& g : {gen::complete(4), gen::petersen(), gen::circulant(12, {1, 3, 6})}) {
    auto r = pm1_flow_odd_regular(g);
    EXPECT_TRUE(flow_violation(g, r.flow, constant_gamma(g, 1), LabelSet::finite({-1, 0, 1})).empty());
  }
  auto k4 = oracle::enumerate_finite_flows(gen::complete(4), {-1, 0, 1}, 1);
  EXPECT_GE(k4.count, 1u);
  auto c6 = pm1_flow_mod4_regular(gen::cycle(6));
  EXPECT_EQ(distinct(c6.flow), R({0, 1}));
  auto circ = gen::circulant(8, {1, 2, 3});
  EXPECT_TRUE(flow_violation(circ, pm1_flow_mod4_regular(circ).flow, constant_gamma(circ, 1), LabelSet::finite({-1, 0, 1}))
                  .empty());
  auto k33pm = gen::circulant(6, {1, 3});  // 3-regular, not 2 mod 4 after doubling below
  EXPECT_THROW(pm1_flow_mod4_regular(k33pm), PreconditionError);
  auto four = gen::circulant(8, {1, 3});  // 4-regular bipartite
  EXPECT_THROW(pm1_flow_mod4_regular(four), PreconditionError);
  EXPECT_THROW(pm1_flow_odd_regular(gen::cycle(4)), PreconditionError);
}

TEST(SpecialFlows, ThreeFlows) {
  const auto three = LabelSet::finite({-2, -1, 1, 2});
  for (const auto& g : {gen::complete(6), gen::circulant(10, {1, 2, 3, 5}), gen::complete(8)}) {
    auto r = one_sum_3flow(g);
    EXPECT_TRUE(flow_violation(g, r.flow, constant_gamma(g, 1), three).empty());
  }
  auto comp = gen::circulant(10, {2, 3, 4});  // a 6-regular graph
  EXPECT_THROW(one_sum_3flow(comp), PreconditionError);

  auto k4 = zero_sum_3flow(gen::complete(4));
  EXPECT_EQ(std::count(k4.flow.begin(), k4.flow.end(), Rational(2)), 2);
  EXPECT_EQ(std::count(k4.flow.begin(), k4.flow.end(), Rational(-1)), 4);
  for (const auto& g : {gen::petersen(), gen::circulant(10, {1, 2, 3, 5}), gen::complete(10), gen::complete(12)}) {
    auto r = zero_sum_3flow(g);
    EXPECT_TRUE(flow_violation(g, r.flow, constant_gamma(g, 0), three).empty());
  }
  EXPECT_THROW(zero_sum_3flow(gen::complete(6)), ConjectureCase);
  Graph bridged(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  EXPECT_ANY_THROW(zero_sum_3flow(bridged));
}

TEST(SpecialFlows, NowhereZero) {
  auto c4 = gen::cycle(4);
  auto real = nowhere_zero_one_sum(c4, false);
  ASSERT_TRUE(real);
  EXPECT_TRUE(flow_violation(c4, real->flow, constant_gamma(c4, 1), LabelSet::nonzero_reals()).empty());
  auto integral = nowhere_zero_one_sum(c4, true);
  ASSERT_TRUE(integral);
  EXPECT_TRUE(flow_violation(c4, integral->flow, constant_gamma(c4, 1), LabelSet::nonzero_integers()).empty());
  EXPECT_FALSE(nowhere_zero_one_sum(gen::path(4), false));
  EXPECT_EQ(bridge_criterion(gen::path(4)).blocking_bridge, 1);

  // C6 with leaves on two adjacent vertices: each bridge cuts off a single vertex
  Graph g(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {0, 6}, {1, 7}});
  auto crit = bridge_criterion(g);
  EXPECT_TRUE(crit.feasible);
  auto forced = oracle::forced_edge_values(g, constant_gamma(g, 1));
  for (const auto& [b, value] : crit.bridge_values) {
    ASSERT_TRUE(forced[b]);
    EXPECT_EQ(abs(*forced[b]), abs(value));
    EXPECT_NE(value, 0);
  }
  auto f = nowhere_zero_one_sum(g, true);
  ASSERT_TRUE(f);
  EXPECT_TRUE(flow_violation(g, f->flow, constant_gamma(g, 1), LabelSet::nonzero_integers()).empty());
}

TEST(SpecialFlows, RestrictedIntervals) {
  auto c4 = gen::cycle(4);
  auto gamma = constant_gamma(c4, 1);
  auto p = restricted_interval_flow(c4, gamma, IntervalSpec{Rational(-1), Rational(2), true, true}, true);
  ASSERT_TRUE(p.feasible);
  EXPECT_TRUE(flow_violation(c4, p.flow, gamma, LabelSet::punctured(IntervalSpec{Rational(-1), Rational(2), true, true})).empty());
  auto open = restricted_interval_flow(c4, gamma, IntervalSpec{Rational(0), Rational(1), true, true}, false);
  ASSERT_TRUE(open.feasible);
  for (const auto& x : open.flow) EXPECT_TRUE(x > 0 && x < 1);
  auto p4 = gen::path(4);
  auto forced = restricted_interval_flow(p4, constant_gamma(p4, 1), IntervalSpec::real_line(), true);
  EXPECT_FALSE(forced.feasible);
  EXPECT_EQ(forced.forced_zero, 1);
}

TEST(SpecialFlows, KFactorAndTrees) {
  auto pet = kfactor_scaled_flow(gen::petersen(), 3);
  ASSERT_TRUE(pet);
  EXPECT_EQ(distinct(pet->flow), R({Rational(1, 3)}));
  auto c5 = kfactor_scaled_flow(gen::cycle(5), 2);
  ASSERT_TRUE(c5);
  EXPECT_EQ(distinct(c5->flow), R({Rational(1, 2)}));
  EXPECT_FALSE(kfactor_scaled_flow(gen::star(3), 1));

  auto k4 = gen::complete(4);
  // two edge-disjoint Hamiltonian paths 0-1-2-3 and 1-3-0-2
  auto e = [&](int a, int b) { return *k4.find_edge(a, b); };
  std::vector<std::vector<EdgeId>> trees{{e(0, 1), e(1, 2), e(2, 3)}, {e(1, 3), e(0, 3), e(0, 2)}};
  auto avg = averaged_tree_flow(k4, trees);
  ASSERT_TRUE(avg);
  EXPECT_TRUE(has_vertex_values(k4, avg->flow, constant_gamma(k4, 1)));
  auto c4 = gen::cycle(4);
  EXPECT_THROW(averaged_tree_flow(c4, {{0, 1, 2}, {1, 2, 3}}), PreconditionError);
  auto single = gen::path(6);
  auto one = averaged_tree_flow(single, {{0, 1, 2, 3, 4}});
  ASSERT_TRUE(one);
  EXPECT_EQ(one->flow, *tree_unique_flow(single, constant_gamma(single, 1)));
}

TEST(SpecialFlows, GeneralRange) {
  std::mt19937_64 rng(8);
  int checked = 0;
  while (checked < 50) {
    auto t = corpus::random_tree(8, rng);
    if (!corpus::balanced_bipartite(t)) continue;
    ++checked;
    auto r = general_range_flow(t);
    ASSERT_TRUE(r);
    EXPECT_TRUE(r->window_applies);
    EXPECT_TRUE(r->within_window);
    for (const auto& x : r->values) EXPECT_TRUE(x >= -2 && x <= 2);
  }
  auto c5 = general_range_flow(gen::cycle(5));
  ASSERT_TRUE(c5);
  EXPECT_EQ(c5->values, R({Rational(1, 2)}));
  EXPECT_FALSE(c5->window_applies);
  EXPECT_FALSE(general_range_flow(gen::star(2)));
}

// ---------------------------------------------------------------- oracles

TEST(Oracle, FiniteFlows) {
  EXPECT_EQ(oracle::enumerate_finite_flows(gen::cycle(3), {-1, 0, 1}, 1).count, 0u);
  auto c4 = oracle::enumerate_finite_flows(gen::cycle(4), {0, 1}, 1);
  EXPECT_EQ(c4.count, 2u);
  EXPECT_EQ(c4.solutions.size(), 2u);
  EXPECT_EQ(oracle::enumerate_finite_flows(gen::complete(4), {-1, 0, 1}, 1).count, 6u);
  EXPECT_THROW(oracle::enumerate_finite_flows(gen::complete(7), {-2, -1, 0, 1, 2}, 1, 0, 100), CapExceeded);
}

TEST(Oracle, ForcedValues) {
  auto t = gen::tree_max(8);
  for (const auto& v : oracle::forced_edge_values(t, constant_gamma(t, 1))) EXPECT_TRUE(v);
  for (const auto& v : oracle::forced_edge_values(gen::cycle(4), constant_gamma(gen::cycle(4), 1))) EXPECT_FALSE(v);
  auto p4 = oracle::forced_edge_values(gen::path(4), constant_gamma(gen::path(4), 1));
  EXPECT_EQ(*p4[1], 0);
}

TEST(Oracle, FactorEnumeration) {
  EXPECT_EQ(oracle::enumerate_one_two_factors(gen::cycle(5)).size(), 1u);
  EXPECT_EQ(oracle::enumerate_one_two_factors(gen::cycle(6)).size(), 3u);
  EXPECT_TRUE(oracle::enumerate_one_two_factors(gen::star(3)).empty());
  EXPECT_EQ(oracle::enumerate_perfect_matchings(gen::complete(4)).size(), 3u);
  EXPECT_EQ(oracle::enumerate_perfect_matchings(gen::petersen()).size(), 6u);
}

TEST(Oracle, FeasibilityProbes) {
  auto k2 = gen::complete(2);
  EXPECT_TRUE(oracle::polytope_feasibility_probe(k2, constant_gamma(k2, 1), IntervalSpec::closed(0, 1)));
  EXPECT_FALSE(oracle::polytope_feasibility_probe(k2, constant_gamma(k2, 1), IntervalSpec::closed(2, 3)));
  auto c4 = gen::cycle(4);
  EXPECT_TRUE(oracle::polytope_feasibility_probe(c4, constant_gamma(c4, 1), IntervalSpec::closed(0, 1)));
  EXPECT_TRUE(oracle::network_feasibility_probe(c4, constant_gamma(c4, 1), IntervalSpec::closed(0, 1)));
  EXPECT_FALSE(oracle::network_feasibility_probe(k2, constant_gamma(k2, 1), IntervalSpec::closed(2, 3)));
  EXPECT_THROW(oracle::polytope_feasibility_probe(gen::complete(6), constant_gamma(gen::complete(6), 1),
                                                  IntervalSpec::closed(0, 1)),
               CapExceeded);
}
