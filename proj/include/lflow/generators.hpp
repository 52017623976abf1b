#ifndef LFLOW_GENERATORS_HPP
#define LFLOW_GENERATORS_HPP

#include "lflow/errors.hpp"
#include "lflow/graph.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace lflow::gen {

namespace detail {
inline void require(bool ok, const std::string& message) {
  if (!ok) throw PreconditionError(message);
}
inline void add_leaves(std::vector<Edge>& edges, int& next, Vertex at, int count) {
  for (int i = 0; i < count; ++i) edges.push_back({at, next++});
}
}  // namespace detail

/// C_n with edges (0,1), (1,2), ..., (n-2,n-1), (0,n-1).
inline Graph cycle(int n) {
  detail::require(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  e.push_back({0, n - 1});
  return Graph(n, std::move(e));
}

inline Graph path(int n) {
  detail::require(n >= 1, "path needs n >= 1");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, std::move(e));
}

/// K_{1,leaves}, center 0.
inline Graph star(int leaves) {
  detail::require(leaves >= 1, "star needs at least one leaf");
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph(leaves + 1, std::move(e));
}

inline Graph complete(int n) {
  detail::require(n >= 1, "complete graph needs n >= 1");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, std::move(e));
}

/// K_{a,b}: parts {0..a-1} and {a..a+b-1}.
inline Graph complete_bipartite(int a, int b) {
  detail::require(a >= 1 && b >= 1, "complete bipartite graph needs a, b >= 1");
  std::vector<Edge> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.push_back({i, a + j});
  return Graph(a + b, std::move(e));
}

/// Circulant C_n(offsets): i ~ i±s (mod n). Edges sorted lexicographically.
inline Graph circulant(int n, const std::vector<int>& offsets) {
  detail::require(n >= 3, "circulant needs n >= 3");
  std::vector<Edge> e;
  for (int s : offsets) {
    detail::require(s >= 1 && 2 * s <= n, "circulant offsets must lie in 1..n/2");
    for (int i = 0; i < n; ++i) {
      int j = (i + s) % n;
      e.push_back({std::min(i, j), std::max(i, j)});
    }
  }
  std::sort(e.begin(), e.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return Graph(n, std::move(e));
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline Graph petersen() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) e.push_back({i, (i + 1) % 5});
  for (int i = 0; i < 5; ++i) e.push_back({5 + i, 5 + (i + 2) % 5});
  for (int i = 0; i < 5; ++i) e.push_back({i, i + 5});
  for (auto& x : e)
    if (x.u > x.v) std::swap(x.u, x.v);
  return Graph(10, std::move(e));
}

// Extremal balanced trees. All take an even n.

/// K2 (0--1) with (n-2)/2 leaves at each end: the unique balanced tree with n-2 leaves.
inline Graph tree_min(int n) {
  detail::require(n >= 4 && n % 2 == 0, "tmin needs even n >= 4");
  std::vector<Edge> e{{0, 1}};
  int next = 2;
  detail::add_leaves(e, next, 0, (n - 2) / 2);
  detail::add_leaves(e, next, 1, (n - 2) / 2);
  return Graph(n, std::move(e));
}

/// Path 0-1-2-3 with (n-4)/2 leaves hung at 0 and at 3.
inline Graph tree_max(int n) {
  detail::require(n >= 6 && n % 2 == 0, "tmax needs even n >= 6");
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}};
  int next = 4;
  detail::add_leaves(e, next, 0, (n - 4) / 2);
  detail::add_leaves(e, next, 3, (n - 4) / 2);
  return Graph(n, std::move(e));
}

/// Path 0-1-2-3 with (n-4)/2 leaves at 0, (n-6)/2 at 3 and one at 1.
inline Graph tree_opt(int n) {
  detail::require(n >= 8 && n % 2 == 0, "topt needs even n >= 8");
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}};
  int next = 4;
  detail::add_leaves(e, next, 0, (n - 4) / 2);
  detail::add_leaves(e, next, 3, (n - 6) / 2);
  detail::add_leaves(e, next, 1, 1);
  return Graph(n, std::move(e));
}

/// tree_min with one leaf removed from each end, the two freed vertices hung as a
/// 2-path below one remaining leaf of vertex 0 (n-4 leaves).
inline Graph tree_s1(int n) {
  detail::require(n >= 8 && n % 2 == 0, "s1 needs even n >= 8");
  std::vector<Edge> e{{0, 1}};
  int next = 2;
  Vertex hook = next;
  detail::add_leaves(e, next, 0, (n - 2) / 2 - 1);
  detail::add_leaves(e, next, 1, (n - 2) / 2 - 1);
  Vertex mid = next++;
  Vertex tip = next++;
  e.push_back({hook, mid});
  e.push_back({mid, tip});
  return Graph(n, std::move(e));
}

/// tree_max with one end-leaf moved to each of the inner path vertices 1 and 2.
inline Graph tree_s2(int n) {
  detail::require(n >= 8 && n % 2 == 0, "s2 needs even n >= 8");
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}};
  int next = 4;
  detail::add_leaves(e, next, 0, (n - 6) / 2);
  detail::add_leaves(e, next, 3, (n - 6) / 2);
  detail::add_leaves(e, next, 1, 1);
  detail::add_leaves(e, next, 2, 1);
  return Graph(n, std::move(e));
}

/// Two copies of K_{s, s(1+t)+1} with one vertex of the first s-side joined to the
/// whole s-side of the second copy. Joining edges are the last s edges.
struct JoinedBicliques {
  Graph graph;
  std::vector<EdgeId> joining_edges;
};

inline JoinedBicliques example_joined_bicliques(int s, int t) {
  detail::require(s >= 1 && t >= 1, "example2 needs s, t >= 1");
  int q = s * (1 + t) + 1;
  int x0 = 0, y0 = s, x1 = s + q, y1 = 2 * s + q;
  std::vector<Edge> e;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < q; ++j) e.push_back({x0 + i, y0 + j});
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < q; ++j) e.push_back({x1 + i, y1 + j});
  JoinedBicliques out;
  for (int i = 0; i < s; ++i) {
    out.joining_edges.push_back(static_cast<EdgeId>(e.size()));
    e.push_back({x0, x1 + i});
  }
  out.graph = Graph(2 * (s + q), std::move(e));
  return out;
}

/// How the triangle attaches to the star in the non-bipartite extremal unicyclic graph.
enum class TriangleJoin { Leaf, Center };

/// Triangle {0,1,2} plus K_{1,p+1} (center 3); vertex 0 joined to a star leaf
/// (p leaves remain) or to the center (p+1 leaves).
inline Graph unicyclic_triangle_star(int p, TriangleJoin join = TriangleJoin::Leaf) {
  detail::require(p >= 2, "triangle-star extremal graph needs p >= 2");
  std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}};
  int next = 4;
  Vertex first_leaf = next;
  detail::add_leaves(e, next, 3, p + 1);
  e.push_back({0, join == TriangleJoin::Leaf ? first_leaf : 3});
  return Graph(next, std::move(e));
}

/// Path u-a-b-c-d-v (0..5) with chord a-d closing the 4-cycle a-b-c-d, star centers
/// 6 and 7 attached to u and v, p/2 leaves on each center: p+8 vertices, p leaves.
inline Graph unicyclic_square_stars(int p) {
  detail::require(p >= 2 && p % 2 == 0, "square-stars extremal graph needs even p >= 2");
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 4}, {0, 6}, {5, 7}};
  int next = 8;
  detail::add_leaves(e, next, 6, p / 2);
  detail::add_leaves(e, next, 7, p / 2);
  return Graph(next, std::move(e));
}

}  // namespace lflow::gen

#endif  // LFLOW_GENERATORS_HPP
