#ifndef LFLOW_MATCHING_HPP
#define LFLOW_MATCHING_HPP

// Maximum-cardinality matching: Edmonds' blossom algorithm for general graphs and
// augmenting paths for bipartite graphs.

#include "lflow/errors.hpp"
#include "lflow/graph.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <vector>

namespace lflow {

/// Edge-index set, no two edges sharing a vertex. Sorted.
using Matching = std::vector<EdgeId>;

inline bool is_matching(const Graph& g, const Matching& m) {
  std::vector<bool> used(g.n(), false);
  for (EdgeId e : m) {
    if (e < 0 || e >= g.m()) return false;
    auto [u, v] = g.edge(e);
    if (used[u] || used[v]) return false;
    used[u] = used[v] = true;
  }
  return true;
}

namespace detail {

/// O(n^3) blossom contraction, vertices scanned in index order.
class Blossom {
 public:
  explicit Blossom(const Graph& g)
      : g_(g), n_(g.n()), match_(n_, -1), parent_(n_), base_(n_), in_queue_(n_), in_blossom_(n_) {}

  std::vector<Vertex> run() {
    // Greedy start, then one augmenting search per exposed vertex.
    for (Vertex v = 0; v < n_; ++v) {
      if (match_[v] != -1) continue;
      for (const auto& inc : g_.incident(v))
        if (match_[inc.neighbor] == -1) {
          match_[v] = inc.neighbor;
          match_[inc.neighbor] = v;
          break;
        }
    }
    for (Vertex v = 0; v < n_; ++v)
      if (match_[v] == -1) {
        Vertex end = find_path(v);
        while (end != -1) {
          Vertex pv = parent_[end], ppv = match_[pv];
          match_[end] = pv;
          match_[pv] = end;
          end = ppv;
        }
      }
    return match_;
  }

 private:
  Vertex lca(Vertex a, Vertex b) {
    std::vector<bool> seen(n_, false);
    while (true) {
      a = base_[a];
      seen[a] = true;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(Vertex v, Vertex b, Vertex child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[match_[v]]] = true;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  Vertex find_path(Vertex root) {
    std::fill(in_queue_.begin(), in_queue_.end(), false);
    std::fill(parent_.begin(), parent_.end(), -1);
    for (Vertex i = 0; i < n_; ++i) base_[i] = i;
    std::queue<Vertex> q;
    q.push(root);
    in_queue_[root] = true;
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (const auto& inc : g_.incident(v)) {
        Vertex to = inc.neighbor;
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          Vertex b = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), false);
          mark_path(v, b, to);
          mark_path(to, b, v);
          for (Vertex i = 0; i < n_; ++i)
            if (in_blossom_[base_[i]]) {
              base_[i] = b;
              if (!in_queue_[i]) {
                in_queue_[i] = true;
                q.push(i);
              }
            }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) return to;
          Vertex next = match_[to];
          in_queue_[next] = true;
          q.push(next);
        }
      }
    }
    return -1;
  }

  const Graph& g_;
  int n_;
  std::vector<Vertex> match_, parent_, base_;
  std::vector<bool> in_queue_, in_blossom_;
};

inline Matching mates_to_edges(const Graph& g, const std::vector<Vertex>& mate) {
  Matching m;
  for (Vertex v = 0; v < g.n(); ++v)
    if (mate[v] > v) m.push_back(*g.find_edge(v, mate[v]));
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace detail

/// Maximum-cardinality matching of a general graph.
inline Matching max_matching(const Graph& g) {
  detail::Blossom b(g);
  return detail::mates_to_edges(g, b.run());
}

/// Maximum matching of a bipartite graph by augmenting paths from side-1 vertices.
/// `side` is a proper 2-coloring with labels 1 and 2.
inline Matching bipartite_max_matching(const Graph& g, const std::vector<int>& side) {
  if (static_cast<int>(side.size()) != g.n()) throw PreconditionError("bipartite_max_matching: side labels size");
  std::vector<Vertex> mate(g.n(), -1);
  std::vector<int> stamp(g.n(), -1);
  // Iterative DFS for an augmenting path from a free side-1 vertex.
  auto augment = [&](Vertex root, int round) {
    struct Frame {
      Vertex v;
      std::size_t next;
    };
    std::vector<Frame> stack{{root, 0}};
    std::vector<Vertex> via;  // side-2 vertex chosen at each level
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto adj = g.incident(f.v);
      if (f.next == adj.size()) {
        stack.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      Vertex to = adj[f.next++].neighbor;
      if (stamp[to] == round) continue;
      stamp[to] = round;
      if (mate[to] == -1) {
        via.push_back(to);
        for (std::size_t i = 0; i < stack.size(); ++i) {
          mate[stack[i].v] = via[i];
          mate[via[i]] = stack[i].v;
        }
        return true;
      }
      via.push_back(to);
      stack.push_back({mate[to], 0});
    }
    return false;
  };
  int round = 0;
  for (Vertex v = 0; v < g.n(); ++v)
    if (side[v] == 1 && mate[v] == -1) augment(v, round++);
  return detail::mates_to_edges(g, mate);
}

}  // namespace lflow

#endif  // LFLOW_MATCHING_HPP
