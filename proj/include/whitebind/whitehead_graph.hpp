#pragma once

// Whitehead graph of a cyclic word: vertices are the 2g signed letters and
// every cyclically adjacent pair (w_i, w_{i+1}) contributes the edge
// {w_i, w_{i+1}^-1}.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "whitebind/errors.hpp"
#include "whitebind/word.hpp"

namespace whitebind {

class WhiteheadGraph {
 public:
  using Edge = std::pair<Letter, Letter>;  // first <= second in Letter order

  static WhiteheadGraph build(const CyclicWord& c) {
    if (c.empty()) throw EmptyWord("Whitehead graph");
    WhiteheadGraph g(c.rank());
    const std::size_t n = c.size();
    g.edges_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) g.add_edge(c[i], c[(i + 1) % n].inverse());
    std::sort(g.edges_.begin(), g.edges_.end());
    return g;
  }

  Rank rank() const noexcept { return rank_; }
  std::size_t vertex_count() const noexcept { return static_cast<std::size_t>(rank_.letter_count()); }

  /// Sorted by (min endpoint, max endpoint); parallel edges repeated.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Vertices in Letter order: x1, X1, x2, X2, ...
  std::vector<Letter> vertices() const {
    std::vector<Letter> v;
    for (int key = 0; key < rank_.letter_count(); ++key) v.push_back(Letter::from_order_key(key));
    return v;
  }

  /// Neighbour lists of the underlying simple graph, indexed by order key.
  std::vector<std::vector<int>> simple_adjacency() const {
    std::vector<std::set<int>> sets(vertex_count());
    for (const auto& [u, v] : edges_) {
      if (u == v) continue;
      sets[static_cast<std::size_t>(u.order_key())].insert(v.order_key());
      sets[static_cast<std::size_t>(v.order_key())].insert(u.order_key());
    }
    std::vector<std::vector<int>> adj;
    adj.reserve(sets.size());
    for (const auto& s : sets) adj.emplace_back(s.begin(), s.end());
    return adj;
  }

 private:
  explicit WhiteheadGraph(Rank rank) : rank_(rank) {}

  void add_edge(Letter u, Letter v) { edges_.emplace_back(std::min(u, v), std::max(u, v)); }

  Rank rank_;
  std::vector<Edge> edges_;
};

/// Connectivity over all 2g vertices; an isolated vertex disconnects the graph.
inline bool is_connected(const WhiteheadGraph& g) {
  const auto adj = g.simple_adjacency();
  std::vector<bool> seen(adj.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == adj.size();
}

/// Articulation points (Hopcroft-Tarjan low-link). Parallel edges count as a
/// single adjacency, so they never protect a vertex from being a cut vertex.
inline std::set<Letter> cut_vertices(const WhiteheadGraph& g) {
  const auto adj = g.simple_adjacency();
  const std::size_t n = adj.size();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> cut(n, false);
  int timer = 0;

  std::function<void(int, int)> dfs = [&](int u, int parent) {
    disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
    int children = 0;
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (v == parent) continue;
      if (disc[static_cast<std::size_t>(v)] >= 0) {
        low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)], disc[static_cast<std::size_t>(v)]);
        continue;
      }
      ++children;
      dfs(v, u);
      low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(v)]);
      if (parent >= 0 && low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(u)])
        cut[static_cast<std::size_t>(u)] = true;
    }
    if (parent < 0 && children > 1) cut[static_cast<std::size_t>(u)] = true;
  };

  for (std::size_t u = 0; u < n; ++u)
    if (disc[u] < 0) dfs(static_cast<int>(u), -1);

  std::set<Letter> out;
  for (std::size_t u = 0; u < n; ++u)
    if (cut[u]) out.insert(Letter::from_order_key(static_cast<int>(u)));
  return out;
}

enum class StallingsResult { binds_certified, inconclusive };

/// One-directional: a connected Whitehead graph without cut vertex proves the
/// word binds; any other graph says nothing.
inline StallingsResult stallings_criterion(const WhiteheadGraph& g) {
  return is_connected(g) && cut_vertices(g).empty() ? StallingsResult::binds_certified
                                                    : StallingsResult::inconclusive;
}

inline StallingsResult stallings_criterion(const CyclicWord& c) {
  return stallings_criterion(WhiteheadGraph::build(c));
}

inline std::string vertex_name(Letter l) {
  return std::string(l.positive() ? "x" : "X") + std::to_string(l.generator());
}

inline std::string to_dot(const WhiteheadGraph& g) {
  std::string out = "graph whitehead {\n";
  for (Letter v : g.vertices()) out += "  " + vertex_name(v) + ";\n";
  for (const auto& [u, v] : g.edges()) out += "  " + vertex_name(u) + " -- " + vertex_name(v) + ";\n";
  out += "}\n";
  return out;
}

inline nlohmann::json to_json(const WhiteheadGraph& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (Letter v : g.vertices()) vertices.push_back(vertex_name(v));
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({vertex_name(u), vertex_name(v)});
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

}  // namespace whitebind
