#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "viforge/graph.hpp"

namespace viforge::testing {

// Seeded generator with portable helpers (no std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [lo, hi].
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int percent) { return uniform(0, 99) < percent; }

 private:
  std::mt19937_64 engine_;
};

inline Graph random_graph(Rng& rng, int n, int edge_percent) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.chance(edge_percent)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

inline Graph random_graph_max_edges(Rng& rng, int n, int edge_percent, int max_edges) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (static_cast<int>(edges.size()) < max_edges && rng.chance(edge_percent)) {
        edges.emplace_back(u, v);
      }
    }
  }
  return Graph(n, edges);
}

// Relabels vertices by a random permutation; returns the permuted graph and
// writes old -> new into `perm`.
inline Graph relabel(Rng& rng, const Graph& g, std::vector<Vertex>& perm) {
  perm.resize(g.order());
  for (int i = 0; i < g.order(); ++i) perm[i] = i;
  for (int i = g.order() - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform(0, i)]);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.emplace_back(perm[e.u], perm[e.v]);
  Graph h(g.order(), edges);
  if (g.has_colors()) {
    std::vector<int> c(g.order());
    for (int v = 0; v < g.order(); ++v) c[perm[v]] = g.color(v);
    h = h.with_colors(c);
  }
  if (g.has_capacities()) {
    std::vector<int> c(g.order());
    for (int v = 0; v < g.order(); ++v) c[perm[v]] = g.capacity(v);
    h = h.with_capacities(c);
  }
  if (g.has_weights()) {
    std::vector<std::int64_t> w(h.size());
    for (int i = 0; i < g.size(); ++i) {
      const Edge& e = g.edges()[i];
      w[*h.edge_index(perm[e.u], perm[e.v])] = g.weight(i);
    }
    h = h.with_weights(w);
  }
  return h;
}

inline Graph path(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

inline Graph cycle(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

inline Graph complete(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

// Star with center 0 and m leaves.
inline Graph star(int m) {
  std::vector<Edge> edges;
  for (int i = 1; i <= m; ++i) edges.emplace_back(0, i);
  return Graph(m + 1, edges);
}

}  // namespace viforge::testing
