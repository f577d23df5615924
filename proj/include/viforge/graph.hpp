#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace viforge {

using Vertex = int;

// Sorted list of distinct vertices of some host graph.
using VertexSubset = std::vector<Vertex>;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  // Stored normalized with u < v.
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 0..n-1 with optional total attribute
// maps. Immutable once built; the with_* helpers return modified copies.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  // Throws InputError on self-loops, parallel edges or out-of-range endpoints.
  Graph(int n, std::span<const Edge> edges);
  Graph(int n, std::initializer_list<std::pair<Vertex, Vertex>> edges);

  int order() const { return n_; }
  int size() const { return static_cast<int>(edges_.size()); }

  // Edges in ascending (u, v) order; edge indices refer to this order.
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(Vertex u, Vertex v) const;
  std::optional<int> edge_index(Vertex u, Vertex v) const;

  bool has_colors() const { return !colors_.empty(); }
  bool has_capacities() const { return !capacities_.empty(); }
  bool has_weights() const { return !weights_.empty(); }
  int color(Vertex v) const { return colors_[v]; }
  int capacity(Vertex v) const { return capacities_[v]; }
  // Weight of edge index e; 1 when the graph carries no weights.
  std::int64_t weight(int e) const { return weights_.empty() ? 1 : weights_[e]; }
  const std::vector<int>& colors() const { return colors_; }
  const std::vector<int>& capacities() const { return capacities_; }
  const std::vector<std::int64_t>& weights() const { return weights_; }

  Graph with_colors(std::vector<int> colors) const;
  Graph with_capacities(std::vector<int> capacities) const;
  // Weights aligned with edges().
  Graph with_weights(std::vector<std::int64_t> weights) const;

  bool operator==(const Graph& other) const = default;

 private:
  void check_vertex(Vertex v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<int> colors_;
  std::vector<int> capacities_;
  std::vector<std::int64_t> weights_;
};

// Connected components ordered by smallest vertex; each component sorted.
std::vector<VertexSubset> components(const Graph& g);

// Components of g minus the vertices flagged in `removed`.
std::vector<VertexSubset> components_without(const Graph& g, const std::vector<bool>& removed);

struct InducedSubgraph {
  Graph graph;
  // old vertex -> new vertex, -1 when dropped.
  std::vector<Vertex> old_to_new;
  // new vertex -> old vertex.
  std::vector<Vertex> new_to_old;
};

// Attributes are restricted to the kept vertices/edges.
InducedSubgraph induced(const Graph& g, const VertexSubset& s);

bool is_connected_subset(const Graph& g, std::span<const Vertex> s);

struct IsoOptions {
  bool match_colors = false;
  bool match_capacities = false;
};

// Bijection V(g1) -> V(g2) (indexed by g1 vertex) that maps anchors1[i] to
// anchors2[i] and preserves adjacency, or nullopt. Plain backtracking with
// degree pruning; intended for graphs of a few dozen vertices at most.
std::optional<std::vector<Vertex>> anchored_isomorphic(const Graph& g1, const Graph& g2,
                                                       std::span<const Vertex> anchors1,
                                                       std::span<const Vertex> anchors2,
                                                       IsoOptions options = {});

// Sorts and checks range/duplicates; throws InputError.
VertexSubset make_subset(const Graph& g, std::vector<Vertex> vertices);

}  // namespace viforge
