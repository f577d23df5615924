#include "viforge/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "viforge/errors.hpp"

namespace viforge {

Graph::Graph(int n) : n_(n), adj_(n) {
  if (n < 0) throw InputError("negative vertex count");
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  edges_.assign(edges.begin(), edges.end());
  for (const Edge& e : edges_) {
    check_vertex(e.u);
    check_vertex(e.v);
    if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto it = std::adjacent_find(edges_.begin(), edges_.end()); it != edges_.end()) {
    throw InputError("parallel edge " + std::to_string(it->u) + "-" + std::to_string(it->v));
  }
  for (const Edge& e : edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

Graph::Graph(int n, std::initializer_list<std::pair<Vertex, Vertex>> edges)
    : Graph(n, [&] {
        std::vector<Edge> list;
        for (auto [a, b] : edges) list.emplace_back(a, b);
        return list;
      }()) {}

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) {
    throw InputError("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n_) +
                     ")");
  }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<int> Graph::edge_index(Vertex u, Vertex v) const {
  Edge key(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<int>(it - edges_.begin());
}

Graph Graph::with_colors(std::vector<int> colors) const {
  if (static_cast<int>(colors.size()) != n_) throw InputError("color map must be total");
  Graph g = *this;
  g.colors_ = std::move(colors);
  return g;
}

Graph Graph::with_capacities(std::vector<int> capacities) const {
  if (static_cast<int>(capacities.size()) != n_) throw InputError("capacity map must be total");
  for (int c : capacities) {
    if (c <= 0) throw InputError("capacities must be positive");
  }
  Graph g = *this;
  g.capacities_ = std::move(capacities);
  return g;
}

Graph Graph::with_weights(std::vector<std::int64_t> weights) const {
  if (weights.size() != edges_.size()) throw InputError("weight map must be total");
  for (auto w : weights) {
    if (w <= 0) throw InputError("edge weights must be positive");
  }
  Graph g = *this;
  g.weights_ = std::move(weights);
  return g;
}

std::vector<VertexSubset> components_without(const Graph& g, const std::vector<bool>& removed) {
  std::vector<VertexSubset> result;
  std::vector<bool> seen(g.order(), false);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s] || removed[s]) continue;
    VertexSubset comp;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (!seen[w] && !removed[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    result.push_back(std::move(comp));
  }
  return result;
}

std::vector<VertexSubset> components(const Graph& g) {
  return components_without(g, std::vector<bool>(g.order(), false));
}

InducedSubgraph induced(const Graph& g, const VertexSubset& s) {
  InducedSubgraph out;
  out.old_to_new.assign(g.order(), -1);
  for (Vertex v : s) {
    if (v < 0 || v >= g.order()) throw InputError("vertex " + std::to_string(v) + " out of range");
    if (out.old_to_new[v] != -1) throw InputError("duplicate vertex " + std::to_string(v));
    out.old_to_new[v] = static_cast<Vertex>(out.new_to_old.size());
    out.new_to_old.push_back(v);
  }
  std::vector<Edge> edges;
  std::vector<std::int64_t> weights;
  for (int i = 0; i < g.size(); ++i) {
    const Edge& e = g.edges()[i];
    if (out.old_to_new[e.u] >= 0 && out.old_to_new[e.v] >= 0) {
      edges.emplace_back(out.old_to_new[e.u], out.old_to_new[e.v]);
      weights.push_back(g.weight(i));
    }
  }
  const int n = static_cast<int>(s.size());
  Graph h(n, edges);
  if (g.has_weights()) {
    // Graph sorts edges; realign weights with the sorted order.
    std::vector<std::int64_t> aligned(h.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      aligned[*h.edge_index(edges[i].u, edges[i].v)] = weights[i];
    }
    h = h.with_weights(std::move(aligned));
  }
  if (g.has_colors()) {
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = g.color(out.new_to_old[i]);
    h = h.with_colors(std::move(c));
  }
  if (g.has_capacities()) {
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = g.capacity(out.new_to_old[i]);
    h = h.with_capacities(std::move(c));
  }
  out.graph = std::move(h);
  return out;
}

bool is_connected_subset(const Graph& g, std::span<const Vertex> s) {
  if (s.empty()) return false;
  std::vector<char> in(g.order(), 0), seen(g.order(), 0);
  for (Vertex v : s) in[v] = 1;
  std::vector<Vertex> stack{s.front()};
  seen[s.front()] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    ++reached;
    for (Vertex w : g.neighbors(v)) {
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return reached == s.size();
}

namespace {

struct IsoSearch {
  const Graph& g1;
  const Graph& g2;
  IsoOptions options;
  std::vector<Vertex> map;      // g1 -> g2
  std::vector<Vertex> inverse;  // g2 -> g1
  std::vector<Vertex> order;    // free g1 vertices to place

  bool compatible(Vertex a, Vertex b) const {
    if (g1.degree(a) != g2.degree(b)) return false;
    if (options.match_colors && g1.color(a) != g2.color(b)) return false;
    if (options.match_capacities && g1.capacity(a) != g2.capacity(b)) return false;
    for (Vertex w : g1.neighbors(a)) {
      if (map[w] >= 0 && !g2.adjacent(b, map[w])) return false;
    }
    // Mapped non-neighbors must stay non-adjacent; count check suffices with
    // the neighbor check above.
    int mapped_nb1 = 0, mapped_nb2 = 0;
    for (Vertex w : g1.neighbors(a)) mapped_nb1 += map[w] >= 0;
    for (Vertex w : g2.neighbors(b)) mapped_nb2 += inverse[w] >= 0;
    return mapped_nb1 == mapped_nb2;
  }

  bool extend(std::size_t i) {
    if (i == order.size()) return true;
    Vertex a = order[i];
    for (Vertex b = 0; b < g2.order(); ++b) {
      if (inverse[b] >= 0 || !compatible(a, b)) continue;
      map[a] = b;
      inverse[b] = a;
      if (extend(i + 1)) return true;
      map[a] = -1;
      inverse[b] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Vertex>> anchored_isomorphic(const Graph& g1, const Graph& g2,
                                                       std::span<const Vertex> anchors1,
                                                       std::span<const Vertex> anchors2,
                                                       IsoOptions options) {
  if (anchors1.size() != anchors2.size()) throw InputError("anchor lists differ in length");
  if (g1.order() != g2.order() || g1.size() != g2.size()) return std::nullopt;
  if (options.match_colors && !(g1.has_colors() && g2.has_colors())) options.match_colors = false;
  if (options.match_capacities && !(g1.has_capacities() && g2.has_capacities())) {
    options.match_capacities = false;
  }
  IsoSearch search{g1, g2, options, std::vector<Vertex>(g1.order(), -1),
                   std::vector<Vertex>(g2.order(), -1), {}};
  for (std::size_t i = 0; i < anchors1.size(); ++i) {
    Vertex a = anchors1[i], b = anchors2[i];
    if (a < 0 || a >= g1.order() || b < 0 || b >= g2.order()) {
      throw InputError("anchor out of range");
    }
    if (search.map[a] >= 0 || search.inverse[b] >= 0) throw InputError("repeated anchor");
    if (!search.compatible(a, b)) return std::nullopt;
    search.map[a] = b;
    search.inverse[b] = a;
  }
  // Place vertices adjacent to already-mapped ones first (BFS-ish order).
  std::vector<bool> queued(g1.order(), false);
  for (Vertex a : anchors1) queued[a] = true;
  std::vector<Vertex> frontier(anchors1.begin(), anchors1.end());
  for (std::size_t head = 0;; ) {
    while (head < frontier.size()) {
      Vertex v = frontier[head++];
      for (Vertex w : g1.neighbors(v)) {
        if (!queued[w]) {
          queued[w] = true;
          frontier.push_back(w);
          search.order.push_back(w);
        }
      }
    }
    auto next = std::find(queued.begin(), queued.end(), false);
    if (next == queued.end()) break;
    Vertex v = static_cast<Vertex>(next - queued.begin());
    queued[v] = true;
    frontier.push_back(v);
    search.order.push_back(v);
  }
  if (!search.extend(0)) return std::nullopt;
  return search.map;
}

VertexSubset make_subset(const Graph& g, std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  for (Vertex v : vertices) {
    if (v < 0 || v >= g.order()) throw InputError("vertex " + std::to_string(v) + " out of range");
  }
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw InputError("duplicate vertex in subset");
  }
  return vertices;
}

}  // namespace viforge
