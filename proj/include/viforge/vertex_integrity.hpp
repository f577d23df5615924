#pragma once

#include <optional>

#include "viforge/graph.hpp"

namespace viforge {

// Separator S with |S| + |C| <= k for every component C of G - S.
struct ViSet {
  VertexSubset separator;
  int k = 0;
};

// True iff `separator` satisfies the vi(k) condition in g.
bool is_vi_set(const Graph& g, const VertexSubset& separator, int k);

// A vi(k)-set of g, or nullopt when vi(g) > k. Deterministic: branches on the
// first k-|S|+1 BFS vertices of the first offending component. Requires k >= 1.
std::optional<ViSet> vi_k_set(const Graph& g, int k);

// Exact vertex integrity; the returned set carries k = vi(g). The empty graph
// has vertex integrity 0.
ViSet vertex_integrity(const Graph& g);

// Minimum vertex cover by bounded edge branching.
VertexSubset vertex_cover_min(const Graph& g);

}  // namespace viforge
