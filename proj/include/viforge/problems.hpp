#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "viforge/graph.hpp"

namespace viforge {

// Position -> vertex.
using LinearOrdering = std::vector<Vertex>;

// Vertex -> color in 1..r; 0 marks an uncolored vertex.
using Coloring = std::vector<int>;

using Partition = std::vector<VertexSubset>;

// Edge index -> tail; the edge is directed from its tail to the other endpoint.
using Orientation = std::vector<Vertex>;

struct CommonSubgraphWitness {
  // G1 vertex -> G2 vertex, or -1 when unmapped.
  std::vector<Vertex> mapping;
  // Matched edges (MCS) or mapped vertices (MCIS).
  int value = 0;
};

struct CapacitatedCoverWitness {
  VertexSubset cover;
  // Edge index -> endpoint covering it.
  std::vector<Vertex> assignment;
};

struct CapacitatedDominationWitness {
  VertexSubset dset;
  // Vertex -> its dominator; -1 for members of dset.
  std::vector<Vertex> assignment;
};

struct MotifInstance {
  Graph graph;  // must carry vertex colors
  // Multiset of colors, sorted ascending.
  std::vector<int> motif;
};

struct MmooInstance {
  Graph graph;  // edge weights; unit when absent
  std::int64_t r = 0;
};

struct SteinerInstance {
  Graph graph;  // edge weights; unit when absent
  std::vector<VertexSubset> terminals;
};

struct SteinerSolution {
  std::int64_t weight = 0;
  // Edge indices, ascending.
  std::vector<int> edges;
};

struct BinPackingInstance {
  std::vector<std::int64_t> items;
  int t = 0;
};

struct ThreeDmInstance {
  int n = 0;
  // (x, y, z) with each coordinate in [0, n).
  std::vector<std::array<int, 3>> triples;
};

// Throws InputError unless terminal sets are disjoint, in range and of size >= 2.
void validate_steiner(const SteinerInstance& si);

// Throws InputError unless the graph has colors and the motif is sorted.
void validate_motif(const MotifInstance& m);

}  // namespace viforge
