#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "viforge/graph.hpp"
#include "viforge/problems.hpp"
#include "viforge/vertex_integrity.hpp"

namespace viforge {

// MMOO instance built from bin packing: u, bins s_1..s_t and items v_1..v_n,
// complete bipartite between {u, s_j} and {v_i} plus the edge u s_1.
struct MmooReduction {
  MmooInstance instance;
  Vertex u = 0;
  std::vector<Vertex> bins;
  std::vector<Vertex> items;
  // Item weights as built (shifted for the partition reduction).
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;  // B (or B')
  std::int64_t target = 0;    // W = r
  VertexSubset cover;         // {u, s_1, ..., s_t}
};

struct BpToMmooOptions {
  // Items equal to B fill a bin alone; drop them together with one bin
  // instead of rejecting the instance.
  bool drop_full_items = false;
};

// Requires t >= 3, integral B and every item below B (InputError otherwise).
MmooReduction reduce_bp_to_unary_mmoo(const BinPackingInstance& bp, BpToMmooOptions options = {});

// Balanced partition with n even and n >= 10; items are shifted by B so every
// solution has n/2 items per side. Throws InputError otherwise or when the
// sum is odd.
MmooReduction reduce_partition_to_binary_mmoo(const std::vector<std::int64_t>& items);

// Orientation realizing a packing (bins list item indices).
Orientation orientation_from_packing(const MmooReduction& red,
                                     const std::vector<std::vector<int>>& packing);

// Item indices per bin read off an orientation: item i goes to bin j when
// v_i s_j points away from v_i.
std::vector<std::vector<int>> packing_from_orientation(const MmooReduction& red,
                                                       const Orientation& o);

struct BandwidthReduction {
  Graph tree;
  std::int64_t width = 0;  // target w
  int t = 0;
  int n = 0;
  std::int64_t capacity = 0;  // B
  // z_0, x_1, y_1, z_1, ..., x_t, y_t, z_t.
  std::vector<Vertex> spine;
  std::vector<Vertex> star_centers;
  // Leaves hung on z_0..z_t and on each star center.
  std::vector<std::int64_t> spine_leaves;
  std::vector<std::int64_t> star_leaves;
  int connector_inner = 0;  // inner vertices of each x_1 - v_i path
  // Treedepth upper bound 2 + ceil(log2(6t - 2)).
  int treedepth_bound = 0;
};

// Requires t >= 2, positive items and integral B.
BandwidthReduction reduce_bp_to_bandwidth(const BinPackingInstance& bp);

struct MotifReduction {
  MotifInstance instance;
  Vertex root = 0;
  // {root} with k = 4.
  ViSet witness;
  // Vertices (x, y, z) built for each triple.
  std::vector<std::array<Vertex, 3>> triple_vertices;
};

// Root colored 0; element x_i, y_j, z_k colored 1 + i, 1 + n + j, 1 + 2n + k.
MotifReduction reduce_3dm_to_colorful_motif(const ThreeDmInstance& tdm);

}  // namespace viforge
