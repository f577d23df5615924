#include "viforge/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "viforge/errors.hpp"

namespace viforge {

namespace {

std::int64_t checked_sum(const std::vector<std::int64_t>& items) {
  std::int64_t total = 0;
  for (auto a : items) {
    if (a <= 0) throw InputError("items must be positive");
    total += a;
  }
  return total;
}

MmooReduction build_mmoo(const std::vector<std::int64_t>& weights, int t, std::int64_t capacity) {
  MmooReduction red;
  const int n = static_cast<int>(weights.size());
  red.weights = weights;
  red.capacity = capacity;
  red.target = (t - 1) * capacity;
  red.u = 0;
  for (int j = 0; j < t; ++j) red.bins.push_back(1 + j);
  for (int i = 0; i < n; ++i) red.items.push_back(1 + t + i);
  std::vector<Edge> edges{{red.u, red.bins[0]}};
  for (Vertex v : red.items) {
    edges.emplace_back(red.u, v);
    for (Vertex s : red.bins) edges.emplace_back(s, v);
  }
  Graph g(1 + t + n, edges);
  std::vector<std::int64_t> w(g.size());
  w[*g.edge_index(red.u, red.bins[0])] = red.target;
  for (int i = 0; i < n; ++i) {
    w[*g.edge_index(red.u, red.items[i])] = red.target - weights[i];
    for (Vertex s : red.bins) w[*g.edge_index(s, red.items[i])] = weights[i];
  }
  red.instance = {g.with_weights(std::move(w)), red.target};
  red.cover = red.bins;
  red.cover.insert(red.cover.begin(), red.u);
  return red;
}

}  // namespace

MmooReduction reduce_bp_to_unary_mmoo(const BinPackingInstance& bp, BpToMmooOptions options) {
  const std::int64_t total = checked_sum(bp.items);
  int t = bp.t;
  if (t < 3) throw InputError("bin packing reduction needs t >= 3");
  if (total % t != 0) throw InputError("bin capacity sum/t is not integral");
  const std::int64_t capacity = total / t;
  std::vector<std::int64_t> kept;
  for (auto a : bp.items) {
    if (a == capacity && options.drop_full_items) {
      --t;
      continue;
    }
    if (a >= capacity) {
      throw InputError("item " + std::to_string(a) + " is not below the bin capacity " +
                       std::to_string(capacity));
    }
    kept.push_back(a);
  }
  if (t < 3) throw InputError("fewer than three bins remain after dropping full items");
  return build_mmoo(kept, t, capacity);
}

MmooReduction reduce_partition_to_binary_mmoo(const std::vector<std::int64_t>& items) {
  const int n = static_cast<int>(items.size());
  if (n < 10 || n % 2 != 0) throw InputError("partition reduction needs an even n >= 10");
  const std::int64_t total = checked_sum(items);
  if (total % 2 != 0) throw InputError("partition sum is odd");
  const std::int64_t half = total / 2;
  std::vector<std::int64_t> shifted;
  for (auto a : items) shifted.push_back(a + half);
  MmooReduction red = build_mmoo(shifted, 2, (n / 2 + 1) * half);
  return red;
}

Orientation orientation_from_packing(const MmooReduction& red,
                                     const std::vector<std::vector<int>>& packing) {
  const Graph& g = red.instance.graph;
  if (packing.size() != red.bins.size()) throw InputError("packing has the wrong number of bins");
  std::vector<int> bin_of(red.items.size(), -1);
  for (std::size_t j = 0; j < packing.size(); ++j) {
    for (int i : packing[j]) {
      if (i < 0 || i >= static_cast<int>(red.items.size()) || bin_of[i] >= 0) {
        throw InputError("packing does not partition the items");
      }
      bin_of[i] = static_cast<int>(j);
    }
  }
  Orientation o(g.size(), -1);
  o[*g.edge_index(red.u, red.bins[0])] = red.u;
  for (std::size_t i = 0; i < red.items.size(); ++i) {
    if (bin_of[i] < 0) throw InputError("packing does not partition the items");
    const Vertex v = red.items[i];
    o[*g.edge_index(red.u, v)] = v;
    for (std::size_t j = 0; j < red.bins.size(); ++j) {
      o[*g.edge_index(red.bins[j], v)] = static_cast<int>(j) == bin_of[i] ? v : red.bins[j];
    }
  }
  return o;
}

std::vector<std::vector<int>> packing_from_orientation(const MmooReduction& red,
                                                       const Orientation& o) {
  const Graph& g = red.instance.graph;
  if (static_cast<int>(o.size()) != g.size()) throw InputError("orientation has the wrong length");
  std::vector<std::vector<int>> packing(red.bins.size());
  for (std::size_t i = 0; i < red.items.size(); ++i) {
    for (std::size_t j = 0; j < red.bins.size(); ++j) {
      if (o[*g.edge_index(red.bins[j], red.items[i])] == red.items[i]) {
        packing[j].push_back(static_cast<int>(i));
      }
    }
  }
  return packing;
}

BandwidthReduction reduce_bp_to_bandwidth(const BinPackingInstance& bp) {
  const std::int64_t total = checked_sum(bp.items);
  const int t = bp.t;
  if (t < 2) throw InputError("bandwidth reduction needs t >= 2");
  if (total % t != 0) throw InputError("bin capacity sum/t is not integral");
  BandwidthReduction red;
  red.t = t;
  red.n = static_cast<int>(bp.items.size());
  red.capacity = total / t;
  const std::int64_t n = red.n, b = red.capacity;
  red.width = 6 * t * n * b + 2 * n + 1;
  red.connector_inner = 6 * t - 4;
  std::vector<Edge> edges;
  Vertex next = 0;
  for (int i = 0; i <= 3 * t; ++i) red.spine.push_back(next++);
  for (int i = 0; i < 3 * t; ++i) edges.emplace_back(red.spine[i], red.spine[i + 1]);
  for (int i = 0; i <= t; ++i) {
    const std::int64_t leaves = (i == 0 || i == t) ? 12 * t * n * b + 4 * n + 1 : 12 * t * n * b;
    red.spine_leaves.push_back(leaves);
    for (std::int64_t l = 0; l < leaves; ++l) edges.emplace_back(red.spine[3 * i], next++);
  }
  const Vertex x1 = red.spine[1];
  for (auto a : bp.items) {
    const Vertex center = next++;
    red.star_centers.push_back(center);
    red.star_leaves.push_back(6 * t * n * a - 1);
    for (std::int64_t l = 0; l + 1 < 6 * t * n * a; ++l) edges.emplace_back(center, next++);
    Vertex prev = x1;
    for (int k = 0; k < red.connector_inner; ++k) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
    edges.emplace_back(prev, center);
  }
  red.tree = Graph(next, edges);
  int log = 0;
  while ((1 << log) < 6 * t - 2) ++log;
  red.treedepth_bound = 2 + log;
  return red;
}

MotifReduction reduce_3dm_to_colorful_motif(const ThreeDmInstance& tdm) {
  const int n = tdm.n;
  if (n < 0) throw InputError("3DM size must be nonnegative");
  MotifReduction red;
  std::vector<int> colors{0};
  std::vector<Edge> edges;
  Vertex next = 1;
  for (const auto& triple : tdm.triples) {
    for (int c : triple) {
      if (c < 0 || c >= n) throw InputError("triple coordinate out of range");
    }
    const std::array<Vertex, 3> vs{next, next + 1, next + 2};
    next += 3;
    colors.push_back(1 + triple[0]);
    colors.push_back(1 + n + triple[1]);
    colors.push_back(1 + 2 * n + triple[2]);
    edges.emplace_back(red.root, vs[0]);
    edges.emplace_back(vs[0], vs[1]);
    edges.emplace_back(vs[1], vs[2]);
    red.triple_vertices.push_back(vs);
  }
  std::vector<int> motif(3 * n + 1);
  std::iota(motif.begin(), motif.end(), 0);
  red.instance = {Graph(next, edges).with_colors(std::move(colors)), std::move(motif)};
  red.witness = {{red.root}, 4};
  return red;
}

}  // namespace viforge
