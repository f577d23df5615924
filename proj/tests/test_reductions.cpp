#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "test_util.hpp"
#include "viforge/errors.hpp"
#include "viforge/oracles.hpp"
#include "viforge/reductions.hpp"
#include "viforge/vertex_integrity.hpp"

namespace viforge {
namespace {

using testing::Rng;

oracle::OracleBudget wide() {
  oracle::OracleBudget b;
  b.max_vertices = 64;
  b.max_edges = 62;
  return b;
}

bool covers(const Graph& g, const VertexSubset& c) {
  std::vector<char> in(g.order(), 0);
  for (Vertex v : c) in[v] = 1;
  for (const Edge& e : g.edges()) {
    if (!in[e.u] && !in[e.v]) return false;
  }
  return true;
}

TEST(BpToMmoo, Examples) {
  auto red = reduce_bp_to_unary_mmoo({{1, 1, 1, 1, 1, 1}, 3});
  EXPECT_EQ(red.capacity, 2);
  EXPECT_EQ(red.target, 4);
  EXPECT_EQ(red.instance.r, 4);
  EXPECT_EQ(red.cover.size(), 4u);
  EXPECT_TRUE(covers(red.instance.graph, red.cover));
  auto o = oracle::mmoo(red.instance, wide());
  ASSERT_TRUE(o);
  auto packing = packing_from_orientation(red, *o);
  EXPECT_TRUE(oracle::verify_bin_packing({{1, 1, 1, 1, 1, 1}, 3}, packing).ok);
  EXPECT_THROW(reduce_bp_to_unary_mmoo({{1, 1, 1}, 3}), InputError);
  EXPECT_THROW(reduce_bp_to_unary_mmoo({{1, 1, 2, 2}, 3}), InputError);
  EXPECT_THROW(reduce_bp_to_unary_mmoo({{1, 1, 1, 1}, 2}), InputError);
}

TEST(BpToMmoo, DropFullItemsOption) {
  BinPackingInstance bp{{3, 1, 2, 1, 2, 2, 1}, 4};
  EXPECT_THROW(reduce_bp_to_unary_mmoo(bp), InputError);
  auto red = reduce_bp_to_unary_mmoo(bp, {true});
  EXPECT_EQ(red.bins.size(), 3u);
  EXPECT_EQ(red.items.size(), 6u);
}

TEST(BpToMmoo, PackingRoundTrip) {
  BinPackingInstance bp{{1, 2, 1, 2, 1, 2, 2, 1}, 4};
  auto packing = oracle::bin_packing(bp);
  ASSERT_TRUE(packing);
  auto red = reduce_bp_to_unary_mmoo(bp);
  Orientation o = orientation_from_packing(red, *packing);
  EXPECT_TRUE(oracle::verify_mmoo(red.instance, o).ok);
  EXPECT_EQ(packing_from_orientation(red, o), *packing);
}

TEST(BpToMmoo, PreservesAnswers) {
  Rng rng(97);
  int yes = 0, tried = 0;
  while (tried < 40) {
    BinPackingInstance bp;
    bp.t = 3;
    const int n = rng.uniform(3, 6);
    for (int i = 0; i < n; ++i) bp.items.push_back(rng.uniform(1, 3));
    const auto total = std::accumulate(bp.items.begin(), bp.items.end(), std::int64_t{0});
    if (total % 3 != 0 || *std::max_element(bp.items.begin(), bp.items.end()) >= total / 3) continue;
    ++tried;
    auto red = reduce_bp_to_unary_mmoo(bp);
    EXPECT_TRUE(covers(red.instance.graph, red.cover));
    const bool source = oracle::bin_packing(bp).has_value();
    auto target = oracle::mmoo(red.instance, wide());
    EXPECT_EQ(source, target.has_value()) << "round " << tried;
    yes += source;
  }
  EXPECT_GT(yes, 0);
  EXPECT_LT(yes, tried);
}

TEST(PartitionToMmoo, Examples) {
  auto red = reduce_partition_to_binary_mmoo(std::vector<std::int64_t>(10, 1));
  EXPECT_EQ(red.weights.front(), 6);
  EXPECT_EQ(red.target, 30);
  EXPECT_EQ(red.cover.size(), 3u);
  EXPECT_TRUE(covers(red.instance.graph, red.cover));
  EXPECT_TRUE(oracle::mmoo(red.instance, wide()));
  std::vector<std::int64_t> skew{1, 1, 1, 1, 1, 1, 1, 1, 1, 9};
  EXPECT_FALSE(oracle::partition(skew, wide()));
  EXPECT_FALSE(oracle::mmoo(reduce_partition_to_binary_mmoo(skew).instance, wide()));
  EXPECT_THROW(reduce_partition_to_binary_mmoo({1, 1, 1, 1}), InputError);
  EXPECT_THROW(reduce_partition_to_binary_mmoo(std::vector<std::int64_t>(11, 2)), InputError);
  std::vector<std::int64_t> odd(10, 1);
  odd[0] = 2;
  EXPECT_THROW(reduce_partition_to_binary_mmoo(odd), InputError);
}

TEST(PartitionToMmoo, PreservesAnswers) {
  Rng rng(101);
  int yes = 0, tried = 0;
  while (tried < 30) {
    std::vector<std::int64_t> items(rng.chance(50) ? 10 : 12);
    for (auto& a : items) a = rng.uniform(1, 9);
    if (std::accumulate(items.begin(), items.end(), std::int64_t{0}) % 2 != 0) continue;
    ++tried;
    auto red = reduce_partition_to_binary_mmoo(items);
    EXPECT_TRUE(covers(red.instance.graph, red.cover));
    const bool source = oracle::partition(items, wide()).has_value();
    EXPECT_EQ(source, oracle::mmoo(red.instance, wide()).has_value()) << "round " << tried;
    yes += source;
  }
  EXPECT_GT(yes, 0);
}

TEST(Bandwidth, ConstructionSizes) {
  auto red = reduce_bp_to_bandwidth({{1, 1}, 2});
  EXPECT_EQ(red.width, 29);
  EXPECT_EQ(red.tree.order(), 233);
  EXPECT_EQ(red.tree.degree(red.spine.front()), 2 * red.width);
  EXPECT_EQ(red.tree.size(), red.tree.order() - 1);
  EXPECT_EQ(components(red.tree).size(), 1u);
  EXPECT_THROW(reduce_bp_to_bandwidth({{1, 2}, 2}), InputError);
  EXPECT_THROW(reduce_bp_to_bandwidth({{1, 1}, 1}), InputError);
}

TEST(Bandwidth, IdentitiesAndTreedepthShape) {
  for (int t : {2, 3}) {
    for (int n = 1; n <= 3; ++n) {
      std::vector<std::int64_t> items(n, 1);
      while (true) {
        const auto total = std::accumulate(items.begin(), items.end(), std::int64_t{0});
        if (total % t == 0) {
          auto red = reduce_bp_to_bandwidth({items, t});
          const Graph& g = red.tree;
          EXPECT_EQ(g.order(), (3 * t + 2) * red.width + 1);
          EXPECT_EQ(g.degree(red.spine.front()), 2 * red.width);
          EXPECT_EQ(g.degree(red.spine.back()), 2 * red.width);
          // Removing x_1 and all leaves leaves paths of order at most 6t-3.
          std::vector<bool> cut(g.order(), false);
          cut[red.spine[1]] = true;
          for (Vertex v = 0; v < g.order(); ++v) cut[v] = cut[v] || g.degree(v) == 1;
          for (const auto& comp : components_without(g, cut)) {
            EXPECT_LE(static_cast<int>(comp.size()), 6 * t - 3);
          }
          EXPECT_LE(red.treedepth_bound, 6 + std::log2(t));
        }
        int i = 0;
        while (i < n && ++items[i] == 3) items[i++] = 1;
        if (i == n) break;
      }
    }
  }
}

TEST(ThreeDmToMotif, Examples) {
  auto one = reduce_3dm_to_colorful_motif({1, {{0, 0, 0}}});
  EXPECT_EQ(one.instance.graph.order(), 4);
  EXPECT_EQ(one.instance.motif.size(), 4u);
  EXPECT_TRUE(oracle::motif(one.instance));
  EXPECT_TRUE(is_vi_set(one.instance.graph, one.witness.separator, 4));
  auto none = reduce_3dm_to_colorful_motif({1, {}});
  EXPECT_EQ(none.instance.graph.order(), 1);
  EXPECT_FALSE(oracle::motif(none.instance));
  EXPECT_THROW(reduce_3dm_to_colorful_motif({1, {{0, 1, 0}}}), InputError);
}

TEST(ThreeDmToMotif, AllTripleSetsOfSizeTwo) {
  // Every T within X x Y x Z for n = 2 with at most 3 triples.
  std::vector<std::array<int, 3>> all;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) all.push_back({x, y, z});
  oracle::OracleBudget b;
  b.max_vertices = 10;
  for (int mask = 0; mask < (1 << 8); ++mask) {
    if (__builtin_popcount(mask) > 3) continue;
    ThreeDmInstance tdm{2, {}};
    for (int i = 0; i < 8; ++i) {
      if ((mask >> i) & 1) tdm.triples.push_back(all[i]);
    }
    auto red = reduce_3dm_to_colorful_motif(tdm);
    EXPECT_TRUE(is_vi_set(red.instance.graph, red.witness.separator, 4));
    EXPECT_EQ(oracle::three_dm(tdm).has_value(), oracle::motif(red.instance, b).has_value())
        << "mask " << mask;
  }
}

}  // namespace
}  // namespace viforge
