#include <gtest/gtest.h>

#include "test_util.hpp"
#include "viforge/coloring.hpp"
#include "viforge/errors.hpp"
#include "viforge/oracles.hpp"

namespace viforge {
namespace {

using testing::Rng;

TEST(Precoloring, Examples) {
  auto a = precoloring_extension_vi(testing::cycle(4), {1, 0, 1, 0}, 2);
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, (Coloring{1, 2, 1, 2}));
  EXPECT_FALSE(precoloring_extension_vi(testing::path(2), {1, 1}, 2));
  auto c = precoloring_extension_vi(testing::complete(3), {2, 0, 0}, 3);
  ASSERT_TRUE(c);
  EXPECT_TRUE(oracle::verify_precoloring(testing::complete(3), {2, 0, 0}, 3, *c).ok);
  EXPECT_FALSE(precoloring_extension_vi(testing::cycle(4), {1, 0, 2, 0}, 2));
  EXPECT_THROW(precoloring_extension_vi(testing::path(2), {3, 0}, 2), InputError);
  EXPECT_THROW(precoloring_extension_vi(testing::path(2), {0}, 2), InputError);
  EXPECT_THROW(precoloring_extension_vi(testing::path(2), {0, 0}, 0), InputError);
}

TEST(Precoloring, MatchesOracle) {
  Rng rng(41);
  for (int round = 0; round < 200; ++round) {
    const int n = rng.uniform(1, 8);
    Graph g = testing::random_graph(rng, n, rng.uniform(20, 70));
    const int r = rng.uniform(1, 4);
    Coloring pre(n, 0);
    for (int v = 0; v < n; ++v) {
      if (rng.chance(30)) pre[v] = rng.uniform(1, r);
    }
    auto got = precoloring_extension_vi(g, pre, r);
    auto expected = oracle::precoloring(g, pre, r);
    ASSERT_EQ(got.has_value(), expected.has_value()) << "round " << round;
    if (got) EXPECT_TRUE(oracle::verify_precoloring(g, pre, r, *got).ok) << "round " << round;
  }
}

TEST(Precoloring, GreedyBoundAlwaysExtends) {
  Rng rng(43);
  for (int round = 0; round < 50; ++round) {
    Graph g = testing::random_graph(rng, rng.uniform(1, 12), 40);
    int delta = 0;
    for (Vertex v = 0; v < g.order(); ++v) delta = std::max(delta, g.degree(v));
    auto c = precoloring_extension_vi(g, Coloring(g.order(), 0), delta + 1);
    ASSERT_TRUE(c);
    EXPECT_TRUE(oracle::verify_precoloring(g, Coloring(g.order(), 0), delta + 1, *c).ok);
  }
}

TEST(EquitableColoring, Examples) {
  auto a = equitable_coloring_vi(testing::complete(3), 3);
  ASSERT_TRUE(a);
  EXPECT_TRUE(oracle::verify_eqcoloring(testing::complete(3), 3, *a).ok);
  EXPECT_FALSE(equitable_coloring_vi(testing::star(3), 2));
  auto c = equitable_coloring_vi(testing::cycle(4), 2);
  ASSERT_TRUE(c);
  EXPECT_TRUE(oracle::verify_eqcoloring(testing::cycle(4), 2, *c).ok);
  EXPECT_TRUE(equitable_coloring_vi(testing::star(3), 4));
  EXPECT_THROW(equitable_coloring_vi(testing::path(2), 0), InputError);
}

TEST(EquitableColoring, MatchesOracle) {
  Rng rng(47);
  for (int round = 0; round < 200; ++round) {
    const int n = rng.uniform(1, 8);
    Graph g = testing::random_graph(rng, n, rng.uniform(10, 60));
    const int r = rng.uniform(1, n);
    auto got = equitable_coloring_vi(g, r);
    auto expected = oracle::eqcoloring(g, r);
    ASSERT_EQ(got.has_value(), expected.has_value()) << "round " << round << " r " << r;
    if (got) EXPECT_TRUE(oracle::verify_eqcoloring(g, r, *got).ok) << "round " << round;
  }
}

TEST(EquitableColoring, ManyColorsOnSparseGraphs) {
  // Small separators push r above twice the vertex integrity.
  Rng rng(53);
  for (int round = 0; round < 60; ++round) {
    const int n = rng.uniform(4, 8);
    Graph g = testing::random_graph(rng, n, 15);
    for (int r = 1; r <= n; ++r) {
      auto got = equitable_coloring_vi(g, r);
      auto expected = oracle::eqcoloring(g, r);
      ASSERT_EQ(got.has_value(), expected.has_value()) << "round " << round << " r " << r;
      if (got) EXPECT_TRUE(oracle::verify_eqcoloring(g, r, *got).ok);
    }
  }
}

TEST(Ecp, Examples) {
  auto a = equitable_connected_partition_vi(testing::path(4), 2);
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, (Partition{{0, 1}, {2, 3}}));
  EXPECT_FALSE(equitable_connected_partition_vi(testing::star(3), 2));
  auto c = equitable_connected_partition_vi(testing::star(3), 4);
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (Partition{{0}, {1}, {2}, {3}}));
  EXPECT_FALSE(equitable_connected_partition_vi(testing::path(3), 4));
  EXPECT_THROW(equitable_connected_partition_vi(testing::path(3), 0), InputError);
}

TEST(Ecp, MatchesOracle) {
  Rng rng(59);
  for (int round = 0; round < 200; ++round) {
    const int n = rng.uniform(1, 8);
    Graph g = testing::random_graph(rng, n, rng.uniform(20, 60));
    const int r = rng.uniform(1, n);
    auto got = equitable_connected_partition_vi(g, r);
    auto expected = oracle::ecp(g, r);
    ASSERT_EQ(got.has_value(), expected.has_value()) << "round " << round << " r " << r;
    if (got) EXPECT_TRUE(oracle::verify_ecp(g, r, *got).ok) << "round " << round;
  }
}

TEST(Ecp, EveryPartCountOnLargerGraphs) {
  // Larger than the oracle budget: only certificates are checked, plus the
  // trivial yes-instances r = 1 (connected) and r = n.
  Rng rng(61);
  for (int round = 0; round < 30; ++round) {
    const int n = rng.uniform(9, 12);
    Graph g = testing::random_graph(rng, n, 25);
    const bool connected = components(g).size() == 1;
    for (int r = 1; r <= n; ++r) {
      auto got = equitable_connected_partition_vi(g, r);
      if (r == n || (r == 1 && connected)) EXPECT_TRUE(got) << "round " << round << " r " << r;
      if (got) {
        EXPECT_TRUE(oracle::verify_ecp(g, r, *got).ok) << "round " << round << " r " << r;
      }
    }
  }
}

}  // namespace
}  // namespace viforge
