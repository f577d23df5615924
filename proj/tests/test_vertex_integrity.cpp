#include <gtest/gtest.h>

#include "test_util.hpp"
#include "viforge/errors.hpp"
#include "viforge/oracles.hpp"
#include "viforge/vertex_integrity.hpp"

namespace viforge {
namespace {

using testing::Rng;

TEST(ViKSet, CompleteGraphNeedsKEqualN) {
  Graph k5 = testing::complete(5);
  EXPECT_FALSE(vi_k_set(k5, 4));
  auto s = vi_k_set(k5, 5);
  ASSERT_TRUE(s);
  EXPECT_TRUE(is_vi_set(k5, s->separator, 5));
}

TEST(ViKSet, StarSeparatesAtCenter) {
  auto s = vi_k_set(testing::star(6), 2);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->separator, (VertexSubset{0}));
}

TEST(ViKSet, PathOfSeven) {
  Graph p7 = testing::path(7);
  EXPECT_FALSE(vi_k_set(p7, 3));
  auto s = vi_k_set(p7, 4);
  ASSERT_TRUE(s);
  EXPECT_TRUE(is_vi_set(p7, s->separator, 4));
  // The middle vertex alone also works.
  EXPECT_TRUE(is_vi_set(p7, {3}, 4));
  EXPECT_THROW(vi_k_set(p7, 0), InputError);
}

TEST(VertexIntegrity, Examples) {
  EXPECT_EQ(vertex_integrity(Graph(0)).k, 0);
  EXPECT_EQ(vertex_integrity(Graph(1)).k, 1);
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(vertex_integrity(testing::complete(n)).k, n);
  for (int m = 1; m <= 6; ++m) EXPECT_EQ(vertex_integrity(testing::star(m)).k, 2);
  EXPECT_EQ(vertex_integrity(testing::path(7)).k, 4);
}

TEST(VertexCover, Examples) {
  EXPECT_EQ(vertex_cover_min(testing::complete(2)).size(), 1u);
  EXPECT_EQ(vertex_cover_min(testing::cycle(5)).size(), 3u);
  EXPECT_EQ(vertex_cover_min(testing::star(4)), (VertexSubset{0}));
}

TEST(VertexIntegrity, MatchesOracleUpToNineVertices) {
  Rng rng(21);
  oracle::OracleBudget budget;
  budget.max_vertices = 9;
  for (int iter = 0; iter < 300; ++iter) {
    Graph g = testing::random_graph(rng, rng.uniform(0, 9), rng.uniform(10, 60));
    ViSet s = vertex_integrity(g);
    EXPECT_EQ(s.k, oracle::vertex_integrity(g, budget));
    EXPECT_TRUE(is_vi_set(g, s.separator, s.k));
    EXPECT_TRUE(oracle::verify_vi_set(g, s.separator, s.k));
  }
}

TEST(VertexIntegrity, ParameterChain) {
  Rng rng(33);
  for (int iter = 0; iter < 200; ++iter) {
    Graph g = testing::random_graph(rng, rng.uniform(1, 8), rng.uniform(10, 70));
    const int vi = vertex_integrity(g).k;
    const int vc = static_cast<int>(vertex_cover_min(g).size());
    EXPECT_EQ(vc, oracle::vertex_cover_number(g));
    EXPECT_LE(oracle::treedepth(g), vi);
    EXPECT_LE(vi, vc + 1);
  }
}

TEST(VertexIntegrity, WitnessIsDeterministic) {
  Rng rng(4);
  Graph g = testing::random_graph(rng, 9, 35);
  auto a = vertex_integrity(g);
  auto b = vertex_integrity(g);
  EXPECT_EQ(a.separator, b.separator);
}

}  // namespace
}  // namespace viforge
