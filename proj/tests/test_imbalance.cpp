#include <gtest/gtest.h>

#include <algorithm>

#include "test_util.hpp"
#include "viforge/errors.hpp"
#include "viforge/imbalance.hpp"
#include "viforge/oracles.hpp"
#include "viforge/parallel.hpp"

namespace viforge {
namespace {

using testing::Rng;

TEST(ImbalanceOf, Examples) {
  EXPECT_EQ(imbalance_of(testing::path(3), {0, 1, 2}), 2);
  EXPECT_EQ(imbalance_of(testing::path(3), {1, 0, 2}), 4);
  EXPECT_THROW(imbalance_of(testing::path(3), {0, 0, 2}), InputError);
  EXPECT_THROW(imbalance_of(testing::path(3), {0, 1}), InputError);
}

TEST(ImbalanceVi, SmallExamples) {
  EXPECT_EQ(imbalance_vi(Graph(0)).value, 0);
  EXPECT_EQ(imbalance_vi(Graph(3)).value, 0);
  EXPECT_EQ(imbalance_vi(testing::path(3)).value, 2);
  EXPECT_EQ(imbalance_vi(testing::star(3)).value, 4);
  EXPECT_EQ(imbalance_vi(testing::cycle(4)).value, 4);
  EXPECT_EQ(imbalance_vi(testing::complete(4)).value, 8);
}

TEST(ImbalanceVi, MatchesOracleWithConsistentCertificate) {
  Rng rng(101);
  for (int round = 0; round < 150; ++round) {
    const int n = rng.uniform(1, 8);
    Graph g = testing::random_graph(rng, n, rng.uniform(10, 50));
    auto result = imbalance_vi(g);
    auto expected = oracle::imbalance(g);
    ASSERT_EQ(result.value, expected.first) << "round " << round;
    EXPECT_EQ(imbalance_of(g, result.ordering), result.value);
    EXPECT_TRUE(oracle::verify_imbalance(g, result.ordering, result.value).ok);
  }
}

TEST(ImbalanceVi, InvariantUnderRelabelAndReversal) {
  Rng rng(7);
  for (int round = 0; round < 40; ++round) {
    Graph g = testing::random_graph(rng, rng.uniform(2, 8), 35);
    std::vector<Vertex> perm;
    Graph h = testing::relabel(rng, g, perm);
    auto a = imbalance_vi(g);
    EXPECT_EQ(a.value, imbalance_vi(h).value);
    LinearOrdering reversed(a.ordering.rbegin(), a.ordering.rend());
    EXPECT_EQ(imbalance_of(g, reversed), a.value);
  }
}

TEST(ImbalanceVi, ThreadCountDoesNotChangeResult) {
  Rng rng(55);
  for (int round = 0; round < 20; ++round) {
    Graph g = testing::random_graph(rng, 8, 40);
    set_thread_count(1);
    auto a = imbalance_vi(g);
    set_thread_count(3);
    auto b = imbalance_vi(g);
    set_thread_count(1);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.ordering, b.ordering);
  }
}

}  // namespace
}  // namespace viforge
