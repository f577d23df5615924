#include <gtest/gtest.h>

#include "test_util.hpp"
#include "viforge/capacitated.hpp"
#include "viforge/errors.hpp"
#include "viforge/oracles.hpp"

namespace viforge {
namespace {

using testing::Rng;

Graph with_random_capacities(Rng& rng, const Graph& g, bool at_most_degree) {
  std::vector<int> caps(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    const int hi = at_most_degree ? std::max(1, g.degree(v)) : g.degree(v) + 2;
    caps[v] = rng.uniform(1, hi);
  }
  return g.with_capacities(caps);
}

TEST(Cvc, Examples) {
  Graph p3 = testing::path(3);
  auto a = cvc_vi(p3.with_capacities({1, 2, 1}));
  ASSERT_TRUE(a);
  EXPECT_EQ(a->cover, (VertexSubset{1}));
  auto b = cvc_vi(p3.with_capacities({1, 1, 1}));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->cover.size(), 2u);
  auto c = cvc_vi(testing::complete(3).with_capacities({1, 1, 1}));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->cover.size(), 3u);
  EXPECT_FALSE(cvc_vi(testing::complete(4).with_capacities({1, 1, 1, 1})));
  EXPECT_THROW(cvc_vi(p3.with_capacities({2, 2, 1})), InputError);
  EXPECT_THROW(cvc_vi(p3), InputError);
  EXPECT_TRUE(cvc_at_most(p3.with_capacities({1, 2, 1}), 1));
  EXPECT_FALSE(cvc_at_most(p3.with_capacities({1, 1, 1}), 1));
}

TEST(Cds, Examples) {
  Graph star = testing::star(3);
  auto a = cds_vi(star.with_capacities({3, 1, 1, 1}));
  EXPECT_EQ(a.dset, (VertexSubset{0}));
  EXPECT_EQ(cds_vi(star.with_capacities({2, 1, 1, 1})).dset.size(), 2u);
  EXPECT_EQ(cds_vi(testing::path(2).with_capacities({1, 1})).dset.size(), 1u);
  EXPECT_TRUE(cds_at_most(star.with_capacities({3, 1, 1, 1}), 1));
  EXPECT_FALSE(cds_at_most(star.with_capacities({2, 1, 1, 1}), 1));
}

TEST(Cvc, MatchesOracle) {
  Rng rng(31);
  for (int round = 0; round < 150; ++round) {
    Graph g = with_random_capacities(rng, testing::random_graph(rng, rng.uniform(1, 8), 40), true);
    auto got = cvc_vi(g);
    auto expected = oracle::cvc(g);
    ASSERT_EQ(got.has_value(), expected.has_value()) << "round " << round;
    if (!got) continue;
    EXPECT_EQ(got->cover.size(), expected->cover.size()) << "round " << round;
    EXPECT_TRUE(oracle::verify_cvc(g, *got).ok);
  }
}

TEST(Cds, MatchesOracle) {
  Rng rng(32);
  for (int round = 0; round < 150; ++round) {
    Graph g = with_random_capacities(rng, testing::random_graph(rng, rng.uniform(1, 8), 35), false);
    auto got = cds_vi(g);
    EXPECT_EQ(got.dset.size(), oracle::cds(g).dset.size()) << "round " << round;
    auto verdict = oracle::verify_cds(g, got);
    EXPECT_TRUE(verdict.ok) << verdict.diagnostic;
  }
}

TEST(Capacitated, RaisingCapacityNeverHurts) {
  Rng rng(33);
  for (int round = 0; round < 40; ++round) {
    Graph base = testing::random_graph(rng, rng.uniform(2, 7), 45);
    Graph g = with_random_capacities(rng, base, true);
    std::vector<int> caps = g.capacities();
    const Vertex v = rng.uniform(0, g.order() - 1);
    const int before_cds = static_cast<int>(cds_vi(g).dset.size());
    auto before_cvc = cvc_vi(g);
    if (caps[v] < std::max(1, g.degree(v))) ++caps[v];
    Graph raised = base.with_capacities(caps);
    EXPECT_LE(cds_vi(raised).dset.size(), static_cast<std::size_t>(before_cds));
    auto after_cvc = cvc_vi(raised);
    if (before_cvc) {
      ASSERT_TRUE(after_cvc);
      EXPECT_LE(after_cvc->cover.size(), before_cvc->cover.size());
    }
  }
}

}  // namespace
}  // namespace viforge
