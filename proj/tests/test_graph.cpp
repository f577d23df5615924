#include <gtest/gtest.h>

#include "test_util.hpp"
#include "viforge/errors.hpp"
#include "viforge/graph.hpp"

namespace viforge {
namespace {

using testing::Rng;

TEST(Graph, RejectsSelfLoopsParallelEdgesAndRange) {
  EXPECT_THROW(Graph(2, {{0, 0}}), InputError);
  EXPECT_THROW(Graph(2, {{0, 1}, {1, 0}}), InputError);
  EXPECT_THROW(Graph(2, {{0, 2}}), InputError);
  EXPECT_THROW(Graph(2, {{0, 1}}).with_capacities({1, 0}), InputError);
  EXPECT_THROW(Graph(2, {{0, 1}}).with_weights({0}), InputError);
}

TEST(Graph, AdjacencyIsSymmetricAndSorted) {
  Graph g(4, {{2, 0}, {0, 1}, {3, 0}});
  EXPECT_TRUE(g.adjacent(0, 2));
  EXPECT_TRUE(g.adjacent(2, 0));
  EXPECT_FALSE(g.adjacent(1, 2));
  ASSERT_EQ(g.degree(0), 3);
  EXPECT_EQ(g.neighbors(0)[0], 1);
  EXPECT_EQ(g.neighbors(0)[2], 3);
  EXPECT_EQ(g.edge_index(2, 0), 1);
  EXPECT_EQ(g.edge_index(1, 2), std::nullopt);
}

TEST(Components, Examples) {
  EXPECT_TRUE(components(Graph(0)).empty());
  EXPECT_EQ(components(Graph(3, {{0, 1}, {1, 2}})), (std::vector<VertexSubset>{{0, 1, 2}}));
  EXPECT_EQ(components(Graph(4, {{0, 1}, {2, 3}})), (std::vector<VertexSubset>{{0, 1}, {2, 3}}));
}

TEST(Components, PartitionPropertyOnRandomGraphs) {
  Rng rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    Graph g = testing::random_graph(rng, rng.uniform(0, 10), 20);
    auto comps = components(g);
    std::vector<int> part(g.order(), -1);
    for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
      for (Vertex v : comps[i]) {
        ASSERT_EQ(part[v], -1);
        part[v] = i;
      }
    }
    for (int p : part) EXPECT_GE(p, 0);
    for (const Edge& e : g.edges()) EXPECT_EQ(part[e.u], part[e.v]);
  }
}

TEST(Induced, Examples) {
  Graph k3 = testing::complete(3);
  EXPECT_EQ(induced(k3, {0, 1}).graph, testing::complete(2));
  auto p4 = induced(testing::path(4), {0, 2});
  EXPECT_EQ(p4.graph.order(), 2);
  EXPECT_EQ(p4.graph.size(), 0);
  EXPECT_EQ(p4.old_to_new[1], -1);
  Graph g = testing::cycle(5).with_colors({1, 2, 3, 4, 5});
  EXPECT_EQ(induced(g, {0, 1, 2, 3, 4}).graph, g);
  EXPECT_THROW(induced(g, {7}), InputError);
}

TEST(Induced, KeepsWeightsAligned) {
  Graph g = Graph(4, {{0, 3}, {1, 3}, {2, 3}}).with_weights({5, 6, 7});
  auto h = induced(g, {3, 2, 1});
  // 3->0, 2->1, 1->2: edges {0,1} (was 2-3, w7) and {0,2} (was 1-3, w6).
  EXPECT_EQ(h.graph.weight(*h.graph.edge_index(0, 1)), 7);
  EXPECT_EQ(h.graph.weight(*h.graph.edge_index(0, 2)), 6);
}

TEST(AnchoredIsomorphic, Examples) {
  Graph k2 = testing::complete(2);
  std::vector<Vertex> a0{0};
  auto id = anchored_isomorphic(k2, k2, a0, a0);
  ASSERT_TRUE(id);
  EXPECT_EQ(*id, (std::vector<Vertex>{0, 1}));

  Graph p3 = testing::path(3);
  std::vector<Vertex> a2{2};
  auto flip = anchored_isomorphic(p3, p3, a0, a2);
  ASSERT_TRUE(flip);
  EXPECT_EQ(*flip, (std::vector<Vertex>{2, 1, 0}));

  EXPECT_FALSE(anchored_isomorphic(testing::complete(3), p3, a0, a0));
  std::vector<Vertex> two{0, 1};
  EXPECT_THROW(anchored_isomorphic(p3, p3, a0, two), InputError);
}

TEST(AnchoredIsomorphic, RespectsColorsWhenAsked) {
  Graph a = testing::path(3).with_colors({1, 2, 1});
  Graph b = testing::path(3).with_colors({2, 1, 1});
  std::vector<Vertex> none;
  EXPECT_TRUE(anchored_isomorphic(a, b, none, none));
  EXPECT_FALSE(anchored_isomorphic(a, b, none, none, {.match_colors = true}));
}

TEST(AnchoredIsomorphic, IdentityAndSymmetryOnRandomGraphs) {
  Rng rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    const int n = rng.uniform(1, 8);
    Graph g = testing::random_graph(rng, n, 40);
    std::vector<Vertex> anchors;
    for (int v = 0; v < n; ++v) {
      if (rng.chance(30)) anchors.push_back(v);
    }
    EXPECT_TRUE(anchored_isomorphic(g, g, anchors, anchors));

    std::vector<Vertex> perm;
    Graph h = rng.chance(50) ? testing::relabel(rng, g, perm) : testing::random_graph(rng, n, 40);
    if (perm.empty()) {
      perm.resize(n);
      for (int v = 0; v < n; ++v) perm[v] = v;
    }
    std::vector<Vertex> mapped;
    for (Vertex v : anchors) mapped.push_back(perm[v]);
    auto fwd = anchored_isomorphic(g, h, anchors, mapped);
    auto back = anchored_isomorphic(h, g, mapped, anchors);
    EXPECT_EQ(fwd.has_value(), back.has_value());
    if (fwd) {
      for (const Edge& e : g.edges()) EXPECT_TRUE(h.adjacent((*fwd)[e.u], (*fwd)[e.v]));
    }
  }
}

TEST(MakeSubset, SortsAndValidates) {
  Graph g(4);
  EXPECT_EQ(make_subset(g, {3, 1}), (VertexSubset{1, 3}));
  EXPECT_THROW(make_subset(g, {1, 1}), InputError);
  EXPECT_THROW(make_subset(g, {4}), InputError);
}

}  // namespace
}  // namespace viforge
