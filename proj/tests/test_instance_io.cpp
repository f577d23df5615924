#include <gtest/gtest.h>

#include "viforge/errors.hpp"
#include "viforge/instance_io.hpp"
#include "viforge/vertex_integrity.hpp"

namespace viforge {
namespace {

int parse_error_line(const std::string& text) {
  try {
    parse_instance_string(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(InstanceIo, ParsesEdge) {
  const auto inst = parse_instance_string("p 2 1\ne 0 1\n");
  EXPECT_EQ(inst.graph, Graph(2, {{0, 1}}));
}

TEST(InstanceIo, ParsesPrecolor) {
  const auto inst = parse_instance_string("p 3 2\ne 0 1\ne 1 2\npc 0 1\n");
  EXPECT_EQ(inst.graph, Graph(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(inst.precolor, (Coloring{1, 0, 0}));
}

TEST(InstanceIo, ParsesAllSections) {
  const auto inst = parse_instance_string(
      "# sample\np 4 2\ne 2 1 5  # weighted\ne 0 3 2\nc 0 1\nc 1 1\nc 2 1\nc 3 1\n"
      "col 0 1\ncol 1 2\ncol 2 1\ncol 3 2\nt 7 0\nt 7 3\nt 2 1\nt 2 2\nm 2 1\nm 1 2\nr 3\n");
  const Graph& g = inst.graph;
  ASSERT_EQ(g.size(), 2);
  EXPECT_EQ(g.weight(*g.edge_index(1, 2)), 5);
  EXPECT_EQ(g.weight(*g.edge_index(0, 3)), 2);
  EXPECT_EQ(g.capacities(), (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(g.colors(), (std::vector<int>{1, 2, 1, 2}));
  EXPECT_EQ(inst.terminals, (std::vector<VertexSubset>{{1, 2}, {0, 3}}));
  EXPECT_EQ(inst.motif, (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(inst.r, 3);
}

TEST(InstanceIo, ParsesSourceSections) {
  const auto inst = parse_instance_string("a 2\na 1\nb 3\nx 2\ntr 0 1 1\n");
  EXPECT_EQ(inst.items, (std::vector<std::int64_t>{2, 1}));
  EXPECT_EQ(inst.bins, 3);
  EXPECT_EQ(inst.tdm_n, 2);
  ASSERT_EQ(inst.triples.size(), 1u);
  EXPECT_EQ(inst.triples[0], (std::array<int, 3>{0, 1, 1}));
}

TEST(InstanceIo, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("p 2 1\ne 0 0\n"), 2);
  EXPECT_EQ(parse_error_line("p 2 2\ne 0 1\ne 1 0\n"), 3);
  EXPECT_EQ(parse_error_line("p 2 1\n\ne 0 2\n"), 3);
  EXPECT_EQ(parse_error_line("p 2 1\ne 0 1\nq 1\n"), 3);
  EXPECT_EQ(parse_error_line("e 0 1\n"), 1);
  EXPECT_EQ(parse_error_line("p 2 1\ne 0 x\n"), 2);
  EXPECT_EQ(parse_error_line("p 3 2\ne 0 1 4\ne 1 2\n"), 3);
  EXPECT_NE(parse_error_line("p 3 2\ne 0 1\n"), -1);
  EXPECT_NE(parse_error_line("p 2 0\ncol 0 1\n"), -1);
  EXPECT_EQ(parse_error_line("p 2 1\ne 0 1\n"), -1);
}

TEST(InstanceIo, RoundTripsGenerated) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GenerateOptions opt;
    opt.n = 3 + static_cast<int>(seed % 9);
    opt.k = 1 + static_cast<int>(seed % 4);
    opt.seed = seed;
    opt.colors = seed % 3 == 0 ? 3 : 0;
    opt.max_weight = seed % 2 == 0 ? 5 : 0;
    opt.capacities = seed % 5 == 0;
    opt.terminal_sets = static_cast<int>(seed % 3);
    for (const auto& inst : {generate_random_vi(opt), generate_random_vc(opt)}) {
      auto copy = inst;
      copy.r = static_cast<std::int64_t>(seed);
      copy.motif = {1, 1, 2};
      EXPECT_EQ(parse_instance_string(serialize_instance(copy)), copy);
    }
    for (const char* kind : {"bp", "partition", "3dm"}) {
      SourceOptions src;
      src.kind = kind;
      src.seed = seed;
      const auto inst = generate_reduction_source(src);
      EXPECT_EQ(parse_instance_string(serialize_instance(inst)), inst);
    }
  }
}

TEST(InstanceIo, GeneratorIsDeterministic) {
  GenerateOptions opt;
  opt.k = 3;
  opt.n = 20;
  opt.seed = 7;
  EXPECT_EQ(serialize_instance(generate_random_vi(opt)), serialize_instance(generate_random_vi(opt)));
  EXPECT_EQ(instance_hash(generate_random_vi(opt)), instance_hash(generate_random_vi(opt)));
  opt.seed = 8;
  const auto other = generate_random_vi(opt);
  opt.seed = 7;
  EXPECT_NE(serialize_instance(other), serialize_instance(generate_random_vi(opt)));
}

TEST(InstanceIo, RandomViRespectsBound) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenerateOptions opt;
    opt.k = 1 + static_cast<int>(seed % 4);
    opt.n = 12;
    opt.density = 70;
    opt.seed = seed;
    EXPECT_LE(vertex_integrity(generate_random_vi(opt).graph).k, opt.k) << seed;
  }
}

TEST(InstanceIo, RandomVcRespectsBound) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenerateOptions opt;
    opt.k = 2;
    opt.n = 12;
    opt.density = 80;
    opt.seed = seed;
    EXPECT_LE(vertex_cover_min(generate_random_vc(opt).graph).size(), 2u) << seed;
  }
}

TEST(InstanceIo, SourcesAreWellFormed) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    SourceOptions bp{"bp", 7, 3, 4, 0, seed};
    const auto b = generate_reduction_source(bp);
    std::int64_t total = 0;
    for (auto a : b.items) total += a;
    EXPECT_EQ(total % 3, 0);
    SourceOptions part{"partition", 6, 0, 5, 0, seed};
    const auto p = generate_reduction_source(part);
    total = 0;
    for (auto a : p.items) total += a;
    EXPECT_EQ(total % 2, 0);
  }
  EXPECT_THROW(generate_reduction_source({"nope"}), InputError);
}

TEST(InstanceIo, HashIsFnv1a) {
  EXPECT_EQ(fnv1a(""), 14695981039346656037ull);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(hash_hex(0xaf63dc4c8601ec8cull), "af63dc4c8601ec8c");
}

}  // namespace
}  // namespace viforge
