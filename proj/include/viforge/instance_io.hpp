#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "viforge/graph.hpp"
#include "viforge/problems.hpp"

namespace viforge {

// Plain-text instance. Line tags:
//   p n m          header (required when any vertex or edge line appears)
//   e u v [w]      edge, optional positive weight (all edges or none)
//   c v cap        vertex capacity (all vertices or none)
//   col v color    vertex color (all vertices or none)
//   pc v color     precolor, 1-based color
//   t id v         terminal v in set id
//   m color count  motif multiplicity
//   r value        target (MMOO bound, number of colors or parts)
//   a value        bin packing / partition item
//   b t            number of bins
//   x n            3DM ground set size
//   tr x y z       3DM triple
//   # ...          comment
struct InstanceFile {
  Graph graph;
  std::optional<std::int64_t> r;
  Coloring precolor;  // empty when absent
  std::vector<VertexSubset> terminals;  // ascending set id
  std::vector<int> motif;               // sorted
  std::vector<std::int64_t> items;
  std::optional<int> bins;
  std::optional<int> tdm_n;
  std::vector<std::array<int, 3>> triples;

  bool operator==(const InstanceFile&) const = default;
};

// Throws ParseError (with a 1-based line number) on malformed input.
InstanceFile parse_instance(std::istream& in);
InstanceFile parse_instance_string(const std::string& text);
// Throws InputError when the file cannot be read.
InstanceFile parse_instance_file(const std::string& path);

// Canonical text; parse_instance_string(serialize_instance(x)) == x.
std::string serialize_instance(const InstanceFile& inst);

std::uint64_t fnv1a(std::string_view bytes);
// 64-bit FNV-1a of the canonical text.
std::uint64_t instance_hash(const InstanceFile& inst);
std::string hash_hex(std::uint64_t h);

MotifInstance as_motif(const InstanceFile& inst);
MmooInstance as_mmoo(const InstanceFile& inst);
SteinerInstance as_steiner(const InstanceFile& inst);
BinPackingInstance as_bin_packing(const InstanceFile& inst);
ThreeDmInstance as_three_dm(const InstanceFile& inst);

InstanceFile from_motif(const MotifInstance& m);
InstanceFile from_mmoo(const MmooInstance& m);
InstanceFile from_steiner(const SteinerInstance& s);

struct GenerateOptions {
  int n = 8;
  int k = 3;            // vi bound (random-vi) or cover size (random-vc)
  int density = 50;     // edge percentage
  int colors = 0;       // palette size; 0 = no colors
  int max_weight = 0;   // 0 = unweighted
  bool capacities = false;
  int terminal_sets = 0;
  std::uint64_t seed = 1;
};

// Graph with vertex integrity at most k: a separator of size < k plus
// components of size at most k - |S|.
InstanceFile generate_random_vi(const GenerateOptions& opt);
// Graph whose first |S| <= k vertices cover every edge.
InstanceFile generate_random_vc(const GenerateOptions& opt);

struct SourceOptions {
  std::string kind;  // "bp", "partition" or "3dm"
  int n = 6;         // items, or the 3DM ground set size
  int t = 3;         // bins
  int max_item = 3;
  int triples = 4;
  std::uint64_t seed = 1;
};

// Source instances for the reductions; bin packing items are drawn until the
// total is divisible by t, partition items until the total is even.
InstanceFile generate_reduction_source(const SourceOptions& opt);

}  // namespace viforge
