#pragma once

#include <optional>

#include "viforge/graph.hpp"
#include "viforge/problems.hpp"

namespace viforge {

// Proper r-coloring that keeps every precolored vertex (precolor[v] != 0),
// or nullopt. Throws InputError on r < 1, a wrong-sized precoloring or a
// precolor outside 1..r.
std::optional<Coloring> precoloring_extension_vi(const Graph& g, const Coloring& precolor, int r);

// Proper r-coloring whose class sizes all lie in {floor(n/r), ceil(n/r)}, or
// nullopt. Throws InputError on r < 1.
std::optional<Coloring> equitable_coloring_vi(const Graph& g, int r);

// Partition into r connected parts of sizes floor(n/r) or ceil(n/r), or
// nullopt (also when r > n). Parts are sorted and listed by smallest vertex.
// Throws InputError on r < 1.
std::optional<Partition> equitable_connected_partition_vi(const Graph& g, int r);

}  // namespace viforge
