#pragma once

#include "viforge/graph.hpp"
#include "viforge/problems.hpp"

namespace viforge {

// Maximum common subgraph by edge count. Guesses how separators of both
// graphs are used, fixes the map on the resulting anchor sets, and solves an
// ILP over piece decompositions of the remaining components.
CommonSubgraphWitness mcs_vi(const Graph& g1, const Graph& g2);

// Maximum common induced subgraph by vertex count; same pipeline with
// induced pieces and an isomorphism check on the anchors.
CommonSubgraphWitness mcis_vi(const Graph& g1, const Graph& g2);

}  // namespace viforge
