#pragma once

#include <optional>

#include "viforge/graph.hpp"
#include "viforge/problems.hpp"

namespace viforge {

// Minimum capacitated vertex cover, or nullopt when even V(g) cannot cover
// every edge within the capacities. Requires capacities with c(v) <= deg(v)
// for every non-isolated vertex; throws InputError otherwise.
std::optional<CapacitatedCoverWitness> cvc_vi(const Graph& g);

// Minimum capacitated dominating set. Requires capacities.
CapacitatedDominationWitness cds_vi(const Graph& g);

// Decision forms: is there a solution of size at most k?
bool cvc_at_most(const Graph& g, int k);
bool cds_at_most(const Graph& g, int k);

}  // namespace viforge
