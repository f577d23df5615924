#pragma once

#include <cstdint>

#include "viforge/graph.hpp"
#include "viforge/problems.hpp"

namespace viforge {

struct ImbalanceResult {
  std::int64_t value = 0;
  LinearOrdering ordering;
};

// Sum over vertices of |#left neighbors - #right neighbors|. Throws
// InputError when `order` is not a permutation of V(g).
std::int64_t imbalance_of(const Graph& g, const LinearOrdering& order);

// Minimum imbalance with a witnessing ordering. Guesses the relative order of
// a vi(k)-set S and solves one ILP over (type, relative ordering) counts per
// guess.
ImbalanceResult imbalance_vi(const Graph& g);

}  // namespace viforge
