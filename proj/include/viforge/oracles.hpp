#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "viforge/graph.hpp"
#include "viforge/problems.hpp"

// Exhaustive reference solvers and certificate checkers. Nothing here calls
// into the solver modules; only graph-core is shared.
namespace viforge::oracle {

struct OracleBudget {
  int max_vertices = 8;
  int max_edges = 10;
  std::int64_t max_orderings = 40320;

  // Defaults overridden by VIFORGE_ORACLE_MAX_VERTICES,
  // VIFORGE_ORACLE_MAX_EDGES and VIFORGE_ORACLE_MAX_ORDERINGS.
  static OracleBudget from_env();
};

struct Verdict {
  bool ok = false;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

// Each oracle throws BudgetExceeded when its instance is larger than the
// budget allows. Enumeration orders are lexicographic.

int vertex_integrity(const Graph& g, const OracleBudget& b = {});
int treedepth(const Graph& g, const OracleBudget& b = {});
int vertex_cover_number(const Graph& g, const OracleBudget& b = {});
std::pair<std::int64_t, LinearOrdering> imbalance(const Graph& g, const OracleBudget& b = {});
std::pair<int, LinearOrdering> bandwidth(const Graph& g, const OracleBudget& b = {});
CommonSubgraphWitness mcs(const Graph& g1, const Graph& g2, const OracleBudget& b = {});
CommonSubgraphWitness mcis(const Graph& g1, const Graph& g2, const OracleBudget& b = {});
// nullopt when even V(G) is not a feasible cover.
std::optional<CapacitatedCoverWitness> cvc(const Graph& g, const OracleBudget& b = {});
CapacitatedDominationWitness cds(const Graph& g, const OracleBudget& b = {});
std::optional<Coloring> precoloring(const Graph& g, const Coloring& precolor, int r,
                                    const OracleBudget& b = {});
std::optional<Coloring> eqcoloring(const Graph& g, int r, const OracleBudget& b = {});
std::optional<Partition> ecp(const Graph& g, int r, const OracleBudget& b = {});
std::optional<VertexSubset> motif(const MotifInstance& m, const OracleBudget& b = {});
std::optional<Orientation> mmoo(const MmooInstance& inst, const OracleBudget& b = {});
std::optional<SteinerSolution> steiner_forest(const SteinerInstance& si,
                                              const OracleBudget& b = {});
// Unit-weight optimum (edge count).
std::optional<SteinerSolution> usf(const SteinerInstance& si, const OracleBudget& b = {});
// Bins S_1..S_t, each summing to exactly sum/t.
std::optional<std::vector<std::vector<int>>> bin_packing(const BinPackingInstance& bp,
                                                         const OracleBudget& b = {});
// Balanced partition: n/2 items summing to half the total.
std::optional<std::vector<int>> partition(const std::vector<std::int64_t>& items,
                                          const OracleBudget& b = {});
// Indices of n pairwise disjoint triples.
std::optional<std::vector<int>> three_dm(const ThreeDmInstance& tdm, const OracleBudget& b = {});

Verdict verify_vi_set(const Graph& g, const VertexSubset& s, int k);
Verdict verify_imbalance(const Graph& g, const LinearOrdering& order, std::int64_t value);
Verdict verify_mcs(const Graph& g1, const Graph& g2, const CommonSubgraphWitness& w);
Verdict verify_mcis(const Graph& g1, const Graph& g2, const CommonSubgraphWitness& w);
Verdict verify_cvc(const Graph& g, const CapacitatedCoverWitness& w);
Verdict verify_cds(const Graph& g, const CapacitatedDominationWitness& w);
Verdict verify_precoloring(const Graph& g, const Coloring& precolor, int r, const Coloring& c);
Verdict verify_eqcoloring(const Graph& g, int r, const Coloring& c);
Verdict verify_ecp(const Graph& g, int r, const Partition& p);
Verdict verify_motif(const MotifInstance& m, const VertexSubset& s);
Verdict verify_mmoo(const MmooInstance& inst, const Orientation& o);
Verdict verify_steiner_forest(const SteinerInstance& si, const SteinerSolution& sol);
Verdict verify_bin_packing(const BinPackingInstance& bp, const std::vector<std::vector<int>>& bins);
Verdict verify_partition(const std::vector<std::int64_t>& items, const std::vector<int>& half);
Verdict verify_three_dm(const ThreeDmInstance& tdm, const std::vector<int>& chosen);

}  // namespace viforge::oracle
