#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "viforge/graph.hpp"
#include "viforge/problems.hpp"

namespace viforge {

// Connected vertex set whose color multiset equals the motif, or nullopt.
// Throws PreconditionError when the vertex integrity exceeds 3 and
// InputError on a malformed instance.
std::optional<VertexSubset> graph_motif_vi3(const MotifInstance& m);

struct BipartiteMultigraph {
  int left = 0;
  int right = 0;
  struct Link {
    int l = 0;
    int r = 0;
    int multiplicity = 1;
  };
  std::vector<Link> links;
};

// Number of copies taken of each link so that every left vertex i has
// degree at most at_most[i] and every right vertex j degree exactly
// exactly[j], or nullopt. Solved as a maximum flow; deterministic.
std::optional<std::vector<int>> degree_constrained_subgraph(const BipartiteMultigraph& h,
                                                            const std::vector<int>& at_most,
                                                            const std::vector<int>& exactly);

// Orientation with every out-weight at most inst.r, or nullopt. Throws
// PreconditionError when the vertex cover number exceeds 2.
std::optional<Orientation> binary_mmoo_vc2(const MmooInstance& inst);

// Minimum-weight forest joining every terminal set, or nullopt when some set
// spans several components of the graph. Time n^O(vc).
std::optional<SteinerSolution> steiner_forest_xp_vc(const SteinerInstance& si);

struct UsfKernelStep {
  // 1: terminal dropped from a set; 2: two sets merged; 3: vertex deleted.
  int rule = 0;
  Vertex vertex = -1;          // original id (rules 1 and 3)
  std::vector<Vertex> twins;   // same-neighborhood set members left behind (rule 1)
  int set_a = -1, set_b = -1;  // merged set indices at the time of the step (rule 2)
};

struct UsfKernel {
  SteinerInstance instance;         // on kernel vertex ids
  std::vector<Vertex> to_original;  // kernel vertex -> original vertex
  VertexSubset cover;               // vertex cover used, original ids
  std::int64_t budget_delta = 0;    // optimum(original) = optimum(kernel) + delta
  std::vector<UsfKernelStep> trace;
};

// Applies the three twin rules round robin until none fires. Requires unit
// weights (InputError otherwise). Uses a minimum vertex cover unless one is
// supplied.
UsfKernel usf_kernelize(const SteinerInstance& si,
                        const std::optional<VertexSubset>& cover = std::nullopt);

// Maps a kernel solution back to the original instance.
SteinerSolution usf_lift(const SteinerInstance& original, const UsfKernel& kernel,
                         const SteinerSolution& kernel_solution);

// Kernelizes, solves the kernel exactly and lifts the result.
std::optional<SteinerSolution> usf_solve(const SteinerInstance& si);

}  // namespace viforge
