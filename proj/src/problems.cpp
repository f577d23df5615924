#include "viforge/problems.hpp"

#include <algorithm>

#include "viforge/errors.hpp"

namespace viforge {

void validate_steiner(const SteinerInstance& si) {
  std::vector<char> used(si.graph.order(), 0);
  for (const auto& t : si.terminals) {
    if (t.size() < 2) throw InputError("terminal sets need at least two vertices");
    for (Vertex v : t) {
      if (v < 0 || v >= si.graph.order()) throw InputError("terminal out of range");
      if (used[v]) throw InputError("terminal sets overlap at vertex " + std::to_string(v));
      used[v] = 1;
    }
  }
}

void validate_motif(const MotifInstance& m) {
  if (!m.graph.has_colors()) throw InputError("motif instance needs vertex colors");
  if (!std::is_sorted(m.motif.begin(), m.motif.end())) throw InputError("motif must be sorted");
}

}  // namespace viforge
