#include "viforge/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "viforge/errors.hpp"

namespace viforge::oracle {

namespace {

using Mask = std::uint32_t;

void need_vertices(int n, const OracleBudget& b, const char* what) {
  if (n > b.max_vertices || n > 30) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(n) + " vertices exceed budget " +
                         std::to_string(b.max_vertices));
  }
}

void need_edges(int m, const OracleBudget& b, const char* what) {
  if (m > b.max_edges || m > 62) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(m) + " edges exceed budget " +
                         std::to_string(b.max_edges));
  }
}

// Number of injections of a k-set into an n-set, saturating.
std::int64_t falling(int n, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) {
    r *= n - i;
    if (r > (std::int64_t{1} << 50)) return std::int64_t{1} << 50;
  }
  return r;
}

void need_orderings(std::int64_t count, const OracleBudget& b, const char* what) {
  if (count > b.max_orderings) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(count) +
                         " orderings exceed budget " + std::to_string(b.max_orderings));
  }
}

Mask neighbor_mask(const Graph& g, Vertex v) {
  Mask m = 0;
  for (Vertex w : g.neighbors(v)) m |= Mask{1} << w;
  return m;
}

std::vector<Mask> neighbor_masks(const Graph& g) {
  std::vector<Mask> nb(g.order());
  for (Vertex v = 0; v < g.order(); ++v) nb[v] = neighbor_mask(g, v);
  return nb;
}

// Connected pieces of the subgraph induced by `alive`.
std::vector<Mask> mask_components(const std::vector<Mask>& nb, Mask alive) {
  std::vector<Mask> out;
  Mask rest = alive;
  while (rest) {
    Mask comp = rest & (~rest + 1);
    Mask frontier = comp;
    while (frontier) {
      Mask next = 0;
      for (Mask f = frontier; f; f &= f - 1) next |= nb[std::countr_zero(f)];
      next &= alive & ~comp;
      comp |= next;
      frontier = next;
    }
    out.push_back(comp);
    rest &= ~comp;
  }
  return out;
}

bool mask_connected(const std::vector<Mask>& nb, Mask s) {
  return s != 0 && mask_components(nb, s).size() == 1;
}

VertexSubset mask_to_subset(Mask m) {
  VertexSubset s;
  for (; m; m &= m - 1) s.push_back(std::countr_zero(m));
  return s;
}

// Assigns each demand to one allowed server within capacities, by augmenting
// paths. Returns server per demand, or nullopt.
std::optional<std::vector<int>> assign_with_capacities(const std::vector<std::vector<int>>& allowed,
                                                       std::vector<int> capacity) {
  const int demands = static_cast<int>(allowed.size());
  const int servers = static_cast<int>(capacity.size());
  std::vector<int> assigned(demands, -1);
  std::vector<std::vector<int>> holders(servers);
  for (int d = 0; d < demands; ++d) {
    std::vector<char> visited(servers, 0);
    std::function<bool(int)> augment = [&](int demand) -> bool {
      for (int s : allowed[demand]) {
        if (visited[s]) continue;
        visited[s] = 1;
        if (static_cast<int>(holders[s].size()) < capacity[s]) {
          holders[s].push_back(demand);
          assigned[demand] = s;
          return true;
        }
        for (std::size_t i = 0; i < holders[s].size(); ++i) {
          const int other = holders[s][i];
          if (augment(other)) {
            holders[s][i] = demand;
            assigned[demand] = s;
            return true;
          }
        }
      }
      return false;
    };
    if (!augment(d)) return std::nullopt;
  }
  return assigned;
}

// Calls visit(mask) for all k-subsets of n elements in increasing mask order
// within each size, sizes ascending; stops when visit returns true.
bool subsets_by_size(int n, const std::function<bool(Mask)>& visit) {
  for (int k = 0; k <= n; ++k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Mask m = 0;
      for (int i : idx) m |= Mask{1} << i;
      if (visit(m)) return true;
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return false;
}

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  long x = std::strtol(v, &end, 10);
  if (*end != '\0' || x <= 0) return fallback;
  return static_cast<int>(x);
}

}  // namespace

OracleBudget OracleBudget::from_env() {
  OracleBudget b;
  b.max_vertices = env_int("VIFORGE_ORACLE_MAX_VERTICES", b.max_vertices);
  b.max_edges = env_int("VIFORGE_ORACLE_MAX_EDGES", b.max_edges);
  b.max_orderings = env_int("VIFORGE_ORACLE_MAX_ORDERINGS", static_cast<int>(b.max_orderings));
  return b;
}

int vertex_integrity(const Graph& g, const OracleBudget& b) {
  need_vertices(g.order(), b, "vertex_integrity");
  const int n = g.order();
  const auto nb = neighbor_masks(g);
  int best = n;
  const Mask all = n == 0 ? 0 : (Mask{1} << n) - 1;
  for (Mask s = 0; s <= all; ++s) {
    int biggest = 0;
    for (Mask c : mask_components(nb, all & ~s)) biggest = std::max(biggest, std::popcount(c));
    best = std::min(best, std::popcount(s) + biggest);
    if (s == all) break;
  }
  return best;
}

int treedepth(const Graph& g, const OracleBudget& b) {
  need_vertices(g.order(), b, "treedepth");
  const auto nb = neighbor_masks(g);
  std::map<Mask, int> memo;
  std::function<int(Mask)> td = [&](Mask s) -> int {
    if (s == 0) return 0;
    if (std::popcount(s) == 1) return 1;
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    auto comps = mask_components(nb, s);
    int result;
    if (comps.size() > 1) {
      result = 0;
      for (Mask c : comps) result = std::max(result, td(c));
    } else {
      result = std::popcount(s);
      for (Mask rest = s; rest; rest &= rest - 1) {
        result = std::min(result, 1 + td(s & ~(rest & (~rest + 1))));
      }
    }
    memo[s] = result;
    return result;
  };
  const Mask all = g.order() == 0 ? 0 : (Mask{1} << g.order()) - 1;
  return td(all);
}

int vertex_cover_number(const Graph& g, const OracleBudget& b) {
  need_vertices(g.order(), b, "vertex_cover");
  int best = g.order();
  subsets_by_size(g.order(), [&](Mask s) {
    for (const Edge& e : g.edges()) {
      if (!((s >> e.u) & 1) && !((s >> e.v) & 1)) return false;
    }
    best = std::popcount(s);
    return true;
  });
  return best;
}

std::pair<std::int64_t, LinearOrdering> imbalance(const Graph& g, const OracleBudget& b) {
  const int n = g.order();
  need_orderings(falling(n, n), b, "imbalance");
  LinearOrdering order(n), best_order;
  std::iota(order.begin(), order.end(), 0);
  std::int64_t best = -1;
  std::vector<int> pos(n);
  do {
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::int64_t total = 0;
    for (Vertex v = 0; v < n; ++v) {
      int left = 0, right = 0;
      for (Vertex w : g.neighbors(v)) (pos[w] < pos[v] ? left : right)++;
      total += std::abs(left - right);
    }
    if (best < 0 || total < best) {
      best = total;
      best_order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {std::max<std::int64_t>(best, 0), best_order};
}

std::pair<int, LinearOrdering> bandwidth(const Graph& g, const OracleBudget& b) {
  const int n = g.order();
  need_orderings(falling(n, n), b, "bandwidth");
  LinearOrdering order(n), best_order;
  std::iota(order.begin(), order.end(), 0);
  int best = -1;
  std::vector<int> pos(n);
  do {
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    int stretch = 0;
    for (const Edge& e : g.edges()) stretch = std::max(stretch, std::abs(pos[e.u] - pos[e.v]));
    if (best < 0 || stretch < best) {
      best = stretch;
      best_order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {std::max(best, 0), best_order};
}

namespace {

// Best injection of all of `small` into `large` maximizing preserved edges.
std::pair<int, std::vector<Vertex>> best_edge_injection(const Graph& small, const Graph& large) {
  const int n = small.order();
  std::vector<Vertex> map(n, -1), best_map(n, -1);
  std::vector<char> used(large.order(), 0);
  int best = -1;
  std::function<void(int, int)> dfs = [&](int v, int count) {
    if (v == n) {
      if (count > best) {
        best = count;
        best_map = map;
      }
      return;
    }
    for (Vertex w = 0; w < large.order(); ++w) {
      if (used[w]) continue;
      int gained = 0;
      for (Vertex u : small.neighbors(v)) {
        if (u < v && large.adjacent(map[u], w)) ++gained;
      }
      used[w] = 1;
      map[v] = w;
      dfs(v + 1, count + gained);
      map[v] = -1;
      used[w] = 0;
    }
  };
  dfs(0, 0);
  return {std::max(best, 0), best_map};
}

}  // namespace

CommonSubgraphWitness mcs(const Graph& g1, const Graph& g2, const OracleBudget& b) {
  const bool forward = g1.order() <= g2.order();
  const Graph& small = forward ? g1 : g2;
  const Graph& large = forward ? g2 : g1;
  need_orderings(falling(large.order(), small.order()), b, "mcs");
  auto [value, map] = best_edge_injection(small, large);
  CommonSubgraphWitness w;
  w.value = value;
  w.mapping.assign(g1.order(), -1);
  for (Vertex v = 0; v < small.order(); ++v) {
    if (forward) {
      w.mapping[v] = map[v];
    } else {
      w.mapping[map[v]] = v;
    }
  }
  return w;
}

CommonSubgraphWitness mcis(const Graph& g1, const Graph& g2, const OracleBudget& b) {
  need_vertices(g1.order(), b, "mcis");
  need_vertices(g2.order(), b, "mcis");
  const int n = g1.order();
  std::vector<Vertex> map(n, -1);
  CommonSubgraphWitness best;
  best.mapping = map;
  std::vector<char> used(g2.order(), 0);
  std::function<void(int, int)> dfs = [&](int v, int count) {
    if (count + (n - v) <= best.value) return;
    if (v == n) {
      if (count > best.value) {
        best.value = count;
        best.mapping = map;
      }
      return;
    }
    for (Vertex w = 0; w < g2.order(); ++w) {
      if (used[w]) continue;
      bool ok = true;
      for (Vertex u = 0; u < v && ok; ++u) {
        if (map[u] >= 0 && g1.adjacent(u, v) != g2.adjacent(map[u], w)) ok = false;
      }
      if (!ok) continue;
      used[w] = 1;
      map[v] = w;
      dfs(v + 1, count + 1);
      map[v] = -1;
      used[w] = 0;
    }
    dfs(v + 1, count);
  };
  dfs(0, 0);
  return best;
}

std::optional<CapacitatedCoverWitness> cvc(const Graph& g, const OracleBudget& b) {
  need_vertices(g.order(), b, "cvc");
  if (!g.has_capacities()) throw InputError("cvc needs vertex capacities");
  std::optional<CapacitatedCoverWitness> result;
  subsets_by_size(g.order(), [&](Mask s) {
    std::vector<std::vector<int>> allowed;
    for (const Edge& e : g.edges()) {
      std::vector<int> ends;
      if ((s >> e.u) & 1) ends.push_back(e.u);
      if ((s >> e.v) & 1) ends.push_back(e.v);
      if (ends.empty()) return false;
      allowed.push_back(ends);
    }
    auto assigned = assign_with_capacities(allowed, g.capacities());
    if (!assigned) return false;
    result = CapacitatedCoverWitness{mask_to_subset(s), *assigned};
    return true;
  });
  return result;
}

CapacitatedDominationWitness cds(const Graph& g, const OracleBudget& b) {
  need_vertices(g.order(), b, "cds");
  if (!g.has_capacities()) throw InputError("cds needs vertex capacities");
  CapacitatedDominationWitness result;
  subsets_by_size(g.order(), [&](Mask s) {
    std::vector<std::vector<int>> allowed;
    std::vector<Vertex> outside;
    for (Vertex v = 0; v < g.order(); ++v) {
      if ((s >> v) & 1) continue;
      std::vector<int> doms;
      for (Vertex w : g.neighbors(v)) {
        if ((s >> w) & 1) doms.push_back(w);
      }
      if (doms.empty()) return false;
      allowed.push_back(doms);
      outside.push_back(v);
    }
    auto assigned = assign_with_capacities(allowed, g.capacities());
    if (!assigned) return false;
    result.dset = mask_to_subset(s);
    result.assignment.assign(g.order(), -1);
    for (std::size_t i = 0; i < outside.size(); ++i) result.assignment[outside[i]] = (*assigned)[i];
    return true;
  });
  return result;
}

std::optional<Coloring> precoloring(const Graph& g, const Coloring& precolor, int r,
                                    const OracleBudget& b) {
  need_vertices(g.order(), b, "precoloring");
  const int n = g.order();
  if (static_cast<int>(precolor.size()) != n) throw InputError("precolor size mismatch");
  for (int c : precolor) {
    if (c < 0 || c > r) throw InputError("precolor out of range");
  }
  Coloring col(n, 0);
  std::function<bool(int)> dfs = [&](int v) -> bool {
    if (v == n) return true;
    const int lo = precolor[v] ? precolor[v] : 1;
    const int hi = precolor[v] ? precolor[v] : r;
    for (int c = lo; c <= hi; ++c) {
      bool ok = true;
      for (Vertex w : g.neighbors(v)) {
        if (w < v && col[w] == c) ok = false;
      }
      if (!ok) continue;
      col[v] = c;
      if (dfs(v + 1)) return true;
      col[v] = 0;
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  return col;
}

std::optional<Coloring> eqcoloring(const Graph& g, int r, const OracleBudget& b) {
  need_vertices(g.order(), b, "eqcoloring");
  if (r < 1) throw InputError("r must be positive");
  const int n = g.order();
  const int lo = n / r, hi = (n + r - 1) / r;
  Coloring col(n, 0);
  std::vector<int> size(r + 1, 0);
  std::function<bool(int, int)> dfs = [&](int v, int used) -> bool {
    int deficit = 0;
    for (int c = 1; c <= r; ++c) deficit += std::max(0, lo - size[c]);
    if (deficit > n - v) return false;
    if (v == n) return true;
    for (int c = 1; c <= std::min(r, used + 1); ++c) {
      if (size[c] >= hi) continue;
      bool ok = true;
      for (Vertex w : g.neighbors(v)) {
        if (w < v && col[w] == c) ok = false;
      }
      if (!ok) continue;
      col[v] = c;
      ++size[c];
      if (dfs(v + 1, std::max(used, c))) return true;
      --size[c];
      col[v] = 0;
    }
    return false;
  };
  if (!dfs(0, 0)) return std::nullopt;
  return col;
}

std::optional<Partition> ecp(const Graph& g, int r, const OracleBudget& b) {
  need_vertices(g.order(), b, "ecp");
  if (r < 1) throw InputError("r must be positive");
  const int n = g.order();
  if (r > n) return std::nullopt;
  const int lo = n / r, hi = (n + r - 1) / r;
  const auto nb = neighbor_masks(g);
  std::vector<Mask> parts(r, 0);
  std::function<bool(int, int)> dfs = [&](int v, int used) -> bool {
    if (v == n) {
      if (used != r) return false;
      for (Mask p : parts) {
        const int s = std::popcount(p);
        if (s < lo || s > hi || !mask_connected(nb, p)) return false;
      }
      return true;
    }
    if (r - used > n - v) return false;
    for (int p = 0; p < std::min(r, used + 1); ++p) {
      if (std::popcount(parts[p]) >= hi) continue;
      parts[p] |= Mask{1} << v;
      if (dfs(v + 1, std::max(used, p + 1))) return true;
      parts[p] &= ~(Mask{1} << v);
    }
    return false;
  };
  if (!dfs(0, 0)) return std::nullopt;
  Partition out;
  for (Mask p : parts) out.push_back(mask_to_subset(p));
  return out;
}

std::optional<VertexSubset> motif(const MotifInstance& m, const OracleBudget& b) {
  const Graph& g = m.graph;
  need_vertices(g.order(), b, "motif");
  if (!g.has_colors()) throw InputError("motif needs vertex colors");
  std::vector<int> want = m.motif;
  std::sort(want.begin(), want.end());
  const auto nb = neighbor_masks(g);
  const int k = static_cast<int>(want.size());
  if (k == 0 || k > g.order()) return std::nullopt;
  const Mask all = (Mask{1} << g.order()) - 1;
  for (Mask s = 1; s <= all; ++s) {
    if (std::popcount(s) != k) continue;
    std::vector<int> got;
    for (Vertex v : mask_to_subset(s)) got.push_back(g.color(v));
    std::sort(got.begin(), got.end());
    if (got == want && mask_connected(nb, s)) return mask_to_subset(s);
  }
  return std::nullopt;
}

std::optional<Orientation> mmoo(const MmooInstance& inst, const OracleBudget& b) {
  const Graph& g = inst.graph;
  need_edges(g.size(), b, "mmoo");
  const int n = g.order(), m = g.size();
  // Edge order: repeatedly take the remaining vertex of smallest degree and
  // emit its unprocessed edges, so vertices retire early.
  std::vector<int> order;
  {
    std::vector<int> deg(n);
    for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::vector<char> gone(n, 0), emitted(m, 0);
    for (int round = 0; round < n; ++round) {
      Vertex pick = -1;
      for (Vertex v = 0; v < n; ++v) {
        if (!gone[v] && (pick < 0 || deg[v] < deg[pick])) pick = v;
      }
      gone[pick] = 1;
      for (Vertex w : g.neighbors(pick)) {
        const int e = *g.edge_index(pick, w);
        if (!emitted[e]) {
          emitted[e] = 1;
          order.push_back(e);
          --deg[w];
        }
      }
    }
  }
  // last[v] = position in `order` of v's last edge.
  std::vector<int> last(n, -1);
  for (int i = 0; i < m; ++i) {
    const Edge& e = g.edges()[order[i]];
    last[e.u] = last[e.v] = i;
  }
  std::vector<std::int64_t> load(n, 0);
  Orientation tail(m, -1);
  std::vector<std::set<std::vector<std::int64_t>>> failed(m + 1);
  std::function<bool(int)> dfs = [&](int i) -> bool {
    if (i == m) return true;
    std::vector<std::int64_t> key;
    for (Vertex v = 0; v < n; ++v) {
      if (last[v] >= i) key.push_back(load[v]);
    }
    if (failed[i].count(key)) return false;
    const Edge& e = g.edges()[order[i]];
    const std::int64_t w = g.weight(order[i]);
    for (Vertex t : {e.u, e.v}) {
      if (load[t] + w > inst.r) continue;
      load[t] += w;
      tail[order[i]] = t;
      if (dfs(i + 1)) return true;
      load[t] -= w;
    }
    tail[order[i]] = -1;
    failed[i].insert(std::move(key));
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  return tail;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::optional<SteinerSolution> steiner_enumerate(const SteinerInstance& si, bool unit,
                                                 const OracleBudget& b, const char* what) {
  const Graph& g = si.graph;
  need_edges(g.size(), b, what);
  const int m = g.size();
  std::optional<SteinerSolution> best;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    std::int64_t w = 0;
    Dsu dsu(g.order());
    for (int e = 0; e < m; ++e) {
      if ((s >> e) & 1) {
        w += unit ? 1 : g.weight(e);
        dsu.unite(g.edges()[e].u, g.edges()[e].v);
      }
    }
    if (best && w >= best->weight) continue;
    bool ok = true;
    for (const auto& t : si.terminals) {
      for (Vertex v : t) ok = ok && dsu.find(v) == dsu.find(t.front());
    }
    if (!ok) continue;
    SteinerSolution sol;
    sol.weight = w;
    for (int e = 0; e < m; ++e) {
      if ((s >> e) & 1) sol.edges.push_back(e);
    }
    best = sol;
  }
  return best;
}

}  // namespace

std::optional<SteinerSolution> steiner_forest(const SteinerInstance& si, const OracleBudget& b) {
  validate_steiner(si);
  return steiner_enumerate(si, false, b, "steiner_forest");
}

std::optional<SteinerSolution> usf(const SteinerInstance& si, const OracleBudget& b) {
  validate_steiner(si);
  return steiner_enumerate(si, true, b, "usf");
}

std::optional<std::vector<std::vector<int>>> bin_packing(const BinPackingInstance& bp,
                                                         const OracleBudget& b) {
  const int n = static_cast<int>(bp.items.size());
  need_vertices(n, b, "bin_packing");
  if (bp.t < 1) throw InputError("bin count must be positive");
  std::int64_t total = std::accumulate(bp.items.begin(), bp.items.end(), std::int64_t{0});
  if (total % bp.t != 0) return std::nullopt;
  const std::int64_t cap = total / bp.t;
  std::vector<std::int64_t> fill(bp.t, 0);
  std::vector<int> bin(n, -1);
  std::function<bool(int, int)> dfs = [&](int i, int used) -> bool {
    if (i == n) {
      for (auto f : fill) {
        if (f != cap) return false;
      }
      return true;
    }
    for (int j = 0; j < std::min(bp.t, used + 1); ++j) {
      if (fill[j] + bp.items[i] > cap) continue;
      fill[j] += bp.items[i];
      bin[i] = j;
      if (dfs(i + 1, std::max(used, j + 1))) return true;
      fill[j] -= bp.items[i];
    }
    return false;
  };
  if (!dfs(0, 0)) return std::nullopt;
  std::vector<std::vector<int>> bins(bp.t);
  for (int i = 0; i < n; ++i) bins[bin[i]].push_back(i);
  return bins;
}

std::optional<std::vector<int>> partition(const std::vector<std::int64_t>& items,
                                          const OracleBudget& b) {
  const int n = static_cast<int>(items.size());
  need_vertices(n, b, "partition");
  if (n % 2 != 0) return std::nullopt;
  const std::int64_t total = std::accumulate(items.begin(), items.end(), std::int64_t{0});
  if (total % 2 != 0) return std::nullopt;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    if (std::popcount(s) != n / 2) continue;
    std::int64_t sum = 0;
    for (int i = 0; i < n; ++i) {
      if ((s >> i) & 1) sum += items[i];
    }
    if (2 * sum != total) continue;
    std::vector<int> half;
    for (int i = 0; i < n; ++i) {
      if ((s >> i) & 1) half.push_back(i);
    }
    return half;
  }
  return std::nullopt;
}

std::optional<std::vector<int>> three_dm(const ThreeDmInstance& tdm, const OracleBudget& b) {
  need_edges(static_cast<int>(tdm.triples.size()), b, "3dm");
  const int n = tdm.n;
  std::vector<std::vector<char>> used(3, std::vector<char>(n, 0));
  std::vector<int> chosen;
  // Cover x = 0..n-1 in order.
  std::function<bool(int)> dfs = [&](int x) -> bool {
    if (x == n) return true;
    for (int i = 0; i < static_cast<int>(tdm.triples.size()); ++i) {
      const auto& t = tdm.triples[i];
      if (t[0] != x || used[1][t[1]] || used[2][t[2]]) continue;
      used[1][t[1]] = used[2][t[2]] = 1;
      chosen.push_back(i);
      if (dfs(x + 1)) return true;
      chosen.pop_back();
      used[1][t[1]] = used[2][t[2]] = 0;
    }
    return false;
  };
  for (const auto& t : tdm.triples) {
    for (int c : t) {
      if (c < 0 || c >= n) throw InputError("triple coordinate out of range");
    }
  }
  if (!dfs(0)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

Verdict fail(std::string why) { return Verdict{false, std::move(why)}; }
Verdict pass() { return Verdict{true, {}}; }

// Checks sorted, distinct, in range.
std::optional<std::string> bad_subset(const Graph& g, const VertexSubset& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= g.order()) return "vertex out of range";
    if (i > 0 && s[i - 1] >= s[i]) return "subset not sorted and distinct";
  }
  return std::nullopt;
}

bool subset_connected(const Graph& g, const std::vector<char>& in, Vertex start, int size) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack{start};
  seen[start] = 1;
  int reached = 0;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    ++reached;
    for (Vertex w : g.neighbors(v)) {
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return reached == size;
}

}  // namespace

Verdict verify_vi_set(const Graph& g, const VertexSubset& s, int k) {
  if (auto why = bad_subset(g, s)) return fail(*why);
  std::vector<bool> removed(g.order(), false);
  for (Vertex v : s) removed[v] = true;
  const int size = static_cast<int>(s.size());
  std::vector<char> seen(g.order(), 0);
  for (Vertex start = 0; start < g.order(); ++start) {
    if (removed[start] || seen[start]) continue;
    int comp = 0;
    std::vector<Vertex> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      ++comp;
      for (Vertex w : g.neighbors(v)) {
        if (!removed[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    if (size + comp > k) {
      return fail("component of size " + std::to_string(comp) + " exceeds bound " +
                  std::to_string(k));
    }
  }
  if (size > k) return fail("separator larger than k");
  return pass();
}

Verdict verify_imbalance(const Graph& g, const LinearOrdering& order, std::int64_t value) {
  const int n = g.order();
  if (static_cast<int>(order.size()) != n) return fail("ordering has wrong length");
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    if (order[i] < 0 || order[i] >= n || pos[order[i]] >= 0) return fail("not a permutation");
    pos[order[i]] = i;
  }
  std::int64_t total = 0;
  for (Vertex v = 0; v < n; ++v) {
    int left = 0, right = 0;
    for (Vertex w : g.neighbors(v)) (pos[w] < pos[v] ? left : right)++;
    total += std::abs(left - right);
  }
  if (total != value) {
    return fail("ordering has imbalance " + std::to_string(total) + ", claimed " +
                std::to_string(value));
  }
  return pass();
}

namespace {

std::optional<std::string> bad_injection(const Graph& g1, const Graph& g2,
                                         const std::vector<Vertex>& map) {
  if (static_cast<int>(map.size()) != g1.order()) return "mapping has wrong length";
  std::vector<char> hit(g2.order(), 0);
  for (Vertex w : map) {
    if (w == -1) continue;
    if (w < 0 || w >= g2.order()) return "image out of range";
    if (hit[w]) return "mapping not injective";
    hit[w] = 1;
  }
  return std::nullopt;
}

}  // namespace

Verdict verify_mcs(const Graph& g1, const Graph& g2, const CommonSubgraphWitness& w) {
  if (auto why = bad_injection(g1, g2, w.mapping)) return fail(*why);
  int matched = 0;
  for (const Edge& e : g1.edges()) {
    if (w.mapping[e.u] >= 0 && w.mapping[e.v] >= 0 && g2.adjacent(w.mapping[e.u], w.mapping[e.v])) {
      ++matched;
    }
  }
  if (matched != w.value) {
    return fail("mapping preserves " + std::to_string(matched) + " edges, claimed " +
                std::to_string(w.value));
  }
  return pass();
}

Verdict verify_mcis(const Graph& g1, const Graph& g2, const CommonSubgraphWitness& w) {
  if (auto why = bad_injection(g1, g2, w.mapping)) return fail(*why);
  int mapped = 0;
  for (Vertex u = 0; u < g1.order(); ++u) {
    if (w.mapping[u] < 0) continue;
    ++mapped;
    for (Vertex v = u + 1; v < g1.order(); ++v) {
      if (w.mapping[v] < 0) continue;
      if (g1.adjacent(u, v) != g2.adjacent(w.mapping[u], w.mapping[v])) {
        return fail("adjacency of " + std::to_string(u) + "," + std::to_string(v) +
                    " not preserved");
      }
    }
  }
  if (mapped != w.value) {
    return fail("mapping has " + std::to_string(mapped) + " vertices, claimed " +
                std::to_string(w.value));
  }
  return pass();
}

Verdict verify_cvc(const Graph& g, const CapacitatedCoverWitness& w) {
  if (!g.has_capacities()) return fail("graph has no capacities");
  if (auto why = bad_subset(g, w.cover)) return fail(*why);
  if (static_cast<int>(w.assignment.size()) != g.size()) return fail("assignment has wrong length");
  std::vector<char> in(g.order(), 0);
  for (Vertex v : w.cover) in[v] = 1;
  std::vector<int> load(g.order(), 0);
  for (int e = 0; e < g.size(); ++e) {
    const Vertex a = w.assignment[e];
    const Edge& edge = g.edges()[e];
    if (a != edge.u && a != edge.v) return fail("edge " + std::to_string(e) + " assigned off edge");
    if (a < 0 || !in[a]) return fail("edge " + std::to_string(e) + " assigned outside the cover");
    ++load[a];
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (load[v] > g.capacity(v)) {
      return fail("vertex " + std::to_string(v) + " covers " + std::to_string(load[v]) +
                  " edges, capacity " + std::to_string(g.capacity(v)));
    }
  }
  return pass();
}

Verdict verify_cds(const Graph& g, const CapacitatedDominationWitness& w) {
  if (!g.has_capacities()) return fail("graph has no capacities");
  if (auto why = bad_subset(g, w.dset)) return fail(*why);
  if (static_cast<int>(w.assignment.size()) != g.order()) return fail("assignment has wrong length");
  std::vector<char> in(g.order(), 0);
  for (Vertex v : w.dset) in[v] = 1;
  std::vector<int> load(g.order(), 0);
  for (Vertex v = 0; v < g.order(); ++v) {
    const Vertex d = w.assignment[v];
    if (in[v]) {
      if (d != -1) return fail("dominator " + std::to_string(v) + " has an assignment");
      continue;
    }
    if (d < 0 || d >= g.order() || !in[d]) {
      return fail("vertex " + std::to_string(v) + " not assigned to the set");
    }
    if (!g.adjacent(v, d)) return fail("vertex " + std::to_string(v) + " assigned to non-neighbor");
    ++load[d];
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (load[v] > g.capacity(v)) return fail("capacity exceeded at " + std::to_string(v));
  }
  return pass();
}

namespace {

std::optional<std::string> bad_total_coloring(const Graph& g, int r, const Coloring& c) {
  if (static_cast<int>(c.size()) != g.order()) return "coloring has wrong length";
  for (int x : c) {
    if (x < 1 || x > r) return "color out of range";
  }
  for (const Edge& e : g.edges()) {
    if (c[e.u] == c[e.v]) {
      return "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is monochromatic";
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict verify_precoloring(const Graph& g, const Coloring& precolor, int r, const Coloring& c) {
  if (auto why = bad_total_coloring(g, r, c)) return fail(*why);
  if (static_cast<int>(precolor.size()) != g.order()) return fail("precolor has wrong length");
  for (Vertex v = 0; v < g.order(); ++v) {
    if (precolor[v] != 0 && precolor[v] != c[v]) {
      return fail("vertex " + std::to_string(v) + " changes its precolor");
    }
  }
  return pass();
}

Verdict verify_eqcoloring(const Graph& g, int r, const Coloring& c) {
  if (auto why = bad_total_coloring(g, r, c)) return fail(*why);
  const int n = g.order();
  std::vector<int> size(r + 1, 0);
  for (int x : c) ++size[x];
  for (int x = 1; x <= r; ++x) {
    if (size[x] < n / r || size[x] > (n + r - 1) / r) {
      return fail("class " + std::to_string(x) + " has size " + std::to_string(size[x]));
    }
  }
  return pass();
}

Verdict verify_ecp(const Graph& g, int r, const Partition& p) {
  const int n = g.order();
  if (static_cast<int>(p.size()) != r) return fail("partition does not have r parts");
  std::vector<char> covered(n, 0);
  for (const auto& part : p) {
    if (auto why = bad_subset(g, part)) return fail(*why);
    const int s = static_cast<int>(part.size());
    if (s == 0) return fail("empty part");
    if (s < n / r || s > (n + r - 1) / r) return fail("part size " + std::to_string(s));
    std::vector<char> in(n, 0);
    for (Vertex v : part) {
      if (covered[v]) return fail("parts overlap");
      covered[v] = 1;
      in[v] = 1;
    }
    if (!subset_connected(g, in, part.front(), s)) return fail("part is disconnected");
  }
  for (char c : covered) {
    if (!c) return fail("partition does not cover all vertices");
  }
  return pass();
}

Verdict verify_motif(const MotifInstance& m, const VertexSubset& s) {
  const Graph& g = m.graph;
  if (!g.has_colors()) return fail("graph has no colors");
  if (auto why = bad_subset(g, s)) return fail(*why);
  if (s.empty()) return fail("empty set");
  std::vector<int> got, want = m.motif;
  for (Vertex v : s) got.push_back(g.color(v));
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  if (got != want) return fail("color multiset differs from motif");
  std::vector<char> in(g.order(), 0);
  for (Vertex v : s) in[v] = 1;
  if (!subset_connected(g, in, s.front(), static_cast<int>(s.size()))) return fail("disconnected");
  return pass();
}

Verdict verify_mmoo(const MmooInstance& inst, const Orientation& o) {
  const Graph& g = inst.graph;
  if (static_cast<int>(o.size()) != g.size()) return fail("orientation has wrong length");
  std::vector<std::int64_t> out(g.order(), 0);
  for (int e = 0; e < g.size(); ++e) {
    const Edge& edge = g.edges()[e];
    if (o[e] != edge.u && o[e] != edge.v) return fail("tail is not an endpoint");
    out[o[e]] += g.weight(e);
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (out[v] > inst.r) {
      return fail("vertex " + std::to_string(v) + " has outdegree " + std::to_string(out[v]));
    }
  }
  return pass();
}

Verdict verify_steiner_forest(const SteinerInstance& si, const SteinerSolution& sol) {
  const Graph& g = si.graph;
  Dsu dsu(g.order());
  std::int64_t w = 0;
  for (std::size_t i = 0; i < sol.edges.size(); ++i) {
    const int e = sol.edges[i];
    if (e < 0 || e >= g.size()) return fail("edge index out of range");
    if (i > 0 && sol.edges[i - 1] >= e) return fail("edge list not sorted and distinct");
    w += g.weight(e);
    dsu.unite(g.edges()[e].u, g.edges()[e].v);
  }
  if (w != sol.weight) return fail("weight mismatch");
  for (std::size_t i = 0; i < si.terminals.size(); ++i) {
    for (Vertex v : si.terminals[i]) {
      if (v < 0 || v >= g.order()) return fail("terminal out of range");
      if (dsu.find(v) != dsu.find(si.terminals[i].front())) {
        return fail("terminal set " + std::to_string(i) + " is split");
      }
    }
  }
  return pass();
}

Verdict verify_bin_packing(const BinPackingInstance& bp,
                           const std::vector<std::vector<int>>& bins) {
  if (static_cast<int>(bins.size()) != bp.t) return fail("wrong number of bins");
  const std::int64_t total = std::accumulate(bp.items.begin(), bp.items.end(), std::int64_t{0});
  if (total % bp.t != 0) return fail("total not divisible by t");
  std::vector<char> used(bp.items.size(), 0);
  for (const auto& bin : bins) {
    std::int64_t s = 0;
    for (int i : bin) {
      if (i < 0 || i >= static_cast<int>(bp.items.size()) || used[i]) return fail("bad item index");
      used[i] = 1;
      s += bp.items[i];
    }
    if (s != total / bp.t) return fail("bin sum differs from capacity");
  }
  for (char c : used) {
    if (!c) return fail("item not packed");
  }
  return pass();
}

Verdict verify_partition(const std::vector<std::int64_t>& items, const std::vector<int>& half) {
  const int n = static_cast<int>(items.size());
  if (static_cast<int>(half.size()) * 2 != n) return fail("half does not contain n/2 items");
  std::vector<char> used(n, 0);
  std::int64_t s = 0;
  for (int i : half) {
    if (i < 0 || i >= n || used[i]) return fail("bad item index");
    used[i] = 1;
    s += items[i];
  }
  const std::int64_t total = std::accumulate(items.begin(), items.end(), std::int64_t{0});
  if (2 * s != total) return fail("half does not sum to total/2");
  return pass();
}

Verdict verify_three_dm(const ThreeDmInstance& tdm, const std::vector<int>& chosen) {
  if (static_cast<int>(chosen.size()) != tdm.n) return fail("need exactly n triples");
  std::vector<std::vector<char>> used(3, std::vector<char>(tdm.n, 0));
  for (int i : chosen) {
    if (i < 0 || i >= static_cast<int>(tdm.triples.size())) return fail("bad triple index");
    for (int c = 0; c < 3; ++c) {
      const int x = tdm.triples[i][c];
      if (used[c][x]) return fail("triples overlap");
      used[c][x] = 1;
    }
  }
  return pass();
}

}  // namespace viforge::oracle
