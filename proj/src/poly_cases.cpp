#include "viforge/poly_cases.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "viforge/errors.hpp"
#include "viforge/vertex_integrity.hpp"

namespace viforge {

namespace {

bool colors_match(const Graph& g, const VertexSubset& s, const std::vector<int>& motif) {
  std::vector<int> got;
  for (Vertex v : s) got.push_back(g.color(v));
  std::sort(got.begin(), got.end());
  return got == motif;
}

// Vertex cover R of size at most 3: a solution meeting R is X plus vertices
// outside R attached to X; at most |X|-1 of them are needed for connectivity.
std::optional<VertexSubset> motif_small_cover(const Graph& g, const std::vector<int>& motif,
                                              const VertexSubset& cover) {
  const int n = g.order();
  if (motif.size() == 1) {
    for (Vertex v = 0; v < n; ++v) {
      if (g.color(v) == motif[0]) return VertexSubset{v};
    }
    return std::nullopt;
  }
  std::vector<char> in_cover(n, 0);
  for (Vertex v : cover) in_cover[v] = 1;
  const int c = static_cast<int>(cover.size());
  for (int mask = 1; mask < (1 << c); ++mask) {
    VertexSubset x;
    std::vector<char> in_x(n, 0);
    std::map<int, int> need;
    for (int col : motif) ++need[col];
    bool ok = true;
    for (int i = 0; i < c; ++i) {
      if ((mask >> i) & 1) {
        x.push_back(cover[i]);
        in_x[cover[i]] = 1;
        ok = ok && --need[g.color(cover[i])] >= 0;
      }
    }
    if (!ok) continue;
    std::vector<Vertex> candidates;
    for (Vertex v = 0; v < n; ++v) {
      if (in_cover[v]) continue;
      bool touches = false;
      for (Vertex w : g.neighbors(v)) touches = touches || in_x[w];
      if (touches) candidates.push_back(v);
    }
    const int max_connectors = static_cast<int>(x.size()) - 1;
    std::vector<Vertex> connectors;
    std::optional<VertexSubset> found;
    auto finish = [&]() -> std::optional<VertexSubset> {
      VertexSubset s = x;
      s.insert(s.end(), connectors.begin(), connectors.end());
      if (!is_connected_subset(g, s)) return std::nullopt;
      std::map<int, int> left = need;
      for (Vertex v : connectors) {
        if (--left[g.color(v)] < 0) return std::nullopt;
      }
      for (Vertex v : candidates) {
        if (std::find(connectors.begin(), connectors.end(), v) != connectors.end()) continue;
        auto it = left.find(g.color(v));
        if (it != left.end() && it->second > 0) {
          --it->second;
          s.push_back(v);
        }
      }
      for (const auto& [col, cnt] : left) {
        if (cnt != 0) return std::nullopt;
      }
      std::sort(s.begin(), s.end());
      return s;
    };
    auto rec = [&](auto&& self, std::size_t from) -> bool {
      if ((found = finish())) return true;
      if (static_cast<int>(connectors.size()) == max_connectors) return false;
      for (std::size_t i = from; i < candidates.size(); ++i) {
        connectors.push_back(candidates[i]);
        if (self(self, i + 1)) return true;
        connectors.pop_back();
      }
      return false;
    };
    if (rec(rec, 0)) return found;
  }
  return std::nullopt;
}

struct FlowNetwork {
  struct Arc {
    int to;
    int cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out;

  explicit FlowNetwork(int nodes) : out(nodes) {}

  int add(int from, int to, int cap) {
    out[from].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({to, cap});
    out[to].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({from, 0});
    return static_cast<int>(arcs.size()) - 2;
  }

  // Augmenting paths found by BFS (Edmonds-Karp).
  int max_flow(int s, int t) {
    int total = 0;
    while (true) {
      std::vector<int> via(out.size(), -1);
      std::vector<int> queue{s};
      std::vector<char> seen(out.size(), 0);
      seen[s] = 1;
      for (std::size_t head = 0; head < queue.size() && !seen[t]; ++head) {
        for (int a : out[queue[head]]) {
          if (arcs[a].cap > 0 && !seen[arcs[a].to]) {
            seen[arcs[a].to] = 1;
            via[arcs[a].to] = a;
            queue.push_back(arcs[a].to);
          }
        }
      }
      if (!seen[t]) return total;
      int push = std::numeric_limits<int>::max();
      for (int v = t; v != s; v = arcs[via[v] ^ 1].to) push = std::min(push, arcs[via[v]].cap);
      for (int v = t; v != s; v = arcs[via[v] ^ 1].to) {
        arcs[via[v]].cap -= push;
        arcs[via[v] ^ 1].cap += push;
      }
      total += push;
    }
  }
};

bool unit_weights(const Graph& g) {
  for (int e = 0; e < g.size(); ++e) {
    if (g.weight(e) != 1) return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<int>> degree_constrained_subgraph(const BipartiteMultigraph& h,
                                                            const std::vector<int>& at_most,
                                                            const std::vector<int>& exactly) {
  if (static_cast<int>(at_most.size()) != h.left || static_cast<int>(exactly.size()) != h.right) {
    throw InputError("degree constraints do not match the vertex counts");
  }
  for (int x : exactly) {
    if (x < 0) throw InputError("degree targets must be nonnegative");
  }
  const int source = h.left + h.right, sink = source + 1;
  FlowNetwork net(sink + 1);
  for (int i = 0; i < h.left; ++i) net.add(source, i, std::max(0, at_most[i]));
  std::vector<int> arc_of;
  for (const auto& link : h.links) {
    if (link.l < 0 || link.l >= h.left || link.r < 0 || link.r >= h.right || link.multiplicity < 0) {
      throw InputError("bad link");
    }
    arc_of.push_back(net.add(link.l, h.left + link.r, link.multiplicity));
  }
  int want = 0;
  for (int j = 0; j < h.right; ++j) {
    net.add(h.left + j, sink, exactly[j]);
    want += exactly[j];
  }
  if (net.max_flow(source, sink) != want) return std::nullopt;
  std::vector<int> taken;
  for (std::size_t i = 0; i < h.links.size(); ++i) {
    taken.push_back(h.links[i].multiplicity - net.arcs[arc_of[i]].cap);
  }
  return taken;
}

std::optional<VertexSubset> graph_motif_vi3(const MotifInstance& m) {
  validate_motif(m);
  const Graph& g = m.graph;
  const int n = g.order();
  if (m.motif.empty() || static_cast<int>(m.motif.size()) > n) return std::nullopt;
  const ViSet vs = vertex_integrity(g);
  if (vs.k > 3) {
    throw PreconditionError("graph motif fast path needs vertex integrity at most 3, got " +
                            std::to_string(vs.k));
  }
  const VertexSubset& sep = vs.separator;
  if (sep.size() >= 2) return motif_small_cover(g, m.motif, sep);

  // Solutions avoiding the separator sit inside one small component.
  std::vector<bool> cut(n, false);
  for (Vertex v : sep) cut[v] = true;
  for (const auto& comp : components_without(g, cut)) {
    const int c = static_cast<int>(comp.size());
    for (int mask = 1; mask < (1 << c); ++mask) {
      VertexSubset s;
      for (int i = 0; i < c; ++i) {
        if ((mask >> i) & 1) s.push_back(comp[i]);
      }
      if (colors_match(g, s, m.motif) && is_connected_subset(g, s)) return s;
    }
  }
  if (sep.empty()) return std::nullopt;

  const Vertex r = sep.front();
  std::map<int, int> need;  // motif minus the color of r
  for (int col : m.motif) ++need[col];
  if (need[g.color(r)] == 0) return std::nullopt;
  --need[g.color(r)];
  std::vector<int> palette;
  for (Vertex v = 0; v < n; ++v) palette.push_back(g.color(v));
  for (const auto& [col, cnt] : need) palette.push_back(col);
  std::sort(palette.begin(), palette.end());
  palette.erase(std::unique(palette.begin(), palette.end()), palette.end());
  auto index = [&](int col) {
    return static_cast<int>(std::lower_bound(palette.begin(), palette.end(), col) - palette.begin());
  };
  const int p = static_cast<int>(palette.size());
  std::vector<char> near(n, 0);
  for (Vertex v : g.neighbors(r)) near[v] = 1;
  std::vector<int> q(p, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (near[v]) ++q[index(g.color(v))];
  }
  // Pendant pairs u - v with only u next to r, grouped by color pair.
  std::map<std::pair<int, int>, std::vector<std::pair<Vertex, Vertex>>> pendant;
  for (const auto& comp : components_without(g, cut)) {
    if (comp.size() != 2) continue;
    const Vertex a = comp[0], b = comp[1];
    if (near[a] != near[b]) {
      const Vertex u = near[a] ? a : b, v = near[a] ? b : a;
      pendant[{index(g.color(u)), index(g.color(v))}].emplace_back(u, v);
    }
  }
  BipartiteMultigraph h;
  h.left = h.right = p;
  std::vector<std::pair<int, int>> link_keys;
  for (const auto& [key, pairs] : pendant) {
    h.links.push_back({key.first, key.second, static_cast<int>(pairs.size())});
    link_keys.push_back(key);
  }
  std::vector<int> at_most(p), exactly(p), want(p);
  for (int x = 0; x < p; ++x) {
    auto it = need.find(palette[x]);
    want[x] = it == need.end() ? 0 : it->second;
    at_most[x] = want[x];
    exactly[x] = std::max(want[x] - q[x], 0);
  }
  auto flow = degree_constrained_subgraph(h, at_most, exactly);
  if (!flow) return std::nullopt;

  std::vector<char> in_s(n, 0);
  in_s[r] = 1;
  std::vector<int> have(p, 0);
  for (std::size_t i = 0; i < link_keys.size(); ++i) {
    const auto& pairs = pendant[link_keys[i]];
    for (int j = 0; j < (*flow)[i]; ++j) {
      in_s[pairs[j].first] = in_s[pairs[j].second] = 1;
      ++have[link_keys[i].first];
      ++have[link_keys[i].second];
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!near[v] || in_s[v]) continue;
    const int x = index(g.color(v));
    if (want[x] > q[x] || have[x] < want[x]) {
      in_s[v] = 1;
      ++have[x];
    }
  }
  VertexSubset s;
  for (Vertex v = 0; v < n; ++v) {
    if (in_s[v]) s.push_back(v);
  }
  if (!colors_match(g, s, m.motif) || !is_connected_subset(g, s)) {
    throw std::logic_error("motif lift-back produced an invalid set");
  }
  return s;
}

std::optional<Orientation> binary_mmoo_vc2(const MmooInstance& inst) {
  const Graph& g = inst.graph;
  const std::int64_t r = inst.r;
  if (r < 0) throw InputError("r must be nonnegative");
  if (vertex_cover_min(g).size() > 2) {
    throw PreconditionError("binary MMOO fast path needs a vertex cover of size at most 2");
  }
  const int n = g.order(), m = g.size();
  for (int e = 0; e < m; ++e) {
    if (g.weight(e) > r) return std::nullopt;
  }
  Orientation tail(m, -1);
  // Peel vertices of degree at most one; their edge leaves them.
  std::vector<int> deg(n);
  std::vector<char> gone(n, 0);
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    if (gone[v]) continue;
    gone[v] = 1;
    for (Vertex w : g.neighbors(v)) {
      if (gone[w]) continue;
      tail[*g.edge_index(v, w)] = v;
      if (--deg[w] <= 1) stack.push_back(w);
    }
  }
  VertexSubset rest;
  for (Vertex v = 0; v < n; ++v) {
    if (!gone[v]) rest.push_back(v);
  }
  if (rest.empty()) return tail;
  const InducedSubgraph core = induced(g, rest);
  VertexSubset pq = vertex_cover_min(core.graph);
  if (pq.size() != 2) throw std::logic_error("minimum degree two core without a 2-cover");
  const Vertex p = core.new_to_old[pq[0]], qv = core.new_to_old[pq[1]];
  // Vertices whose two edges fit together leave both.
  std::vector<Vertex> hard;
  for (Vertex v : rest) {
    if (v == p || v == qv) continue;
    const int ep = *g.edge_index(v, p), eq = *g.edge_index(v, qv);
    if (g.weight(ep) + g.weight(eq) <= r) {
      tail[ep] = tail[eq] = v;
    } else {
      hard.push_back(v);
    }
  }
  auto heavy = [&](int e) { return 2 * g.weight(e) > r; };
  const std::optional<int> epq = g.edge_index(p, qv);
  auto heavy_edges = [&](Vertex s) {
    std::vector<int> out{-1};
    for (Vertex v : hard) {
      const int e = *g.edge_index(v, s);
      if (heavy(e)) out.push_back(e);
    }
    if (epq && heavy(*epq)) out.push_back(*epq);
    return out;
  };
  for (int gp : heavy_edges(p)) {
    for (int gq : heavy_edges(qv)) {
      if (gp >= 0 && gp == gq) continue;
      Orientation t = tail;
      for (Vertex v : hard) {
        const int ep = *g.edge_index(v, p), eq = *g.edge_index(v, qv);
        std::int64_t load = 0;
        std::vector<std::pair<int, Vertex>> light;
        for (auto [e, side, guess] : {std::tuple{ep, p, gp}, std::tuple{eq, qv, gq}}) {
          if (e == guess) {
            t[e] = side;
          } else if (heavy(e)) {
            t[e] = v;
            load += g.weight(e);
          } else {
            light.emplace_back(e, side);
          }
        }
        for (auto [e, side] : light) {
          if (load + g.weight(e) <= r) {
            t[e] = v;
            load += g.weight(e);
          } else {
            t[e] = side;
          }
        }
      }
      std::vector<Vertex> pq_options;
      if (!epq) {
        pq_options.push_back(-1);
      } else if (*epq == gp) {
        pq_options.push_back(p);
      } else if (*epq == gq) {
        pq_options.push_back(qv);
      } else {
        pq_options = {p, qv};
      }
      for (Vertex dir : pq_options) {
        if (epq) t[*epq] = dir;
        std::vector<std::int64_t> out(n, 0);
        for (int e = 0; e < m; ++e) out[t[e]] += g.weight(e);
        if (std::all_of(out.begin(), out.end(), [&](std::int64_t x) { return x <= r; })) return t;
      }
    }
  }
  return std::nullopt;
}

std::optional<SteinerSolution> steiner_forest_xp_vc(const SteinerInstance& si) {
  validate_steiner(si);
  const Graph& g = si.graph;
  const int n = g.order();
  if (si.terminals.empty()) return SteinerSolution{};
  const VertexSubset cover = vertex_cover_min(g);
  std::vector<char> in_cover(n, 0);
  for (Vertex v : cover) in_cover[v] = 1;
  std::vector<Vertex> outside;
  for (Vertex v = 0; v < n; ++v) {
    if (!in_cover[v]) outside.push_back(v);
  }
  const int max_d = std::max(0, static_cast<int>(cover.size()) - 1);
  std::optional<SteinerSolution> best;

  std::vector<char> in_core(n, 0);
  for (Vertex v : cover) in_core[v] = 1;
  std::vector<int> core_edges;
  std::vector<int> chosen;
  std::vector<int> parent(n);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  // Evaluates one forest on the core: terminals outside the core hang off
  // the cheapest edge into the component hosting their set.
  auto evaluate = [&]() {
    std::iota(parent.begin(), parent.end(), 0);
    std::int64_t cost = 0;
    for (int e : chosen) {
      parent[find(g.edges()[e].u)] = find(g.edges()[e].v);
      cost += g.weight(e);
    }
    std::vector<int> roots;
    for (Vertex v = 0; v < n; ++v) {
      if (in_core[v] && find(v) == v) roots.push_back(v);
    }
    std::vector<int> edges = chosen;
    for (const auto& t : si.terminals) {
      int host = -1;
      bool split = false;
      std::vector<Vertex> hanging;
      for (Vertex v : t) {
        if (!in_core[v]) {
          hanging.push_back(v);
        } else if (host < 0) {
          host = find(v);
        } else {
          split = split || host != find(v);
        }
      }
      if (split) return;
      auto attach = [&](int root, std::vector<int>* picked) -> std::optional<std::int64_t> {
        std::int64_t sum = 0;
        for (Vertex u : hanging) {
          int pick = -1;
          for (Vertex w : g.neighbors(u)) {
            if (!in_core[w] || find(w) != root) continue;
            const int e = *g.edge_index(u, w);
            if (pick < 0 || g.weight(e) < g.weight(pick)) pick = e;
          }
          if (pick < 0) return std::nullopt;
          sum += g.weight(pick);
          if (picked) picked->push_back(pick);
        }
        return sum;
      };
      if (host < 0) {
        std::optional<std::int64_t> cheapest;
        for (int root : roots) {
          auto c = attach(root, nullptr);
          if (c && (!cheapest || *c < *cheapest)) {
            cheapest = c;
            host = root;
          }
        }
        if (host < 0) return;
      }
      auto c = attach(host, &edges);
      if (!c) return;
      cost += *c;
    }
    if (best && cost >= best->weight) return;
    std::sort(edges.begin(), edges.end());
    best = SteinerSolution{cost, edges};
  };

  auto forests = [&](auto&& self, std::size_t i) -> void {
    if (i == core_edges.size()) {
      evaluate();
      return;
    }
    self(self, i + 1);
    const Edge& e = g.edges()[core_edges[i]];
    std::iota(parent.begin(), parent.end(), 0);
    for (int c : chosen) parent[find(g.edges()[c].u)] = find(g.edges()[c].v);
    if (find(e.u) == find(e.v)) return;
    chosen.push_back(core_edges[i]);
    self(self, i + 1);
    chosen.pop_back();
  };

  std::vector<Vertex> d;
  auto guess_d = [&](auto&& self, std::size_t from) -> void {
    core_edges.clear();
    for (int e = 0; e < g.size(); ++e) {
      if (in_core[g.edges()[e].u] && in_core[g.edges()[e].v]) core_edges.push_back(e);
    }
    forests(forests, 0);
    if (static_cast<int>(d.size()) == max_d) return;
    for (std::size_t i = from; i < outside.size(); ++i) {
      d.push_back(outside[i]);
      in_core[outside[i]] = 1;
      self(self, i + 1);
      in_core[outside[i]] = 0;
      d.pop_back();
    }
  };
  guess_d(guess_d, 0);
  return best;
}

UsfKernel usf_kernelize(const SteinerInstance& si, const std::optional<VertexSubset>& cover) {
  validate_steiner(si);
  const Graph& g = si.graph;
  if (!unit_weights(g)) throw InputError("unweighted Steiner forest needs unit weights");
  const int n = g.order();
  UsfKernel out;
  out.cover = cover ? make_subset(g, *cover) : vertex_cover_min(g);
  std::vector<char> in_s(n, 0);
  for (Vertex v : out.cover) in_s[v] = 1;
  for (const Edge& e : g.edges()) {
    if (!in_s[e.u] && !in_s[e.v]) throw InputError("supplied set is not a vertex cover");
  }
  const int s = static_cast<int>(out.cover.size());
  std::vector<VertexSubset> sets = si.terminals;
  std::vector<char> alive(n, 1);
  // Outside the cover every neighborhood lies in the cover and never changes.
  auto hood = [&](Vertex v) { return std::vector<Vertex>(g.neighbors(v).begin(), g.neighbors(v).end()); };

  auto rule1 = [&]() {
    for (auto& t : sets) {
      if (t.size() < 3) continue;
      std::map<std::vector<Vertex>, std::vector<Vertex>> groups;
      for (Vertex v : t) {
        if (!in_s[v]) groups[hood(v)].push_back(v);
      }
      for (auto& [key, members] : groups) {
        if (static_cast<int>(members.size()) < std::max(s, 2)) continue;
        const Vertex v = members.back();
        members.pop_back();
        t.erase(std::find(t.begin(), t.end(), v));
        out.trace.push_back({1, v, members, -1, -1});
        ++out.budget_delta;
        return true;
      }
    }
    return false;
  };
  auto rule2 = [&]() {
    std::map<std::map<std::vector<Vertex>, int>, std::vector<int>> by_profile;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::map<std::vector<Vertex>, int> profile;
      bool touches = false;
      for (Vertex v : sets[i]) {
        touches = touches || in_s[v];
        ++profile[hood(v)];
      }
      if (!touches) by_profile[profile].push_back(static_cast<int>(i));
    }
    for (const auto& [profile, ids] : by_profile) {
      if (static_cast<int>(ids.size()) < std::max(s + 1, 2)) continue;
      const int a = ids[0], b = ids[1];
      out.trace.push_back({2, -1, {}, a, b});
      sets[a].insert(sets[a].end(), sets[b].begin(), sets[b].end());
      std::sort(sets[a].begin(), sets[a].end());
      sets.erase(sets.begin() + b);
      return true;
    }
    return false;
  };
  auto rule3 = [&]() {
    std::vector<char> terminal(n, 0);
    for (const auto& t : sets) {
      for (Vertex v : t) terminal[v] = 1;
    }
    std::map<std::vector<Vertex>, std::vector<Vertex>> groups;
    for (Vertex v = 0; v < n; ++v) {
      if (alive[v] && !in_s[v] && !terminal[v]) groups[hood(v)].push_back(v);
    }
    for (const auto& [key, members] : groups) {
      if (members.size() < 2) continue;
      alive[members.back()] = 0;
      out.trace.push_back({3, members.back(), {}, -1, -1});
      return true;
    }
    return false;
  };
  while (true) {
    bool changed = false;
    while (rule1()) changed = true;
    while (rule2()) changed = true;
    while (rule3()) changed = true;
    if (!changed) break;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (alive[v]) out.to_original.push_back(v);
  }
  const InducedSubgraph h = induced(g, out.to_original);
  out.instance.graph = h.graph;
  for (const auto& t : sets) {
    VertexSubset mapped;
    for (Vertex v : t) mapped.push_back(h.old_to_new[v]);
    std::sort(mapped.begin(), mapped.end());
    out.instance.terminals.push_back(std::move(mapped));
  }
  return out;
}

SteinerSolution usf_lift(const SteinerInstance& original, const UsfKernel& kernel,
                         const SteinerSolution& kernel_solution) {
  const Graph& g = original.graph;
  const Graph& h = kernel.instance.graph;
  std::set<int> edges;
  for (int e : kernel_solution.edges) {
    if (e < 0 || e >= h.size()) throw InputError("kernel edge out of range");
    const Edge& k = h.edges()[e];
    edges.insert(*g.edge_index(kernel.to_original[k.u], kernel.to_original[k.v]));
  }
  for (auto it = kernel.trace.rbegin(); it != kernel.trace.rend(); ++it) {
    if (it->rule != 1) continue;
    // Hang the dropped terminal on the solution neighbor of one of its twins.
    std::optional<int> added;
    for (Vertex u : it->twins) {
      for (Vertex w : g.neighbors(u)) {
        if (edges.count(*g.edge_index(u, w))) {
          added = *g.edge_index(it->vertex, w);
          break;
        }
      }
      if (added) break;
    }
    if (!added) throw std::logic_error("no twin edge to lift a dropped terminal");
    edges.insert(*added);
  }
  SteinerSolution out;
  out.edges.assign(edges.begin(), edges.end());
  for (int e : out.edges) out.weight += g.weight(e);
  return out;
}

std::optional<SteinerSolution> usf_solve(const SteinerInstance& si) {
  const UsfKernel kernel = usf_kernelize(si);
  auto solved = steiner_forest_xp_vc(kernel.instance);
  if (!solved) return std::nullopt;
  SteinerSolution lifted = usf_lift(si, kernel, *solved);
  if (lifted.weight != solved->weight + kernel.budget_delta) {
    throw std::logic_error("lifted Steiner forest weight does not match the kernel optimum");
  }
  return lifted;
}

}  // namespace viforge
