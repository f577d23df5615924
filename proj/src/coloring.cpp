#include "viforge/coloring.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "viforge/errors.hpp"
#include "viforge/ilp.hpp"
#include "viforge/types.hpp"
#include "viforge/vertex_integrity.hpp"

namespace viforge {

namespace {

// Component of one type in canonical positions: 0..s-1 separator, s..m-1
// component.
struct LocalType {
  int s = 0;
  int m = 0;
  std::vector<char> adj;

  bool edge(int a, int b) const { return adj[a * m + b] != 0; }
};

std::vector<LocalType> local_types(const Graph& g, const TypeTable& table) {
  std::vector<LocalType> out;
  for (const auto& cls : table.classes) {
    LocalType lt;
    lt.s = static_cast<int>(table.separator.size());
    lt.m = static_cast<int>(cls.type.order.size());
    lt.adj.assign(lt.m * lt.m, 0);
    for (int a = 0; a < lt.m; ++a) {
      for (int b = 0; b < lt.m; ++b) lt.adj[a * lt.m + b] = g.adjacent(cls.type.order[a], cls.type.order[b]);
    }
    out.push_back(std::move(lt));
  }
  return out;
}

// Colorings of the separator (by index) with colors 1..sum(groups). Colors
// inside a group are interchangeable, so each group is filled in restricted
// growth order. `proper` forbids equal colors on adjacent vertices;
// `cover_all` demands that every color is used.
std::vector<std::vector<int>> separator_colorings(const Graph& g, const VertexSubset& sep,
                                                  const std::vector<int>& groups, bool proper,
                                                  bool cover_all) {
  std::vector<int> start(groups.size(), 1);
  for (std::size_t i = 1; i < groups.size(); ++i) start[i] = start[i - 1] + groups[i - 1];
  std::vector<int> used(groups.size(), 0);
  std::vector<int> color(sep.size(), 0);
  std::vector<std::vector<int>> out;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == sep.size()) {
      if (cover_all) {
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
          if (used[gi] != groups[gi]) return;
        }
      }
      out.push_back(color);
      return;
    }
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      for (int j = 0; j <= used[gi] && j < groups[gi]; ++j) {
        const int c = start[gi] + j;
        bool clash = false;
        for (std::size_t h = 0; proper && h < i; ++h) {
          clash = clash || (color[h] == c && g.adjacent(sep[h], sep[i]));
        }
        if (clash) continue;
        color[i] = c;
        const bool fresh = j == used[gi];
        used[gi] += fresh;
        self(self, i + 1);
        used[gi] -= fresh;
      }
    }
    color[i] = 0;
  };
  rec(rec, 0);
  return out;
}

// Connected vertex sets of exactly `size` vertices that contain `root` and
// use only allowed vertices; each set once, sorted.
std::vector<VertexSubset> connected_sets(const Graph& g, const std::vector<char>& allowed,
                                         Vertex root, int size) {
  std::vector<VertexSubset> out;
  if (size < 1 || !allowed[root]) return out;
  std::vector<Vertex> cur{root};
  std::vector<char> blocked(g.order(), 0);
  blocked[root] = 1;
  auto rec = [&](auto&& self, std::vector<Vertex> frontier) -> void {
    if (static_cast<int>(cur.size()) == size) {
      VertexSubset s = cur;
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
      return;
    }
    std::vector<Vertex> newly_blocked;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const Vertex w = frontier[i];
      std::vector<Vertex> next(frontier.begin() + i + 1, frontier.end());
      std::vector<Vertex> added;
      for (Vertex x : g.neighbors(w)) {
        if (allowed[x] && !blocked[x]) {
          blocked[x] = 1;
          added.push_back(x);
          next.push_back(x);
        }
      }
      cur.push_back(w);
      self(self, next);
      cur.pop_back();
      for (Vertex x : added) blocked[x] = 0;
      // Sets found later exclude w; keep it blocked until this level ends.
    }
  };
  std::vector<Vertex> frontier;
  for (Vertex x : g.neighbors(root)) {
    if (allowed[x]) {
      blocked[x] = 1;
      frontier.push_back(x);
    }
  }
  rec(rec, frontier);
  return out;
}

// Partition of `vertices` (all allowed) into connected parts with exactly
// `big` parts of size hi and `small` parts of size hi-1, or nullopt.
std::optional<Partition> split_connected(const Graph& g, std::vector<char> allowed, int big,
                                         int small, int hi) {
  Vertex root = -1;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (allowed[v]) {
      root = v;
      break;
    }
  }
  if (root < 0) return big == 0 && small == 0 ? std::optional<Partition>(Partition{}) : std::nullopt;
  for (int size : {hi, hi - 1}) {
    if ((size == hi && big == 0) || (size == hi - 1 && small == 0) || size < 1) continue;
    for (const auto& part : connected_sets(g, allowed, root, size)) {
      for (Vertex v : part) allowed[v] = 0;
      auto rest = split_connected(g, allowed, big - (size == hi), small - (size != hi), hi);
      for (Vertex v : part) allowed[v] = 1;
      if (rest) {
        rest->insert(rest->begin(), part);
        return rest;
      }
    }
  }
  return std::nullopt;
}

Partition sorted_parts(Partition p) {
  for (auto& part : p) std::sort(part.begin(), part.end());
  std::sort(p.begin(), p.end());
  return p;
}

// ---- shared class-size ILP for Equitable Coloring ----

struct ClassProblem {
  std::vector<int> groups;            // interchangeable color groups
  std::vector<std::int64_t> target;   // class size per color 1..R
  bool allow_star = false;            // components may leave vertices uncolored (0)
};

// Colors (0 = uncolored) for the separator and every component vertex, or
// nullopt when no separator coloring extends.
std::optional<std::vector<int>> solve_classes(const Graph& g, const TypeTable& table,
                                              const std::vector<LocalType>& local,
                                              const ClassProblem& pb) {
  const VertexSubset& sep = table.separator;
  const int colors = static_cast<int>(pb.target.size());
  for (const auto& scol : separator_colorings(g, sep, pb.groups, true, false)) {
    std::vector<std::int64_t> residual = pb.target;
    for (int c : scol) --residual[c - 1];
    if (std::any_of(residual.begin(), residual.end(), [](std::int64_t x) { return x < 0; })) {
      continue;
    }
    // Per type: class-count vector -> one coloring of the component positions.
    std::vector<std::map<std::vector<int>, std::vector<int>>> options(local.size());
    bool dead = false;
    for (std::size_t t = 0; t < local.size() && !dead; ++t) {
      const LocalType& lt = local[t];
      std::vector<int> mu(lt.m, 0), count(colors, 0);
      for (int a = 0; a < lt.s; ++a) mu[a] = scol[a];
      auto rec = [&](auto&& self, int pos) -> void {
        if (pos == lt.m) {
          options[t].try_emplace(count, std::vector<int>(mu.begin() + lt.s, mu.end()));
          return;
        }
        for (int c = pb.allow_star ? 0 : 1; c <= colors; ++c) {
          if (c > 0) {
            if (count[c - 1] == residual[c - 1]) continue;
            bool clash = false;
            for (int b = 0; b < pos && !clash; ++b) clash = mu[b] == c && lt.edge(pos, b);
            if (clash) continue;
            ++count[c - 1];
          }
          mu[pos] = c;
          self(self, pos + 1);
          if (c > 0) --count[c - 1];
        }
        mu[pos] = 0;
      };
      rec(rec, lt.s);
      dead = options[t].empty();
    }
    if (dead) continue;
    IlpInstance ilp;
    std::vector<std::vector<Term>> rows(colors);
    std::vector<std::vector<const std::vector<int>*>> witness(local.size());
    for (std::size_t t = 0; t < local.size(); ++t) {
      const int d = table.classes[t].count();
      std::vector<Term> total;
      for (const auto& [count, mu] : options[t]) {
        const int x = ilp.add_variable(0, d);
        total.push_back({x, 1});
        witness[t].push_back(&mu);
        for (int c = 0; c < colors; ++c) {
          if (count[c]) rows[c].push_back({x, count[c]});
        }
      }
      ilp.add_constraint(total, Relation::Equal, d);
    }
    for (int c = 0; c < colors; ++c) ilp.add_constraint(rows[c], Relation::Equal, residual[c]);
    auto point = feasible(ilp);
    if (!point) continue;
    std::vector<int> out(g.order(), 0);
    for (std::size_t i = 0; i < sep.size(); ++i) out[sep[i]] = scol[i];
    int var = 0;
    for (std::size_t t = 0; t < local.size(); ++t) {
      const TypeClass& cls = table.classes[t];
      int member = 0;
      for (const auto* mu : witness[t]) {
        for (std::int64_t rep = 0; rep < (*point)[var]; ++rep, ++member) {
          for (int pos = local[t].s; pos < local[t].m; ++pos) {
            out[cls.orders[member][pos]] = (*mu)[pos - local[t].s];
          }
        }
        ++var;
      }
    }
    return out;
  }
  return std::nullopt;
}

std::vector<int> nonzero(std::initializer_list<int> sizes) {
  std::vector<int> out;
  for (int s : sizes) {
    if (s > 0) out.push_back(s);
  }
  return out;
}

// ---- Equitable Connected Partition, case r <= k ----

struct EcpOption {
  std::vector<int> count;        // vertices per part
  std::vector<unsigned> merges;  // sorted separator masks joined by one piece
  std::vector<int> mu;           // part per component position
};

std::optional<Partition> ecp_few_parts(const Graph& g, int r, const TypeTable& table,
                                       const std::vector<LocalType>& local) {
  const VertexSubset& sep = table.separator;
  const int n = g.order(), q = n / r, b = n % r;
  const int s = static_cast<int>(sep.size());
  for (const auto& scol : separator_colorings(g, sep, nonzero({b, r - b}), false, true)) {
    std::vector<std::int64_t> residual(r);
    for (int i = 0; i < r; ++i) residual[i] = i < b ? q + 1 : q;
    for (int c : scol) --residual[c - 1];
    if (std::any_of(residual.begin(), residual.end(), [](std::int64_t x) { return x < 0; })) {
      continue;
    }
    // Locally valid part assignments: every piece touches its own separator part.
    std::vector<std::map<std::pair<std::vector<int>, std::vector<unsigned>>, EcpOption>> options(
        local.size());
    bool dead = false;
    for (std::size_t t = 0; t < local.size() && !dead; ++t) {
      const LocalType& lt = local[t];
      std::vector<int> mu(lt.m - lt.s, 1), count(r, 0);
      const int c = lt.m - lt.s;
      std::vector<int> digits(c, 0);
      while (true) {
        for (int i = 0; i < c; ++i) mu[i] = digits[i] + 1;
        std::fill(count.begin(), count.end(), 0);
        for (int x : mu) ++count[x - 1];
        bool ok = true;
        for (int i = 0; i < r && ok; ++i) ok = count[i] <= residual[i];
        std::vector<unsigned> merges;
        std::vector<char> seen(c, 0);
        for (int i = 0; i < c && ok; ++i) {
          if (seen[i]) continue;
          unsigned touch = 0;
          std::vector<int> stack{i};
          seen[i] = 1;
          while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int a = 0; a < s; ++a) {
              if (scol[a] == mu[v] && lt.edge(lt.s + v, a)) touch |= 1u << a;
            }
            for (int w = 0; w < c; ++w) {
              if (!seen[w] && mu[w] == mu[v] && lt.edge(lt.s + v, lt.s + w)) {
                seen[w] = 1;
                stack.push_back(w);
              }
            }
          }
          if (touch == 0) ok = false;
          if (__builtin_popcount(touch) >= 2) merges.push_back(touch);
        }
        if (ok) {
          std::sort(merges.begin(), merges.end());
          merges.erase(std::unique(merges.begin(), merges.end()), merges.end());
          options[t].try_emplace({count, merges}, EcpOption{count, merges, mu});
        }
        int i = 0;
        while (i < c && ++digits[i] == r) digits[i++] = 0;
        if (i == c) break;
      }
      dead = options[t].empty();
    }
    if (dead) continue;
    std::vector<std::vector<unsigned>> signatures;
    for (const auto& per_type : options) {
      for (const auto& [key, opt] : per_type) {
        if (!opt.merges.empty()) signatures.push_back(opt.merges);
      }
    }
    std::sort(signatures.begin(), signatures.end());
    signatures.erase(std::unique(signatures.begin(), signatures.end()), signatures.end());

    auto connects = [&](const std::vector<int>& chosen) {
      std::vector<int> parent(s);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
      auto join_mask = [&](unsigned mask) {
        int first = -1;
        for (int a = 0; a < s; ++a) {
          if (!((mask >> a) & 1)) continue;
          if (first < 0) first = a;
          else parent[find(a)] = find(first);
        }
      };
      for (int a = 0; a < s; ++a) {
        for (int b2 = a + 1; b2 < s; ++b2) {
          if (scol[a] == scol[b2] && g.adjacent(sep[a], sep[b2])) parent[find(a)] = find(b2);
        }
      }
      for (int i : chosen) {
        for (unsigned mask : signatures[i]) join_mask(mask);
      }
      std::vector<int> root(r + 1, -1);
      for (int a = 0; a < s; ++a) {
        if (root[scol[a]] < 0) root[scol[a]] = find(a);
        else if (root[scol[a]] != find(a)) return false;
      }
      return true;
    };

    // Minimal sets of bridge signatures that connect every separator part.
    std::vector<std::vector<int>> minimal;
    const int max_pick = std::min<int>(s - r, static_cast<int>(signatures.size()));
    for (int size = 0; size <= max_pick; ++size) {
      std::vector<int> chosen(size);
      std::iota(chosen.begin(), chosen.end(), 0);
      while (true) {
        bool superset = false;
        for (const auto& m : minimal) {
          superset = superset || std::includes(chosen.begin(), chosen.end(), m.begin(), m.end());
        }
        if (!superset && connects(chosen)) {
          minimal.push_back(chosen);
          IlpInstance ilp;
          std::vector<std::vector<Term>> rows(r), need(size);
          std::vector<std::vector<const EcpOption*>> witness(local.size());
          for (std::size_t t = 0; t < local.size(); ++t) {
            const int d = table.classes[t].count();
            std::vector<Term> total;
            for (const auto& [key, opt] : options[t]) {
              const int x = ilp.add_variable(0, d);
              total.push_back({x, 1});
              witness[t].push_back(&opt);
              for (int c = 0; c < r; ++c) {
                if (opt.count[c]) rows[c].push_back({x, opt.count[c]});
              }
              for (int j = 0; j < size; ++j) {
                if (opt.merges == signatures[chosen[j]]) need[j].push_back({x, 1});
              }
            }
            ilp.add_constraint(total, Relation::Equal, d);
          }
          for (int c = 0; c < r; ++c) ilp.add_constraint(rows[c], Relation::Equal, residual[c]);
          for (auto& row : need) ilp.add_constraint(row, Relation::GreaterEqual, 1);
          if (auto point = feasible(ilp)) {
            Partition parts(r);
            for (int a = 0; a < s; ++a) parts[scol[a] - 1].push_back(sep[a]);
            int var = 0;
            for (std::size_t t = 0; t < local.size(); ++t) {
              const TypeClass& cls = table.classes[t];
              int member = 0;
              for (const auto* opt : witness[t]) {
                for (std::int64_t rep = 0; rep < (*point)[var]; ++rep, ++member) {
                  for (int pos = local[t].s; pos < local[t].m; ++pos) {
                    parts[opt->mu[pos - local[t].s] - 1].push_back(cls.orders[member][pos]);
                  }
                }
                ++var;
              }
            }
            return sorted_parts(std::move(parts));
          }
        }
        // Next combination.
        int i = size - 1;
        while (i >= 0 && chosen[i] == static_cast<int>(signatures.size()) - size + i) --i;
        if (i < 0) break;
        ++chosen[i];
        for (int j = i + 1; j < size; ++j) chosen[j] = chosen[j - 1] + 1;
      }
    }
  }
  return std::nullopt;
}

// ---- Equitable Connected Partition, case r > k ----

struct ManyParts {
  const Graph& g;
  int r, q, b;
  std::vector<char> taken;
  Partition parts;
  int big_used = 0, small_used = 0;

  std::optional<Partition> finish() {
    // Components of G - W each split on their own; a DP picks part counts.
    auto comps = components_without(g, std::vector<bool>(taken.begin(), taken.end()));
    const int want = r - static_cast<int>(parts.size());
    std::vector<std::map<int, Partition>> splits;
    for (const auto& comp : comps) {
      std::map<int, Partition> by_count;
      const int size = static_cast<int>(comp.size());
      std::vector<char> allowed(g.order(), 0);
      for (Vertex v : comp) allowed[v] = 1;
      for (int j = 1; j * q <= size; ++j) {
        const int big = size - j * q;
        if (big < 0 || big > j) continue;
        if (auto p = split_connected(g, allowed, big, j - big, q + 1)) by_count.emplace(j, std::move(*p));
      }
      if (by_count.empty()) return std::nullopt;
      splits.push_back(std::move(by_count));
    }
    // reach[i][c]: first i components can give c parts; choice[i][c] the count used by component i-1.
    std::vector<std::vector<int>> choice(splits.size() + 1, std::vector<int>(want + 1, -1));
    choice[0][0] = 0;
    for (std::size_t i = 0; i < splits.size(); ++i) {
      for (int c = 0; c <= want; ++c) {
        if (choice[i][c] < 0) continue;
        for (const auto& [j, p] : splits[i]) {
          if (c + j <= want && choice[i + 1][c + j] < 0) choice[i + 1][c + j] = j;
        }
      }
    }
    if (choice[splits.size()][want] < 0) return std::nullopt;
    Partition out = parts;
    for (int i = static_cast<int>(splits.size()), c = want; i > 0; --i) {
      const int j = choice[i][c];
      const Partition& p = splits[i - 1].at(j);
      out.insert(out.end(), p.begin(), p.end());
      c -= j;
    }
    return sorted_parts(std::move(out));
  }

  // Guesses the parts meeting the separator one at a time, re-typing the rest.
  std::optional<Partition> guess(const VertexSubset& sep) {
    std::vector<Vertex> open;
    for (Vertex v : sep) {
      if (!taken[v]) open.push_back(v);
    }
    if (open.empty()) return finish();
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.order(); ++v) {
      if (!taken[v]) keep.push_back(v);
    }
    const InducedSubgraph h = induced(g, keep);
    std::vector<Vertex> anchors;
    for (Vertex v : open) anchors.push_back(h.old_to_new[v]);
    const TypeTable table = classify(h.graph, anchors);
    for (int size : {q + 1, q}) {
      if (size == q + 1 ? big_used == b : small_used == r - b) continue;
      // Interchangeable components: the first `size` members of a class suffice.
      std::vector<char> allowed(g.order(), 0);
      std::vector<int> comp_of(g.order(), -1);
      std::vector<const VertexSubset*> comps;
      for (Vertex v : open) allowed[v] = 1;
      for (const auto& cls : table.classes) {
        for (int i = 0; i < std::min(cls.count(), size); ++i) {
          for (Vertex v : cls.members[i]) {
            allowed[h.new_to_old[v]] = 1;
            comp_of[h.new_to_old[v]] = static_cast<int>(comps.size());
          }
          comps.push_back(&cls.members[i]);
        }
      }
      std::set<std::pair<std::vector<Vertex>, std::vector<std::string>>> seen;
      for (const auto& part : connected_sets(g, allowed, open.front(), size)) {
        std::vector<Vertex> in_sep;
        std::vector<int> marks(h.graph.order(), 0);
        std::set<int> touched;
        for (Vertex v : part) {
          if (comp_of[v] < 0) {
            in_sep.push_back(v);
          } else {
            marks[h.old_to_new[v]] = 1;
            touched.insert(comp_of[v]);
          }
        }
        std::vector<std::string> key;
        for (int c : touched) key.push_back(marked_type_of(h.graph, anchors, *comps[c], marks).code);
        std::sort(key.begin(), key.end());
        if (!seen.emplace(in_sep, key).second) continue;
        for (Vertex v : part) taken[v] = 1;
        parts.push_back(part);
        (size == q + 1 ? big_used : small_used)++;
        auto result = guess(sep);
        (size == q + 1 ? big_used : small_used)--;
        parts.pop_back();
        for (Vertex v : part) taken[v] = 0;
        if (result) return result;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<Coloring> precoloring_extension_vi(const Graph& g, const Coloring& precolor, int r) {
  const int n = g.order();
  if (r < 1) throw InputError("r must be positive");
  if (static_cast<int>(precolor.size()) != n) throw InputError("precoloring must list every vertex");
  for (int c : precolor) {
    if (c < 0 || c > r) throw InputError("precolor outside 1..r");
  }
  for (const Edge& e : g.edges()) {
    if (precolor[e.u] && precolor[e.u] == precolor[e.v]) return std::nullopt;
  }
  if (n == 0) return Coloring{};
  const ViSet vs = vertex_integrity(g);
  const int k = vs.k;
  std::vector<char> in_s(n, 0);
  for (Vertex v : vs.separator) in_s[v] = 1;
  // Allowed colors; outside S the first min(r, k) colors suffice.
  std::vector<std::vector<int>> list(n);
  for (Vertex v = 0; v < n; ++v) {
    if (precolor[v]) continue;
    std::vector<char> banned(r + 1, 0);
    for (Vertex w : g.neighbors(v)) banned[precolor[w]] = 1;
    const int top = in_s[v] ? r : std::min(r, k);
    for (int c = 1; c <= top; ++c) {
      if (!banned[c]) list[v].push_back(c);
    }
    if (list[v].empty()) return std::nullopt;
  }
  std::vector<bool> cut(n, false);
  for (Vertex v = 0; v < n; ++v) cut[v] = precolor[v] != 0 || in_s[v];
  // Separator vertices with at least 2k options always have a free color.
  std::vector<Vertex> deleted, active;
  for (Vertex v : vs.separator) {
    if (precolor[v]) continue;
    if (static_cast<int>(list[v].size()) >= 2 * k) {
      deleted.push_back(v);
    } else {
      active.push_back(v);
    }
  }
  const auto comps = components_without(g, cut);
  Coloring color = precolor;

  auto color_component = [&](const VertexSubset& comp) {
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
      if (i == comp.size()) return true;
      const Vertex v = comp[i];
      for (int c : list[v]) {
        bool clash = false;
        for (Vertex w : g.neighbors(v)) clash = clash || color[w] == c;
        if (clash) continue;
        color[v] = c;
        if (rec(i + 1)) return true;
      }
      color[v] = 0;
      return false;
    };
    return rec(0);
  };
  std::function<bool(std::size_t)> guess = [&](std::size_t i) {
    if (i == active.size()) {
      for (std::size_t c = 0; c < comps.size(); ++c) {
        if (!color_component(comps[c])) {
          for (std::size_t d = 0; d <= c; ++d) {
            for (Vertex v : comps[d]) color[v] = 0;
          }
          return false;
        }
      }
      return true;
    }
    const Vertex v = active[i];
    for (int c : list[v]) {
      bool clash = false;
      for (Vertex w : g.neighbors(v)) clash = clash || color[w] == c;
      if (clash) continue;
      color[v] = c;
      if (guess(i + 1)) return true;
    }
    color[v] = 0;
    return false;
  };
  if (!guess(0)) return std::nullopt;
  for (auto it = deleted.rbegin(); it != deleted.rend(); ++it) {
    const Vertex v = *it;
    for (int c : list[v]) {
      bool clash = false;
      for (Vertex w : g.neighbors(v)) clash = clash || color[w] == c;
      if (!clash) {
        color[v] = c;
        break;
      }
    }
    if (!color[v]) throw std::logic_error("no free color for a high-list separator vertex");
  }
  return color;
}

std::optional<Coloring> equitable_coloring_vi(const Graph& g, int r) {
  if (r < 1) throw InputError("r must be positive");
  const int n = g.order();
  if (n == 0) return Coloring{};
  const ViSet vs = vertex_integrity(g);
  const int k = vs.k, q = n / r, b = n % r;
  const TypeTable table = classify(g, vs.separator);
  const auto local = local_types(g, table);
  if (r <= 2 * k) {
    ClassProblem pb;
    pb.groups = nonzero({b, r - b});
    for (int i = 0; i < r; ++i) pb.target.push_back(i < b ? q + 1 : q);
    auto out = solve_classes(g, table, local, pb);
    if (!out) return std::nullopt;
    return Coloring(out->begin(), out->end());
  }
  // k guessed classes, a of them large; the rest is colored round robin.
  for (int a = std::max(0, b - (r - k)); a <= std::min(k, b); ++a) {
    ClassProblem pb;
    pb.groups = nonzero({a, k - a});
    for (int i = 0; i < k; ++i) pb.target.push_back(i < a ? q + 1 : q);
    pb.allow_star = true;
    auto out = solve_classes(g, table, local, pb);
    if (!out) continue;
    Coloring color(out->begin(), out->end());
    std::vector<bool> done(n);
    for (Vertex v = 0; v < n; ++v) done[v] = color[v] != 0;
    int i = 0;
    for (const auto& comp : components_without(g, done)) {
      for (Vertex v : comp) color[v] = k + (i++ % (r - k)) + 1;
    }
    return color;
  }
  return std::nullopt;
}

std::optional<Partition> equitable_connected_partition_vi(const Graph& g, int r) {
  if (r < 1) throw InputError("r must be positive");
  const int n = g.order();
  if (r > n) return std::nullopt;
  const ViSet vs = vertex_integrity(g);
  const int k = vs.k, q = n / r;
  if (r <= k) {
    // Few vertices: every part may avoid the separator, search directly.
    if (q <= k) {
      auto p = split_connected(g, std::vector<char>(n, 1), n % r, r - n % r, q + 1);
      if (!p) return std::nullopt;
      return sorted_parts(std::move(*p));
    }
    const TypeTable table = classify(g, vs.separator);
    return ecp_few_parts(g, r, table, local_types(g, table));
  }
  ManyParts search{g, r, q, n % r, std::vector<char>(n, 0), {}, 0, 0};
  return search.guess(vs.separator);
}

}  // namespace viforge
