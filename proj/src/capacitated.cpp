#include "viforge/capacitated.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "viforge/errors.hpp"
#include "viforge/ilp.hpp"
#include "viforge/parallel.hpp"
#include "viforge/types.hpp"
#include "viforge/vertex_integrity.hpp"

namespace viforge {

namespace {

// Anchored component of one c-type in canonical positions: 0..s-1 are the
// separator vertices in order, s..m-1 the component.
struct LocalType {
  int s = 0;
  int m = 0;
  std::vector<char> adj;
  std::vector<int> cap;

  bool edge(int a, int b) const { return adj[a * m + b] != 0; }
};

LocalType local_type(const Graph& g, int s, const std::vector<Vertex>& order) {
  LocalType lt;
  lt.s = s;
  lt.m = static_cast<int>(order.size());
  lt.adj.assign(lt.m * lt.m, 0);
  for (int a = 0; a < lt.m; ++a) {
    lt.cap.push_back(g.capacity(order[a]));
    for (int b = 0; b < lt.m; ++b) lt.adj[a * lt.m + b] = g.adjacent(order[a], order[b]);
  }
  return lt;
}

struct Option {
  int size = 0;                // vertices of the component in the solution
  std::vector<int> load;       // per separator index
  unsigned claims = 0;         // CDS: separator indices dominated from inside
  std::vector<int> chosen;     // per component position: 1 when in the solution
  std::vector<std::pair<std::pair<int, int>, int>> cover;  // CVC: edge -> covering position
  std::vector<std::pair<int, int>> dominator;              // CDS: position -> dominator position
};

bool dominates(const Option& a, const Option& b) {
  if (a.size > b.size || (a.claims & b.claims) != b.claims) return false;
  for (std::size_t i = 0; i < a.load.size(); ++i) {
    if (a.load[i] > b.load[i]) return false;
  }
  return true;
}

// Keeps options not dominated by another; among equal signatures the first.
std::vector<Option> pareto(std::vector<Option> options) {
  std::vector<Option> kept;
  for (auto& o : options) {
    bool beaten = false;
    for (const auto& k : kept) {
      if (dominates(k, o)) {
        beaten = true;
        break;
      }
    }
    if (beaten) continue;
    std::erase_if(kept, [&](const Option& k) { return dominates(o, k); });
    kept.push_back(std::move(o));
  }
  return kept;
}

struct Prepared {
  VertexSubset sep;
  TypeTable table;
  std::vector<LocalType> local;
};

Prepared prepare(const Graph& g) {
  Prepared p;
  p.sep = vertex_integrity(g).separator;
  p.table = classify(g, p.sep, TypeMode::Capacity);
  for (const auto& cls : p.table.classes) {
    p.local.push_back(local_type(g, static_cast<int>(p.sep.size()), cls.type.order));
  }
  return p;
}

struct GuessResult {
  std::int64_t value = 0;
  std::vector<std::int64_t> point;
};

// Shared ILP: one variable per (type, option), component counts, rows per
// separator vertex for loads and claims. Returns the model and the variable
// ranges per type.
struct Model {
  IlpInstance ilp;
  std::vector<int> first_var;
};

Model build(const Prepared& p, const std::vector<std::vector<Option>>& options,
            const std::vector<int>& residual, unsigned need_claim) {
  Model m;
  const int s = static_cast<int>(p.sep.size());
  std::vector<std::vector<Term>> load_rows(s), claim_rows(s);
  std::vector<Term> objective;
  for (std::size_t t = 0; t < options.size(); ++t) {
    const int count = p.table.classes[t].count();
    m.first_var.push_back(m.ilp.variable_count());
    std::vector<Term> total;
    for (std::size_t o = 0; o < options[t].size(); ++o) {
      const Option& opt = options[t][o];
      const int x = m.ilp.add_variable(0, count, "x" + std::to_string(t) + "_" + std::to_string(o));
      total.push_back({x, 1});
      if (opt.size) objective.push_back({x, opt.size});
      for (int v = 0; v < s; ++v) {
        if (opt.load[v]) load_rows[v].push_back({x, opt.load[v]});
        if ((opt.claims >> v) & 1) claim_rows[v].push_back({x, 1});
      }
    }
    m.ilp.add_constraint(total, Relation::Equal, count);
  }
  for (int v = 0; v < s; ++v) {
    if (residual[v] >= 0 && !load_rows[v].empty()) {
      m.ilp.add_constraint(load_rows[v], Relation::LessEqual, residual[v]);
    }
    if ((need_claim >> v) & 1) m.ilp.add_constraint(claim_rows[v], Relation::GreaterEqual, 1);
  }
  m.ilp.set_objective(objective, Sense::Minimize);
  return m;
}

// ---- Capacitated Vertex Cover ----

struct CoverGuess {
  unsigned in_cover = 0;                // separator indices in X_S
  std::vector<int> residual;            // c'(v), -1 outside X_S
  std::vector<std::pair<Edge, Vertex>> inner;  // f_S
};

std::vector<Option> cover_options(const LocalType& lt, unsigned in_cover) {
  const int s = lt.s, m = lt.m;
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < m; ++a) {
    for (int b = std::max(a + 1, s); b < m; ++b) {
      if (lt.edge(a, b)) edges.emplace_back(a, b);
    }
  }
  std::vector<Option> all;
  for (unsigned w = 0; w < (1u << (m - s)); ++w) {
    auto in_w = [&](int pos) { return pos >= s && ((w >> (pos - s)) & 1); };
    auto in_x = [&](int pos) { return pos < s && ((in_cover >> pos) & 1); };
    std::vector<int> load(m, 0);
    std::vector<int> pick(edges.size(), -1);
    std::map<std::vector<int>, std::vector<int>> seen;  // load on S -> picks
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == edges.size()) {
        std::vector<int> key(load.begin(), load.begin() + s);
        seen.try_emplace(key, pick);
        return;
      }
      for (int end : {edges[i].first, edges[i].second}) {
        if (!(in_w(end) || in_x(end))) continue;
        if (end >= s && load[end] == lt.cap[end]) continue;
        ++load[end];
        pick[i] = end;
        self(self, i + 1);
        --load[end];
      }
    };
    rec(rec, 0);
    for (auto& [key, picks] : seen) {
      Option o;
      o.size = __builtin_popcount(w);
      o.load = key;
      o.chosen.assign(m, 0);
      for (int pos = s; pos < m; ++pos) o.chosen[pos] = in_w(pos);
      for (std::size_t i = 0; i < edges.size(); ++i) o.cover.push_back({edges[i], picks[i]});
      all.push_back(std::move(o));
    }
  }
  return pareto(std::move(all));
}

std::vector<CoverGuess> cover_guesses(const Graph& g, const VertexSubset& sep) {
  const int s = static_cast<int>(sep.size());
  std::vector<Edge> inner;
  for (int a = 0; a < s; ++a) {
    for (int b = a + 1; b < s; ++b) {
      if (g.adjacent(sep[a], sep[b])) inner.emplace_back(a, b);
    }
  }
  std::map<std::pair<unsigned, std::vector<int>>, CoverGuess> unique;
  for (unsigned x = 0; x < (1u << s); ++x) {
    std::vector<int> load(s, 0);
    std::vector<std::pair<Edge, Vertex>> f;
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == inner.size()) {
        CoverGuess guess;
        guess.in_cover = x;
        guess.residual.assign(s, -1);
        for (int v = 0; v < s; ++v) {
          if (!((x >> v) & 1)) continue;
          guess.residual[v] = g.capacity(sep[v]) - load[v];
          if (guess.residual[v] < 0) return;
        }
        guess.inner = f;
        unique.try_emplace({x, guess.residual}, std::move(guess));
        return;
      }
      for (int end : {inner[i].u, inner[i].v}) {
        if (!((x >> end) & 1)) continue;
        ++load[end];
        f.push_back({Edge(sep[inner[i].u], sep[inner[i].v]), sep[end]});
        self(self, i + 1);
        f.pop_back();
        --load[end];
      }
    };
    rec(rec, 0);
  }
  std::vector<CoverGuess> out;
  for (auto& [key, guess] : unique) out.push_back(std::move(guess));
  std::stable_sort(out.begin(), out.end(), [](const CoverGuess& a, const CoverGuess& b) {
    return __builtin_popcount(a.in_cover) < __builtin_popcount(b.in_cover);
  });
  return out;
}

// ---- Capacitated Dominating Set ----

struct DominationGuess {
  unsigned in_d = 0, in_a = 0, in_b = 0;  // separator indices
  std::vector<int> residual;              // c'(v), -1 outside D_S
  std::vector<std::pair<Vertex, Vertex>> dominated;  // f_S: A_S vertex -> dominator
};

std::vector<Option> domination_options(const LocalType& lt, const DominationGuess& guess) {
  const int s = lt.s, m = lt.m, c = m - s;
  std::vector<Option> all;
  int labelings = 1;
  for (int i = 0; i < c; ++i) labelings *= 3;
  for (int code = 0; code < labelings; ++code) {
    std::vector<int> label(m, -1);  // 0 = D_C, 1 = A_C, 2 = B_C
    for (int i = 0, rest = code; i < c; ++i, rest /= 3) label[s + i] = rest % 3;
    int size = 0;
    bool ok = true;
    // B_C vertices need a neighbor in D_S.
    std::vector<std::vector<int>> g_choices;
    std::vector<int> b_vertices;
    for (int pos = s; pos < m; ++pos) {
      if (label[pos] == 0) ++size;
      if (label[pos] != 2) continue;
      std::vector<int> opts;
      for (int a = 0; a < s; ++a) {
        if (((guess.in_d >> a) & 1) && lt.edge(pos, a)) opts.push_back(a);
      }
      if (opts.empty()) ok = false;
      g_choices.push_back(opts);
      b_vertices.push_back(pos);
    }
    if (!ok) continue;
    // Separator vertices of B_S this component could dominate.
    std::vector<int> claimable;
    for (int a = 0; a < s; ++a) {
      if (!((guess.in_b >> a) & 1)) continue;
      for (int pos = s; pos < m; ++pos) {
        if (label[pos] == 0 && lt.edge(pos, a)) {
          claimable.push_back(a);
          break;
        }
      }
    }
    // Load vectors on D_S reachable by g, with one witness each.
    std::map<std::vector<int>, std::vector<int>> g_loads;
    {
      std::vector<int> load(s, 0), pick(b_vertices.size());
      auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == b_vertices.size()) {
          g_loads.try_emplace(load, pick);
          return;
        }
        for (int a : g_choices[i]) {
          ++load[a];
          pick[i] = a;
          self(self, i + 1);
          --load[a];
        }
      };
      rec(rec, 0);
    }
    for (unsigned sub = 0; sub < (1u << claimable.size()); ++sub) {
      // Vertices to dominate from D_C: A_C plus the claimed separator vertices.
      std::vector<int> targets;
      unsigned claims = 0;
      for (int pos = s; pos < m; ++pos) {
        if (label[pos] == 1) targets.push_back(pos);
      }
      for (std::size_t i = 0; i < claimable.size(); ++i) {
        if ((sub >> i) & 1) {
          targets.push_back(claimable[i]);
          claims |= 1u << claimable[i];
        }
      }
      std::vector<int> load(m, 0), pick(targets.size(), -1);
      auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == targets.size()) return true;
        for (int d = s; d < m; ++d) {
          if (label[d] != 0 || !lt.edge(targets[i], d) || load[d] == lt.cap[d]) continue;
          ++load[d];
          pick[i] = d;
          if (self(self, i + 1)) return true;
          --load[d];
        }
        return false;
      };
      if (!rec(rec, 0)) continue;
      for (const auto& [gload, gpick] : g_loads) {
        Option o;
        o.size = size;
        o.load = gload;
        o.claims = claims;
        o.chosen.assign(m, 0);
        for (int pos = s; pos < m; ++pos) o.chosen[pos] = label[pos] == 0;
        for (std::size_t i = 0; i < targets.size(); ++i) o.dominator.emplace_back(targets[i], pick[i]);
        for (std::size_t i = 0; i < b_vertices.size(); ++i) {
          o.dominator.emplace_back(b_vertices[i], gpick[i]);
        }
        all.push_back(std::move(o));
      }
    }
  }
  return pareto(std::move(all));
}

std::vector<DominationGuess> domination_guesses(const Graph& g, const VertexSubset& sep) {
  const int s = static_cast<int>(sep.size());
  int labelings = 1;
  for (int i = 0; i < s; ++i) labelings *= 3;
  std::map<std::tuple<unsigned, unsigned, std::vector<int>>, DominationGuess> unique;
  for (int code = 0; code < labelings; ++code) {
    DominationGuess base;
    for (int i = 0, rest = code; i < s; ++i, rest /= 3) {
      (rest % 3 == 0 ? base.in_d : rest % 3 == 1 ? base.in_a : base.in_b) |= 1u << i;
    }
    std::vector<int> a_list;
    for (int i = 0; i < s; ++i) {
      if ((base.in_a >> i) & 1) a_list.push_back(i);
    }
    std::vector<int> load(s, 0);
    std::vector<std::pair<Vertex, Vertex>> f;
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == a_list.size()) {
        DominationGuess guess = base;
        guess.residual.assign(s, -1);
        for (int v = 0; v < s; ++v) {
          if (!((base.in_d >> v) & 1)) continue;
          guess.residual[v] = g.capacity(sep[v]) - load[v];
          if (guess.residual[v] < 0) return;
        }
        guess.dominated = f;
        unique.try_emplace({guess.in_d, guess.in_a, guess.residual}, std::move(guess));
        return;
      }
      for (int d = 0; d < s; ++d) {
        if (!((base.in_d >> d) & 1) || !g.adjacent(sep[a_list[i]], sep[d])) continue;
        ++load[d];
        f.emplace_back(sep[a_list[i]], sep[d]);
        self(self, i + 1);
        f.pop_back();
        --load[d];
      }
    };
    rec(rec, 0);
  }
  std::vector<DominationGuess> out;
  for (auto& [key, guess] : unique) out.push_back(std::move(guess));
  std::stable_sort(out.begin(), out.end(), [](const DominationGuess& a, const DominationGuess& b) {
    return __builtin_popcount(a.in_d) < __builtin_popcount(b.in_d);
  });
  return out;
}

}  // namespace

std::optional<CapacitatedCoverWitness> cvc_vi(const Graph& g) {
  if (!g.has_capacities()) throw InputError("capacitated vertex cover needs capacities");
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) > 0 && g.capacity(v) > g.degree(v)) {
      throw InputError("capacity of vertex " + std::to_string(v) + " exceeds its degree");
    }
  }
  CapacitatedCoverWitness witness;
  witness.assignment.assign(g.size(), -1);
  if (g.size() == 0) return witness;
  const Prepared p = prepare(g);
  const std::vector<CoverGuess> guesses = cover_guesses(g, p.sep);

  auto options_for = [&](const CoverGuess& guess) {
    std::vector<std::vector<Option>> options;
    for (const auto& lt : p.local) options.push_back(cover_options(lt, guess.in_cover));
    return options;
  };
  auto eval = [&](std::size_t i, std::optional<std::int64_t> cutoff) -> std::optional<GuessResult> {
    const CoverGuess& guess = guesses[i];
    const std::int64_t base = __builtin_popcount(guess.in_cover);
    if (cutoff && base >= *cutoff) return std::nullopt;
    auto options = options_for(guess);
    for (const auto& list : options) {
      if (list.empty()) return std::nullopt;
    }
    Model m = build(p, options, guess.residual, 0);
    std::optional<std::int64_t> target;
    if (cutoff) target = *cutoff - base - 1;
    auto sol = optimize(m.ilp, target);
    if (!sol) return std::nullopt;
    return GuessResult{base + sol->objective, sol->values};
  };
  auto best = best_over_guesses<GuessResult>(
      guesses.size(), eval, [](const GuessResult& r) { return r.value; }, false);
  if (!best) return std::nullopt;

  const CoverGuess& guess = guesses[best->first];
  const auto options = options_for(guess);
  const Model m = build(p, options, guess.residual, 0);
  std::vector<char> in_cover(g.order(), 0);
  for (int v = 0; v < static_cast<int>(p.sep.size()); ++v) {
    if ((guess.in_cover >> v) & 1) in_cover[p.sep[v]] = 1;
  }
  for (const auto& [e, v] : guess.inner) witness.assignment[*g.edge_index(e.u, e.v)] = v;
  for (std::size_t t = 0; t < options.size(); ++t) {
    const TypeClass& cls = p.table.classes[t];
    int member = 0;
    for (std::size_t o = 0; o < options[t].size(); ++o) {
      const Option& opt = options[t][o];
      for (std::int64_t rep = 0; rep < best->second.point[m.first_var[t] + o]; ++rep, ++member) {
        const auto& order = cls.orders[member];
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
          if (opt.chosen[pos]) in_cover[order[pos]] = 1;
        }
        for (const auto& [edge, end] : opt.cover) {
          witness.assignment[*g.edge_index(order[edge.first], order[edge.second])] = order[end];
        }
      }
    }
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (in_cover[v]) witness.cover.push_back(v);
  }
  if (static_cast<std::int64_t>(witness.cover.size()) != best->second.value) {
    throw std::logic_error("cover reconstruction disagrees with the ILP value");
  }
  return witness;
}

CapacitatedDominationWitness cds_vi(const Graph& g) {
  if (!g.has_capacities()) throw InputError("capacitated dominating set needs capacities");
  CapacitatedDominationWitness witness;
  if (g.order() == 0) return witness;
  // Capacity above the degree never helps; clamping merges c-types.
  std::vector<int> clamped(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    clamped[v] = std::max(1, std::min(g.capacity(v), g.degree(v)));
  }
  const Graph h = g.with_capacities(clamped);
  const Prepared p = prepare(h);
  const std::vector<DominationGuess> guesses = domination_guesses(h, p.sep);

  auto options_for = [&](const DominationGuess& guess) {
    std::vector<std::vector<Option>> options;
    for (const auto& lt : p.local) options.push_back(domination_options(lt, guess));
    return options;
  };
  auto eval = [&](std::size_t i, std::optional<std::int64_t> cutoff) -> std::optional<GuessResult> {
    const DominationGuess& guess = guesses[i];
    const std::int64_t base = __builtin_popcount(guess.in_d);
    if (cutoff && base >= *cutoff) return std::nullopt;
    auto options = options_for(guess);
    for (const auto& list : options) {
      if (list.empty()) return std::nullopt;
    }
    Model m = build(p, options, guess.residual, guess.in_b);
    std::optional<std::int64_t> target;
    if (cutoff) target = *cutoff - base - 1;
    auto sol = optimize(m.ilp, target);
    if (!sol) return std::nullopt;
    return GuessResult{base + sol->objective, sol->values};
  };
  auto best = best_over_guesses<GuessResult>(
      guesses.size(), eval, [](const GuessResult& r) { return r.value; }, false);
  if (!best) throw std::logic_error("no capacitated dominating set guess survived");

  const DominationGuess& guess = guesses[best->first];
  const auto options = options_for(guess);
  const Model m = build(p, options, guess.residual, guess.in_b);
  const int s = static_cast<int>(p.sep.size());
  std::vector<char> in_d(h.order(), 0);
  witness.assignment.assign(h.order(), -1);
  for (int v = 0; v < s; ++v) {
    if ((guess.in_d >> v) & 1) in_d[p.sep[v]] = 1;
  }
  for (const auto& [v, d] : guess.dominated) witness.assignment[v] = d;
  for (std::size_t t = 0; t < options.size(); ++t) {
    const TypeClass& cls = p.table.classes[t];
    int member = 0;
    for (std::size_t o = 0; o < options[t].size(); ++o) {
      const Option& opt = options[t][o];
      for (std::int64_t rep = 0; rep < best->second.point[m.first_var[t] + o]; ++rep, ++member) {
        const auto& order = cls.orders[member];
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
          if (opt.chosen[pos]) in_d[order[pos]] = 1;
        }
        for (const auto& [target, dom] : opt.dominator) {
          const Vertex v = order[target];
          // A separator vertex claimed by several components keeps the first.
          if (target < s && witness.assignment[v] >= 0) continue;
          witness.assignment[v] = order[dom];
        }
      }
    }
  }
  for (Vertex v = 0; v < h.order(); ++v) {
    if (in_d[v]) witness.dset.push_back(v);
  }
  if (static_cast<std::int64_t>(witness.dset.size()) != best->second.value) {
    throw std::logic_error("domination reconstruction disagrees with the ILP value");
  }
  return witness;
}

bool cvc_at_most(const Graph& g, int k) {
  auto w = cvc_vi(g);
  return w && static_cast<int>(w->cover.size()) <= k;
}

bool cds_at_most(const Graph& g, int k) {
  return static_cast<int>(cds_vi(g).dset.size()) <= k;
}

}  // namespace viforge
