#include "viforge/common_subgraph.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

#include "viforge/ilp.hpp"
#include "viforge/parallel.hpp"
#include "viforge/types.hpp"
#include "viforge/vertex_integrity.hpp"

namespace viforge {

namespace {

enum class Kind { Edges, Vertices };

// Piece in canonical positions of its component type.
struct PositionalPiece {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> internal;
  std::vector<std::pair<int, int>> boundary;
};

struct CachedDecomposition {
  std::vector<std::string> multiset;
  std::vector<PositionalPiece> pieces;
};

using DecompositionList = std::vector<CachedDecomposition>;

// Per-code gain: edges of the piece (MCS) or its vertices (MCIS).
struct DecompositionCache {
  Kind kind;
  std::mutex mutex;
  std::map<std::string, std::shared_ptr<const DecompositionList>> lists;
  std::map<std::string, std::int64_t> gains;

  std::shared_ptr<const DecompositionList> get(const Graph& h, const std::vector<Vertex>& r,
                                               const TypeClass& cls) {
    {
      std::lock_guard lock(mutex);
      if (auto it = lists.find(cls.type.code); it != lists.end()) return it->second;
    }
    const auto& order = cls.orders[0];
    std::vector<int> pos(h.order(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    const auto mode =
        kind == Kind::Edges ? DecompositionMode::Subgraph : DecompositionMode::Induced;
    auto list = std::make_shared<DecompositionList>();
    std::map<std::string, std::int64_t> local_gains;
    std::set<std::vector<std::string>> seen;
    for (const Decomposition& d : enumerate_decompositions(h, r, cls.members[0], mode)) {
      CachedDecomposition cd;
      for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        const Piece& p = d.pieces[i];
        const std::int64_t gain =
            kind == Kind::Edges ? static_cast<std::int64_t>(p.internal.size() + p.boundary.size())
                                : static_cast<std::int64_t>(p.vertices.size());
        // Edgeless pieces add nothing to a common subgraph; dropping them
        // yields an equally good decomposition.
        if (gain == 0) continue;
        PositionalPiece pp;
        for (Vertex v : p.vertices) pp.vertices.push_back(pos[v]);
        for (const Edge& e : p.internal) pp.internal.emplace_back(pos[e.u], pos[e.v]);
        for (const Edge& e : p.boundary) pp.boundary.emplace_back(pos[e.u], pos[e.v]);
        cd.multiset.push_back(d.multiset[i]);
        cd.pieces.push_back(std::move(pp));
        local_gains[d.multiset[i]] = gain;
      }
      if (seen.insert(cd.multiset).second) list->push_back(std::move(cd));
    }
    std::lock_guard lock(mutex);
    gains.insert(local_gains.begin(), local_gains.end());
    return lists.try_emplace(cls.type.code, std::move(list)).first->second;
  }

  std::int64_t gain(const std::string& code) {
    std::lock_guard lock(mutex);
    return gains.at(code);
  }
};

// One guess: anchors of both graphs aligned by the map, plus the separator
// vertices dropped from each graph.
struct Guess {
  std::vector<Vertex> r1, r2;
  std::vector<Vertex> drop1, drop2;
  std::int64_t base = 0;   // matched edges inside R, or |R|
  std::int64_t bound = 0;  // upper bound on the guess value
};

struct Side {
  InducedSubgraph h;
  std::vector<Vertex> r;  // anchors as H vertices
  TypeTable table;
  std::vector<std::shared_ptr<const DecompositionList>> lists;  // per class
  std::vector<std::vector<char>> alive;                         // per class, per decomposition
};

std::vector<Vertex> complement(int n, const std::vector<Vertex>& drop) {
  std::vector<char> gone(n, 0);
  for (Vertex v : drop) gone[v] = 1;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < n; ++v) {
    if (!gone[v]) keep.push_back(v);
  }
  return keep;
}

Side materialize(const Graph& g, const std::vector<Vertex>& drop, const std::vector<Vertex>& r,
                 DecompositionCache& cache) {
  Side side;
  side.h = induced(g, complement(g.order(), drop));
  for (Vertex v : r) side.r.push_back(side.h.old_to_new[v]);
  side.table = classify(side.h.graph, side.r);
  for (const TypeClass& cls : side.table.classes) {
    side.lists.push_back(cache.get(side.h.graph, side.r, cls));
    side.alive.emplace_back(side.lists.back()->size(), 1);
  }
  return side;
}

std::set<std::string> live_codes(const Side& s) {
  std::set<std::string> codes;
  for (std::size_t t = 0; t < s.lists.size(); ++t) {
    for (std::size_t d = 0; d < s.lists[t]->size(); ++d) {
      if (s.alive[t][d]) codes.insert((*s.lists[t])[d].multiset.begin(),
                                      (*s.lists[t])[d].multiset.end());
    }
  }
  return codes;
}

// Drops decompositions using a code the other side can never match, until
// nothing changes. Returns the codes live on both sides.
std::set<std::string> prune_unmatched(Side& a, Side& b) {
  while (true) {
    const std::set<std::string> ca = live_codes(a), cb = live_codes(b);
    bool changed = false;
    auto prune = [&changed](Side& s, const std::set<std::string>& other) {
      for (std::size_t t = 0; t < s.lists.size(); ++t) {
        for (std::size_t d = 0; d < s.lists[t]->size(); ++d) {
          if (!s.alive[t][d]) continue;
          for (const auto& code : (*s.lists[t])[d].multiset) {
            if (!other.count(code)) {
              s.alive[t][d] = 0;
              changed = true;
              break;
            }
          }
        }
      }
    };
    prune(a, cb);
    prune(b, ca);
    if (!changed) {
      std::set<std::string> both;
      std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(),
                            std::inserter(both, both.end()));
      return both;
    }
  }
}

struct Model {
  IlpInstance ilp;
  std::vector<std::string> codes;  // y variables come first, in this order
  // Variable index per (side, class, decomposition); -1 when pruned.
  std::vector<std::vector<std::vector<int>>> x_var;
};

Model build_model(Side& s1, Side& s2, DecompositionCache& cache) {
  Model m;
  const std::set<std::string> shared = prune_unmatched(s1, s2);
  m.codes.assign(shared.begin(), shared.end());
  std::map<std::string, int> code_index;
  for (std::size_t i = 0; i < m.codes.size(); ++i) code_index[m.codes[i]] = static_cast<int>(i);

  // y bounds: pieces of that code the side can produce at most.
  auto side_cap = [&](const Side& s, std::vector<std::int64_t>& cap) {
    cap.assign(m.codes.size(), 0);
    for (std::size_t t = 0; t < s.lists.size(); ++t) {
      std::vector<std::int64_t> most(m.codes.size(), 0);
      for (std::size_t d = 0; d < s.lists[t]->size(); ++d) {
        if (!s.alive[t][d]) continue;
        std::map<int, std::int64_t> mult;
        for (const auto& code : (*s.lists[t])[d].multiset) ++mult[code_index.at(code)];
        for (auto [c, k] : mult) most[c] = std::max(most[c], k);
      }
      for (std::size_t c = 0; c < most.size(); ++c) cap[c] += most[c] * s.table.classes[t].count();
    }
  };
  std::vector<std::int64_t> cap1, cap2;
  side_cap(s1, cap1);
  side_cap(s2, cap2);
  std::vector<Term> objective;
  for (std::size_t c = 0; c < m.codes.size(); ++c) {
    const int y = m.ilp.add_variable(0, std::min(cap1[c], cap2[c]), "y" + std::to_string(c));
    objective.push_back({y, cache.gain(m.codes[c])});
  }
  for (int side = 0; side < 2; ++side) {
    Side& s = side == 0 ? s1 : s2;
    std::vector<std::vector<Term>> link(m.codes.size());
    for (std::size_t c = 0; c < m.codes.size(); ++c) link[c].push_back({static_cast<int>(c), 1});
    m.x_var.emplace_back();
    for (std::size_t t = 0; t < s.lists.size(); ++t) {
      const int count = s.table.classes[t].count();
      std::vector<Term> total;
      std::vector<int> vars(s.lists[t]->size(), -1);
      for (std::size_t d = 0; d < s.lists[t]->size(); ++d) {
        if (!s.alive[t][d]) continue;
        const int x = m.ilp.add_variable(0, count, "x" + std::to_string(side + 1) + "_" +
                                                       std::to_string(t) + "_" +
                                                       std::to_string(d));
        vars[d] = x;
        total.push_back({x, 1});
        std::map<int, std::int64_t> mult;
        for (const auto& code : (*s.lists[t])[d].multiset) ++mult[code_index.at(code)];
        for (auto [c, k] : mult) link[c].push_back({x, -k});
      }
      m.ilp.add_constraint(total, Relation::Equal, count);
      m.x_var.back().push_back(std::move(vars));
    }
    for (auto& row : link) m.ilp.add_constraint(row, Relation::Equal, 0);
  }
  m.ilp.set_objective(objective, Sense::Maximize);
  return m;
}

// Ordered m-tuples of distinct vertices of g - s, one per class of tuples
// related by an automorphism of h fixing the anchors. Vertices are g ids.
std::vector<std::vector<Vertex>> tuple_candidates(const Graph& g, const std::vector<Vertex>& drop,
                                                  const std::vector<Vertex>& anchors, int m) {
  if (m == 0) return {{}};
  InducedSubgraph h = induced(g, complement(g.order(), drop));
  std::vector<Vertex> a;
  for (Vertex v : anchors) a.push_back(h.old_to_new[v]);
  const TypeTable table = classify(h.graph, a);
  // Members of one class are interchangeable, so m members per class suffice.
  std::vector<Vertex> pool;
  std::vector<int> comp_of(h.graph.order(), -1);
  std::vector<const VertexSubset*> comps;
  for (const TypeClass& cls : table.classes) {
    for (int i = 0; i < std::min(cls.count(), m); ++i) {
      for (Vertex v : cls.members[i]) {
        pool.push_back(v);
        comp_of[v] = static_cast<int>(comps.size());
      }
      comps.push_back(&cls.members[i]);
    }
  }
  std::vector<std::vector<Vertex>> out;
  std::set<std::vector<std::string>> keys;
  std::vector<Vertex> tuple;
  std::vector<char> used(pool.size(), 0);
  std::vector<int> marks(h.graph.order(), 0);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(tuple.size()) == m) {
      std::set<int> touched;
      for (Vertex v : tuple) touched.insert(comp_of[v]);
      std::vector<std::string> key;
      for (int c : touched) key.push_back(marked_type_of(h.graph, a, *comps[c], marks).code);
      std::sort(key.begin(), key.end());
      if (keys.insert(key).second) {
        std::vector<Vertex> original;
        for (Vertex v : tuple) original.push_back(h.new_to_old[v]);
        out.push_back(std::move(original));
      }
      return;
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      used[i] = 1;
      tuple.push_back(pool[i]);
      marks[pool[i]] = static_cast<int>(tuple.size());
      self(self);
      marks[pool[i]] = 0;
      tuple.pop_back();
      used[i] = 0;
    }
  };
  rec(rec);
  return out;
}

int edges_within(const Graph& g, const std::vector<char>& in) {
  int count = 0;
  for (const Edge& e : g.edges()) count += in[e.u] && in[e.v];
  return count;
}

std::vector<Guess> enumerate_guesses(const Graph& g1, const Graph& g2, const VertexSubset& s1,
                                     const VertexSubset& s2, Kind kind) {
  std::vector<Guess> guesses;
  std::map<std::tuple<int, std::vector<Vertex>, int>, std::vector<std::vector<Vertex>>> memo;
  auto candidates = [&](int side, const std::vector<Vertex>& drop,
                        const std::vector<Vertex>& anchors, int m) -> const auto& {
    auto key = std::make_tuple(side, drop, m);
    auto it = memo.find(key);
    if (it == memo.end()) {
      it = memo.emplace(key, tuple_candidates(side == 1 ? g1 : g2, drop, anchors, m)).first;
    }
    return it->second;
  };
  auto pow3 = [](std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= 3;
    return r;
  };
  // Split of a separator into kept-in-S (X), mapped-outside (Y) and dropped.
  auto split = [](const VertexSubset& s, std::size_t code, std::vector<Vertex>& x,
                  std::vector<Vertex>& y, std::vector<Vertex>& drop) {
    for (Vertex v : s) {
      const int part = static_cast<int>(code % 3);
      code /= 3;
      (part == 0 ? x : part == 1 ? y : drop).push_back(v);
    }
  };
  for (std::size_t c1 = 0; c1 < pow3(s1.size()); ++c1) {
    std::vector<Vertex> x1, y1, drop1;
    split(s1, c1, x1, y1, drop1);
    for (std::size_t c2 = 0; c2 < pow3(s2.size()); ++c2) {
      std::vector<Vertex> x2, y2, drop2;
      split(s2, c2, x2, y2, drop2);
      if (x1.size() != x2.size()) continue;
      std::vector<Vertex> anchors1 = x1, anchors2 = x2;
      anchors1.insert(anchors1.end(), y1.begin(), y1.end());
      anchors2.insert(anchors2.end(), y2.begin(), y2.end());
      const auto& z2_options = candidates(2, drop2, anchors2, static_cast<int>(y1.size()));
      const auto& z1_options = candidates(1, drop1, anchors1, static_cast<int>(y2.size()));
      std::vector<Vertex> x2_perm = x2;
      do {
        for (const auto& z2 : z2_options) {
          for (const auto& z1 : z1_options) {
            Guess guess;
            guess.drop1 = drop1;
            guess.drop2 = drop2;
            guess.r1 = x1;
            guess.r1.insert(guess.r1.end(), y1.begin(), y1.end());
            guess.r1.insert(guess.r1.end(), z1.begin(), z1.end());
            guess.r2 = x2_perm;
            guess.r2.insert(guess.r2.end(), z2.begin(), z2.end());
            guess.r2.insert(guess.r2.end(), y2.begin(), y2.end());
            const std::size_t rs = guess.r1.size();
            bool iso = true;
            std::int64_t matched = 0;
            for (std::size_t i = 0; i < rs; ++i) {
              for (std::size_t j = i + 1; j < rs; ++j) {
                const bool e1 = g1.adjacent(guess.r1[i], guess.r1[j]);
                const bool e2 = g2.adjacent(guess.r2[i], guess.r2[j]);
                matched += e1 && e2;
                iso = iso && e1 == e2;
              }
            }
            if (kind == Kind::Vertices && !iso) continue;
            std::vector<char> keep1(g1.order(), 1), keep2(g2.order(), 1), in_r1(g1.order(), 0),
                in_r2(g2.order(), 0);
            for (Vertex v : drop1) keep1[v] = 0;
            for (Vertex v : drop2) keep2[v] = 0;
            for (Vertex v : guess.r1) in_r1[v] = 1;
            for (Vertex v : guess.r2) in_r2[v] = 1;
            if (kind == Kind::Edges) {
              guess.base = matched;
              const std::int64_t rest1 = edges_within(g1, keep1) - edges_within(g1, in_r1);
              const std::int64_t rest2 = edges_within(g2, keep2) - edges_within(g2, in_r2);
              guess.bound = matched + std::min(rest1, rest2);
            } else {
              guess.base = static_cast<std::int64_t>(rs);
              const std::int64_t rest1 = g1.order() - static_cast<std::int64_t>(drop1.size() + rs);
              const std::int64_t rest2 = g2.order() - static_cast<std::int64_t>(drop2.size() + rs);
              guess.bound = guess.base + std::min(rest1, rest2);
            }
            guesses.push_back(std::move(guess));
          }
        }
      } while (std::next_permutation(x2_perm.begin(), x2_perm.end()));
    }
  }
  // Promising guesses first so the shared cutoff skips the rest early.
  std::stable_sort(guesses.begin(), guesses.end(),
                   [](const Guess& a, const Guess& b) { return a.bound > b.bound; });
  return guesses;
}

struct GuessResult {
  std::int64_t value = 0;
  std::vector<std::int64_t> point;
};

// Pieces of one side, grouped by code, as H vertices of that side.
std::map<std::string, std::vector<Piece>> instantiate(const Side& s, const Model& m, int side,
                                                      const std::vector<std::int64_t>& point) {
  std::map<std::string, std::vector<Piece>> out;
  for (std::size_t t = 0; t < s.lists.size(); ++t) {
    const TypeClass& cls = s.table.classes[t];
    int member = 0;
    for (std::size_t d = 0; d < s.lists[t]->size(); ++d) {
      const int var = m.x_var[side][t][d];
      if (var < 0) continue;
      const CachedDecomposition& cd = (*s.lists[t])[d];
      for (std::int64_t rep = 0; rep < point[var]; ++rep, ++member) {
        const auto& order = cls.orders[member];
        for (std::size_t i = 0; i < cd.pieces.size(); ++i) {
          const PositionalPiece& pp = cd.pieces[i];
          Piece p;
          for (int v : pp.vertices) p.vertices.push_back(order[v]);
          std::sort(p.vertices.begin(), p.vertices.end());
          for (auto [a, b] : pp.internal) p.internal.emplace_back(order[a], order[b]);
          for (auto [a, b] : pp.boundary) p.boundary.emplace_back(order[a], order[b]);
          out[cd.multiset[i]].push_back(std::move(p));
        }
      }
    }
  }
  return out;
}

CommonSubgraphWitness solve(const Graph& g1, const Graph& g2, Kind kind) {
  CommonSubgraphWitness result;
  result.mapping.assign(g1.order(), -1);
  if (g1.order() == 0 || g2.order() == 0) return result;
  const VertexSubset s1 = vertex_integrity(g1).separator;
  const VertexSubset s2 = vertex_integrity(g2).separator;
  const std::vector<Guess> guesses = enumerate_guesses(g1, g2, s1, s2, kind);
  DecompositionCache cache{kind, {}, {}, {}};

  auto eval = [&](std::size_t i,
                  std::optional<std::int64_t> cutoff) -> std::optional<GuessResult> {
    const Guess& guess = guesses[i];
    // Ties lose to earlier guesses, so only strict improvements matter.
    if (cutoff && guess.bound <= *cutoff) return std::nullopt;
    Side side1 = materialize(g1, guess.drop1, guess.r1, cache);
    Side side2 = materialize(g2, guess.drop2, guess.r2, cache);
    Model m = build_model(side1, side2, cache);
    std::optional<std::int64_t> target;
    if (cutoff) target = *cutoff - guess.base + 1;
    auto sol = optimize(m.ilp, target);
    if (!sol) return std::nullopt;
    return GuessResult{guess.base + sol->objective, sol->values};
  };
  auto best = best_over_guesses<GuessResult>(
      guesses.size(), eval, [](const GuessResult& r) { return r.value; }, true);
  if (!best) throw std::logic_error("no common subgraph guess survived");

  // Rebuild the winning model and pair pieces of equal code in order.
  const Guess& guess = guesses[best->first];
  Side side1 = materialize(g1, guess.drop1, guess.r1, cache);
  Side side2 = materialize(g2, guess.drop2, guess.r2, cache);
  Model m = build_model(side1, side2, cache);
  for (std::size_t i = 0; i < guess.r1.size(); ++i) result.mapping[guess.r1[i]] = guess.r2[i];
  auto pieces1 = instantiate(side1, m, 0, best->second.point);
  auto pieces2 = instantiate(side2, m, 1, best->second.point);
  const std::size_t rs = guess.r1.size();
  for (auto& [code, list1] : pieces1) {
    const auto& list2 = pieces2.at(code);
    for (std::size_t i = 0; i < list1.size(); ++i) {
      const GType t1 = piece_type(side1.h.graph, side1.r, list1[i]);
      const GType t2 = piece_type(side2.h.graph, side2.r, list2[i]);
      for (std::size_t j = rs; j < t1.order.size(); ++j) {
        result.mapping[side1.h.new_to_old[t1.order[j]]] = side2.h.new_to_old[t2.order[j]];
      }
    }
  }
  int value = 0;
  if (kind == Kind::Edges) {
    for (const Edge& e : g1.edges()) {
      const Vertex a = result.mapping[e.u], b = result.mapping[e.v];
      value += a >= 0 && b >= 0 && g2.adjacent(a, b);
    }
  } else {
    for (Vertex v : result.mapping) value += v >= 0;
  }
  if (value != best->second.value) {
    throw std::logic_error("common subgraph reconstruction disagrees with the ILP value");
  }
  result.value = value;
  return result;
}

}  // namespace

CommonSubgraphWitness mcs_vi(const Graph& g1, const Graph& g2) {
  return solve(g1, g2, Kind::Edges);
}

CommonSubgraphWitness mcis_vi(const Graph& g1, const Graph& g2) {
  return solve(g1, g2, Kind::Vertices);
}

}  // namespace viforge
