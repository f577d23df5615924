#include "viforge/imbalance.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <tuple>

#include "viforge/errors.hpp"
#include "viforge/ilp.hpp"
#include "viforge/parallel.hpp"
#include "viforge/types.hpp"
#include "viforge/vertex_integrity.hpp"

namespace viforge {

std::int64_t imbalance_of(const Graph& g, const LinearOrdering& order) {
  const int n = g.order();
  if (static_cast<int>(order.size()) != n) throw InputError("ordering has wrong length");
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    if (order[i] < 0 || order[i] >= n || pos[order[i]] >= 0) {
      throw InputError("ordering is not a permutation");
    }
    pos[order[i]] = i;
  }
  std::int64_t total = 0;
  for (Vertex v = 0; v < n; ++v) {
    int balance = 0;
    for (Vertex w : g.neighbors(v)) balance += pos[w] < pos[v] ? 1 : -1;
    total += std::abs(balance);
  }
  return total;
}

namespace {

// One relative ordering of S and a component, in canonical positions.
struct Pattern {
  std::vector<int> sequence;  // positions; S positions appear in guessed order
  std::int64_t im = 0;        // imbalance of the component vertices
  std::vector<int> left;      // per S index: component neighbors before it
  std::vector<int> right;
};

struct TypeData {
  int count = 0;
  std::vector<Pattern> patterns;
};

// Adjacency between canonical positions of a type.
std::vector<char> position_adjacency(const Graph& g, const std::vector<Vertex>& order) {
  const int m = static_cast<int>(order.size());
  std::vector<char> adj(m * m, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) adj[i * m + j] = g.adjacent(order[i], order[j]);
  }
  return adj;
}

// All interleavings of the component positions with S positions in the order
// `s_rank`, deduplicated by (im, left, right).
std::vector<Pattern> patterns_for(const std::vector<char>& adj, int s, int m,
                                  const std::vector<int>& s_sequence) {
  std::vector<int> comp(m - s);
  std::iota(comp.begin(), comp.end(), s);
  std::map<std::tuple<std::int64_t, std::vector<int>, std::vector<int>>, Pattern> unique;
  do {
    // Choose which slots of the merged sequence hold S vertices.
    const int total = m;
    std::vector<char> is_s(total, 0);
    std::fill(is_s.begin(), is_s.begin() + s, 1);
    std::sort(is_s.begin(), is_s.end());
    do {
      Pattern p;
      int si = 0, ci = 0;
      for (int slot = 0; slot < total; ++slot) {
        p.sequence.push_back(is_s[slot] ? s_sequence[si++] : comp[ci++]);
      }
      std::vector<int> at(m);
      for (int i = 0; i < m; ++i) at[p.sequence[i]] = i;
      p.left.assign(s, 0);
      p.right.assign(s, 0);
      for (int x = s; x < m; ++x) {
        int bal = 0;
        for (int y = 0; y < m; ++y) {
          if (adj[x * m + y]) bal += at[y] < at[x] ? 1 : -1;
        }
        p.im += std::abs(bal);
        for (int v = 0; v < s; ++v) {
          if (!adj[x * m + v]) continue;
          (at[x] < at[v] ? p.left[v] : p.right[v])++;
        }
      }
      unique.try_emplace(std::make_tuple(p.im, p.left, p.right), p);
    } while (std::next_permutation(is_s.begin(), is_s.end()));
  } while (std::next_permutation(comp.begin(), comp.end()));
  std::vector<Pattern> out;
  for (auto& [key, p] : unique) out.push_back(std::move(p));
  return out;
}

struct GuessResult {
  std::int64_t value = 0;
  std::vector<std::int64_t> x;  // flattened per (type, pattern)
};

}  // namespace

ImbalanceResult imbalance_vi(const Graph& g) {
  const int n = g.order();
  if (n == 0) return {};
  const ViSet vs = vertex_integrity(g);
  const std::vector<Vertex>& sep = vs.separator;
  const int s = static_cast<int>(sep.size());
  const TypeTable table = classify(g, sep);
  std::vector<std::vector<char>> type_adj;
  for (const auto& cls : table.classes) type_adj.push_back(position_adjacency(g, cls.type.order));

  // Guess = permutation of S indices.
  std::vector<std::vector<int>> guesses;
  std::vector<int> perm(s);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    guesses.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  auto build = [&](const std::vector<int>& sequence, std::vector<TypeData>& data) {
    data.clear();
    for (std::size_t t = 0; t < table.classes.size(); ++t) {
      TypeData d;
      d.count = table.classes[t].count();
      d.patterns = patterns_for(type_adj[t], s, table.classes[t].type.size, sequence);
      data.push_back(std::move(d));
    }
    IlpInstance ilp;
    std::vector<Term> objective;
    std::vector<std::vector<Term>> balance(s);  // left - right contributions
    std::vector<std::int64_t> base(s, 0);
    std::vector<int> rank(s);
    for (int i = 0; i < s; ++i) rank[sequence[i]] = i;
    for (int a = 0; a < s; ++a) {
      for (int b = 0; b < s; ++b) {
        if (a != b && g.adjacent(sep[a], sep[b])) base[a] += rank[b] < rank[a] ? 1 : -1;
      }
    }
    for (std::size_t t = 0; t < data.size(); ++t) {
      std::vector<Term> sum;
      for (std::size_t p = 0; p < data[t].patterns.size(); ++p) {
        const Pattern& pat = data[t].patterns[p];
        const int var = ilp.add_variable(0, data[t].count,
                                         "x_" + std::to_string(t) + "_" + std::to_string(p));
        sum.push_back({var, 1});
        if (pat.im != 0) objective.push_back({var, pat.im});
        for (int v = 0; v < s; ++v) {
          const int diff = pat.left[v] - pat.right[v];
          if (diff != 0) balance[v].push_back({var, diff});
        }
      }
      ilp.add_constraint(sum, Relation::Equal, data[t].count);
    }
    for (int v = 0; v < s; ++v) {
      const int y = ilp.add_variable(0, n, "y_" + std::to_string(v));
      objective.push_back({y, 1});
      // y >= base + sum  and  y >= -(base + sum)
      std::vector<Term> up{{y, 1}}, down{{y, 1}};
      for (const Term& t : balance[v]) {
        up.push_back({t.var, -t.coef});
        down.push_back({t.var, t.coef});
      }
      ilp.add_constraint(up, Relation::GreaterEqual, base[v]);
      ilp.add_constraint(down, Relation::GreaterEqual, -base[v]);
    }
    ilp.set_objective(objective, Sense::Minimize);
    return ilp;
  };

  auto eval = [&](std::size_t i, std::optional<std::int64_t> cutoff) -> std::optional<GuessResult> {
    std::vector<TypeData> data;
    IlpInstance ilp = build(guesses[i], data);
    auto sol = optimize(ilp, cutoff);
    if (!sol) return std::nullopt;
    return GuessResult{sol->objective, sol->values};
  };
  auto best = best_over_guesses<GuessResult>(
      guesses.size(), eval, [](const GuessResult& r) { return r.value; }, false);
  if (!best) throw std::logic_error("imbalance ILP infeasible for every guess");

  // Reconstruction: S in guessed order, component blocks placed gap by gap.
  const std::vector<int>& sequence = guesses[best->first];
  std::vector<TypeData> data;
  build(sequence, data);
  std::vector<std::vector<Vertex>> gaps(s + 1);
  int var = 0;
  for (std::size_t t = 0; t < data.size(); ++t) {
    const TypeClass& cls = table.classes[t];
    int member = 0;
    for (const Pattern& pat : data[t].patterns) {
      for (std::int64_t rep = 0; rep < best->second.x[var]; ++rep, ++member) {
        const auto& order = cls.orders[member];
        int gap = 0;
        for (int pos : pat.sequence) {
          if (pos < s) {
            ++gap;
          } else {
            gaps[gap].push_back(order[pos]);
          }
        }
      }
      ++var;
    }
  }
  ImbalanceResult result;
  for (int i = 0; i <= s; ++i) {
    result.ordering.insert(result.ordering.end(), gaps[i].begin(), gaps[i].end());
    if (i < s) result.ordering.push_back(sep[sequence[i]]);
  }
  result.value = imbalance_of(g, result.ordering);
  if (result.value != best->second.value) {
    throw std::logic_error("imbalance reconstruction disagrees with the ILP value");
  }
  return result;
}

}  // namespace viforge
