// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "ilp_grid.hpp"
#include "test_util.hpp"
#include "viforge/capacitated.hpp"
#include "viforge/coloring.hpp"
#include "viforge/common_subgraph.hpp"
#include "viforge/errors.hpp"
#include "viforge/ilp.hpp"
#include "viforge/imbalance.hpp"
#include "viforge/oracles.hpp"
#include "viforge/poly_cases.hpp"
#include "viforge/reductions.hpp"
#include "viforge/vertex_integrity.hpp"

namespace viforge {
namespace {

using testing::Rng;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failures; keeps the first few messages for the report line.
struct Check {
  int failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (notes.size() < 3) notes.push_back(what);
  }
  std::string summary() const {
    std::string s;
    for (const auto& n : notes) s += " [" + n + "]";
    return s;
  }
};

struct Line {
  bool pass = false;
  std::string detail;
};

oracle::OracleBudget budget(int vertices, int edges) {
  oracle::OracleBudget b;
  b.max_vertices = vertices;
  b.max_edges = edges;
  return b;
}

Graph low_vi_graph(Rng& rng, int max_n, int max_vi) {
  while (true) {
    Graph g = testing::random_graph(rng, rng.uniform(1, max_n), rng.uniform(10, 60));
    if (vertex_integrity(g).k <= max_vi) return g;
  }
}

Graph low_vc_graph(Rng& rng, int max_n, int max_vc) {
  while (true) {
    Graph g = testing::random_graph(rng, rng.uniform(1, max_n), rng.uniform(20, 70));
    if (static_cast<int>(vertex_cover_min(g).size()) <= max_vc) return g;
  }
}

Graph with_capacities(Rng& rng, const Graph& g, bool at_most_degree) {
  std::vector<int> caps(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    const int hi = at_most_degree ? std::max(1, g.degree(v)) : g.degree(v) + 2;
    caps[v] = rng.uniform(1, hi);
  }
  return g.with_capacities(caps);
}

bool covers(const Graph& g, const VertexSubset& c) {
  std::vector<char> in(g.order(), 0);
  for (Vertex v : c) in[v] = 1;
  for (const Edge& e : g.edges()) {
    if (!in[e.u] && !in[e.v]) return false;
  }
  return true;
}

std::string tag(const char* name, int round) { return std::string(name) + " round " + std::to_string(round); }

// Criterion 1: each solver against its oracle on 200 seeded instances.
Line criterion_oracle_equivalence() {
  constexpr int kRounds = 200;
  const auto b = budget(8, 28);
  using Body = std::function<void(Rng&, Check&, int)>;
  const std::vector<std::pair<const char*, Body>> problems = {
      {"imbalance",
       [&](Rng& rng, Check& c, int round) {
         Graph g = low_vi_graph(rng, 8, 4);
         auto got = imbalance_vi(g);
         c.expect(got.value == oracle::imbalance(g, b).first, tag("value", round));
         c.expect(oracle::verify_imbalance(g, got.ordering, got.value).ok, tag("certificate", round));
       }},
      {"mcs",
       [&](Rng& rng, Check& c, int round) {
         Graph g1 = low_vi_graph(rng, 8, 4), g2 = low_vi_graph(rng, 8, 4);
         auto got = mcs_vi(g1, g2);
         c.expect(got.value == oracle::mcs(g1, g2, b).value, tag("value", round));
         c.expect(oracle::verify_mcs(g1, g2, got).ok, tag("certificate", round));
       }},
      {"mcis",
       [&](Rng& rng, Check& c, int round) {
         Graph g1 = low_vi_graph(rng, 8, 4), g2 = low_vi_graph(rng, 8, 4);
         auto got = mcis_vi(g1, g2);
         c.expect(got.value == oracle::mcis(g1, g2, b).value, tag("value", round));
         c.expect(oracle::verify_mcis(g1, g2, got).ok, tag("certificate", round));
       }},
      {"cvc",
       [&](Rng& rng, Check& c, int round) {
         Graph g = with_capacities(rng, low_vi_graph(rng, 8, 4), true);
         auto got = cvc_vi(g);
         auto expected = oracle::cvc(g, b);
         c.expect(got.has_value() == expected.has_value(), tag("decision", round));
         if (got && expected) {
           c.expect(got->cover.size() == expected->cover.size(), tag("value", round));
           c.expect(oracle::verify_cvc(g, *got).ok, tag("certificate", round));
         }
       }},
      {"cds",
       [&](Rng& rng, Check& c, int round) {
         Graph g = with_capacities(rng, low_vi_graph(rng, 8, 4), false);
         auto got = cds_vi(g);
         c.expect(got.dset.size() == oracle::cds(g, b).dset.size(), tag("value", round));
         c.expect(oracle::verify_cds(g, got).ok, tag("certificate", round));
       }},
      {"prece",
       [&](Rng& rng, Check& c, int round) {
         Graph g = low_vi_graph(rng, 8, 4);
         const int r = rng.uniform(1, 4);
         Coloring pre(g.order(), 0);
         for (int& x : pre) {
           if (rng.chance(30)) x = rng.uniform(1, r);
         }
         auto got = precoloring_extension_vi(g, pre, r);
         c.expect(got.has_value() == oracle::precoloring(g, pre, r, b).has_value(), tag("decision", round));
         if (got) c.expect(oracle::verify_precoloring(g, pre, r, *got).ok, tag("certificate", round));
       }},
      {"eqcol",
       [&](Rng& rng, Check& c, int round) {
         Graph g = low_vi_graph(rng, 8, 4);
         const int r = rng.uniform(1, g.order());
         auto got = equitable_coloring_vi(g, r);
         c.expect(got.has_value() == oracle::eqcoloring(g, r, b).has_value(), tag("decision", round));
         if (got) c.expect(oracle::verify_eqcoloring(g, r, *got).ok, tag("certificate", round));
       }},
      {"ecp",
       [&](Rng& rng, Check& c, int round) {
         Graph g = low_vi_graph(rng, 8, 4);
         const int r = rng.uniform(1, g.order());
         auto got = equitable_connected_partition_vi(g, r);
         c.expect(got.has_value() == oracle::ecp(g, r, b).has_value(), tag("decision", round));
         if (got) c.expect(oracle::verify_ecp(g, r, *got).ok, tag("certificate", round));
       }},
  };
  bool pass = true;
  std::ostringstream detail;
  std::uint64_t seed = 1000;
  for (const auto& [name, body] : problems) {
    Rng rng(seed++);
    Check c;
    const auto start = Clock::now();
    for (int round = 0; round < kRounds; ++round) {
      try {
        body(rng, c, round);
      } catch (const std::exception& e) {
        c.expect(false, tag(e.what(), round));
      }
    }
    const double secs = seconds_since(start);
    const bool ok = c.failures == 0 && secs < 60.0;
    pass = pass && ok;
    detail << ' ' << name << '=' << (ok ? "ok" : "FAIL") << '(' << std::fixed;
    detail.precision(2);
    detail << secs << "s";
    if (c.failures) detail << ", " << c.failures << " mismatches" << c.summary();
    detail << ')';
  }
  return {pass, std::to_string(kRounds) + " instances each;" + detail.str()};
}

// Criterion 2: motif fast path against the subset oracle, and the vi = 4
// boundary built from 3DM.
Line criterion_motif_dichotomy() {
  Check c;
  Rng rng(2001);
  const auto b = budget(8, 28);
  for (int round = 0; round < 200; ++round) {
    const int n = rng.uniform(1, 8);
    Graph g = low_vi_graph(rng, n, 3);
    std::vector<int> colors(g.order());
    for (int& x : colors) x = rng.uniform(1, 3);
    std::vector<int> motif(rng.uniform(1, g.order()));
    for (int& x : motif) x = rng.uniform(1, 3);
    std::sort(motif.begin(), motif.end());
    MotifInstance inst{g.with_colors(colors), motif};
    try {
      auto got = graph_motif_vi3(inst);
      c.expect(got.has_value() == oracle::motif(inst, b).has_value(), tag("decision", round));
      if (got) c.expect(oracle::verify_motif(inst, *got).ok, tag("certificate", round));
    } catch (const std::exception& e) {
      c.expect(false, tag(e.what(), round));
    }
  }
  // Every triple set over the n = 2 universe with at most 3 triples.
  std::vector<std::array<int, 3>> all;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) all.push_back({x, y, z});
  int boundary = 0, refused = 0, yes = 0;
  for (int mask = 0; mask < (1 << 8); ++mask) {
    if (__builtin_popcount(mask) > 3) continue;
    ThreeDmInstance tdm{2, {}};
    for (int i = 0; i < 8; ++i) {
      if ((mask >> i) & 1) tdm.triples.push_back(all[i]);
    }
    auto red = reduce_3dm_to_colorful_motif(tdm);
    if (vertex_integrity(red.instance.graph).k != 4) continue;
    ++boundary;
    try {
      graph_motif_vi3(red.instance);
      c.expect(false, "mask " + std::to_string(mask) + " not refused");
    } catch (const PreconditionError&) {
      ++refused;
    }
    const bool source = oracle::three_dm(tdm).has_value();
    const bool target = oracle::motif(red.instance, budget(10, 28)).has_value();
    c.expect(source == target, "mask " + std::to_string(mask) + " oracle disagreement");
    yes += source;
  }
  c.expect(boundary > 0, "no vi = 4 instances built");
  return {c.failures == 0, "200 vi<=3 instances; " + std::to_string(refused) + "/" +
                               std::to_string(boundary) + " vi=4 3DM instances refused, " +
                               std::to_string(yes) + " yes" + c.summary()};
}

// Criterion 3: binary MMOO at vc <= 2 and the cover sizes of both reductions.
Line criterion_mmoo_boundary() {
  Check c;
  Rng rng(3001);
  for (int round = 0; round < 200; ++round) {
    Graph g = low_vc_graph(rng, 8, 2);
    std::vector<std::int64_t> w(g.size());
    for (auto& x : w) x = rng.uniform(1, 9);
    if (g.size() > 0) g = g.with_weights(w);
    MmooInstance inst{g, rng.uniform(0, 14)};
    try {
      auto got = binary_mmoo_vc2(inst);
      c.expect(got.has_value() == oracle::mmoo(inst, budget(8, 28)).has_value(), tag("decision", round));
      if (got) c.expect(oracle::verify_mmoo(inst, *got).ok, tag("certificate", round));
    } catch (const std::exception& e) {
      c.expect(false, tag(e.what(), round));
    }
  }
  int partitions = 0, packings = 0;
  for (int round = 0; round < 50; ++round) {
    std::vector<std::int64_t> items(rng.chance(50) ? 10 : 12);
    for (auto& a : items) a = rng.uniform(1, 9);
    if (std::accumulate(items.begin(), items.end(), std::int64_t{0}) % 2 != 0) items[0] += 1;
    auto red = reduce_partition_to_binary_mmoo(items);
    c.expect(red.cover.size() == 3 && covers(red.instance.graph, red.cover), tag("partition cover", round));
    ++partitions;
  }
  for (int round = 0; packings < 50; ++round) {
    BinPackingInstance bp;
    bp.t = rng.uniform(3, 5);
    const int n = rng.uniform(bp.t, 8);
    for (int i = 0; i < n; ++i) bp.items.push_back(rng.uniform(1, 4));
    const auto total = std::accumulate(bp.items.begin(), bp.items.end(), std::int64_t{0});
    if (total % bp.t != 0 || *std::max_element(bp.items.begin(), bp.items.end()) >= total / bp.t) continue;
    auto red = reduce_bp_to_unary_mmoo(bp);
    c.expect(static_cast<int>(red.cover.size()) == bp.t + 1 && covers(red.instance.graph, red.cover),
             tag("bin packing cover", round));
    ++packings;
  }
  c.expect(packings > 0, "no bin packing sources");
  return {c.failures == 0, "200 vc<=2 instances; " + std::to_string(partitions) + " partition covers of size 3, " +
                               std::to_string(packings) + " bin packing covers of size t+1" + c.summary()};
}

// Criterion 4: source oracle answer equals target oracle answer.
Line criterion_reduction_equivalence() {
  Check c;
  Rng rng(4001);
  const auto wide = budget(64, 62);
  int bp_yes = 0, bp_total = 0;
  while (bp_total < 40) {
    BinPackingInstance bp;
    bp.t = 3;
    const int n = rng.uniform(3, 6);
    for (int i = 0; i < n; ++i) bp.items.push_back(rng.uniform(1, 3));
    const auto total = std::accumulate(bp.items.begin(), bp.items.end(), std::int64_t{0});
    if (total % 3 != 0 || *std::max_element(bp.items.begin(), bp.items.end()) >= total / 3) continue;
    ++bp_total;
    const bool source = oracle::bin_packing(bp).has_value();
    c.expect(source == oracle::mmoo(reduce_bp_to_unary_mmoo(bp).instance, wide).has_value(),
             tag("bin packing", bp_total));
    bp_yes += source;
  }
  int part_yes = 0, part_total = 0;
  while (part_total < 30) {
    std::vector<std::int64_t> items(rng.chance(50) ? 10 : 12);
    const int hi = rng.chance(50) ? 9 : 60;
    for (auto& a : items) a = rng.uniform(1, hi);
    if (std::accumulate(items.begin(), items.end(), std::int64_t{0}) % 2 != 0) continue;
    ++part_total;
    const bool source = oracle::partition(items, wide).has_value();
    c.expect(source == oracle::mmoo(reduce_partition_to_binary_mmoo(items).instance, wide).has_value(),
             tag("partition", part_total));
    part_yes += source;
  }
  std::vector<std::array<int, 3>> all;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) all.push_back({x, y, z});
  int tdm_yes = 0, tdm_total = 0;
  for (int mask = 0; mask < (1 << 8); ++mask) {
    if (__builtin_popcount(mask) > 3) continue;
    ThreeDmInstance tdm{2, {}};
    for (int i = 0; i < 8; ++i) {
      if ((mask >> i) & 1) tdm.triples.push_back(all[i]);
    }
    ++tdm_total;
    const bool source = oracle::three_dm(tdm).has_value();
    c.expect(source == oracle::motif(reduce_3dm_to_colorful_motif(tdm).instance, budget(10, 28)).has_value(),
             tag("3dm mask", mask));
    tdm_yes += source;
  }
  std::ostringstream d;
  d << "bp->mmoo " << bp_yes << "/" << bp_total << " yes, partition->mmoo " << part_yes << "/" << part_total
    << " yes, 3dm->motif " << tdm_yes << "/" << tdm_total << " yes" << c.summary();
  return {c.failures == 0, d.str()};
}

// Criterion 5: size, degree and leaf identities of the bandwidth tree, read
// off the tree itself.
Line criterion_bandwidth_identities() {
  Check c;
  int built = 0;
  for (int t : {2, 3}) {
    for (int n = 1; n <= 3; ++n) {
      std::vector<std::int64_t> items(n, 1);
      while (true) {
        const auto total = std::accumulate(items.begin(), items.end(), std::int64_t{0});
        if (total % t == 0) {
          ++built;
          const std::int64_t cap = total / t;
          const auto red = reduce_bp_to_bandwidth({items, t});
          const Graph& g = red.tree;
          const std::int64_t w = 6 * t * n * cap + 2 * n + 1;
          const std::string where = "t=" + std::to_string(t) + " n=" + std::to_string(n);
          c.expect(red.width == w, where + " width");
          c.expect(g.order() == (3 * t + 2) * w + 1, where + " order");
          c.expect(g.size() == g.order() - 1 && components(g).size() == 1, where + " not a tree");
          c.expect(g.degree(red.spine.front()) == 2 * w, where + " deg z0");
          c.expect(static_cast<int>(red.spine.size()) == 3 * t + 1, where + " spine length");
          for (std::size_t i = 0; i + 1 < red.spine.size(); ++i) {
            c.expect(g.adjacent(red.spine[i], red.spine[i + 1]), where + " spine broken");
          }
          auto leaves_at = [&](Vertex v) {
            std::int64_t k = 0;
            for (Vertex u : g.neighbors(v)) k += g.degree(u) == 1;
            return k;
          };
          std::int64_t leaf_total = 0;
          for (int i = 0; i <= t; ++i) {
            const Vertex z = red.spine[3 * i];
            const std::int64_t want = 12 * t * n * cap + (i == 0 || i == t ? 4 * n + 1 : 0);
            c.expect(leaves_at(z) == want, where + " leaves at z" + std::to_string(i));
            leaf_total += want;
          }
          for (Vertex s : {red.spine[1], red.spine[2]}) c.expect(leaves_at(s) == 0, where + " leaf on x1/y1");
          // Star centers sit 6t-3 edges from x_1.
          std::vector<int> dist(g.order(), -1);
          std::vector<Vertex> queue{red.spine[1]};
          dist[red.spine[1]] = 0;
          for (std::size_t h = 0; h < queue.size(); ++h) {
            for (Vertex u : g.neighbors(queue[h])) {
              if (dist[u] < 0) {
                dist[u] = dist[queue[h]] + 1;
                queue.push_back(u);
              }
            }
          }
          c.expect(static_cast<int>(red.star_centers.size()) == n, where + " star count");
          for (int i = 0; i < n && i < static_cast<int>(red.star_centers.size()); ++i) {
            const Vertex v = red.star_centers[i];
            c.expect(leaves_at(v) == 6 * t * n * items[i] - 1, where + " star leaves");
            c.expect(dist[v] == 6 * t - 3, where + " connector length");
            leaf_total += 6 * t * n * items[i] - 1;
          }
          std::int64_t degree_one = 0;
          for (Vertex v = 0; v < g.order(); ++v) degree_one += g.degree(v) == 1;
          c.expect(degree_one == leaf_total, where + " total leaves");
        }
        int i = 0;
        while (i < n && ++items[i] == 3) items[i++] = 1;
        if (i == n) break;
      }
    }
  }
  return {c.failures == 0, std::to_string(built) + " trees checked" + c.summary()};
}

// Criterion 6: td <= vi <= vc + 1 and vi_k_set succeeds exactly from vi on.
Line criterion_parameter_chain() {
  Check c;
  Rng rng(6001);
  const auto b = budget(8, 28);
  for (int round = 0; round < 500; ++round) {
    Graph g = testing::random_graph(rng, rng.uniform(0, 8), rng.uniform(0, 100));
    const int td = oracle::treedepth(g, b), vi = oracle::vertex_integrity(g, b),
              vc = oracle::vertex_cover_number(g, b);
    c.expect(td <= vi && vi <= vc + 1, tag("chain", round));
    for (int k = 1; k <= g.order() + 1; ++k) {
      auto set = vi_k_set(g, k);
      c.expect(set.has_value() == (k >= vi), tag("vi_k_set", round));
      if (set) c.expect(oracle::verify_vi_set(g, set->separator, k).ok, tag("witness", round));
    }
  }
  return {c.failures == 0, "500 graphs" + c.summary()};
}

SteinerInstance random_steiner(Rng& rng, const Graph& g) {
  SteinerInstance si{g, {}};
  std::vector<Vertex> pool(g.order());
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = g.order() - 1; i > 0; --i) std::swap(pool[i], pool[rng.uniform(0, i)]);
  std::size_t at = 0;
  const int sets = rng.uniform(1, 3);
  for (int i = 0; i < sets && at + 2 <= pool.size(); ++i) {
    const int size = rng.uniform(2, std::min<int>(4, pool.size() - at));
    VertexSubset t(pool.begin() + at, pool.begin() + at + size);
    std::sort(t.begin(), t.end());
    si.terminals.push_back(t);
    at += size;
  }
  return si;
}

// Criterion 7: kernel keeps the optimum and respects the size bounds.
Line criterion_kernel() {
  Check c;
  Rng rng(7001);
  int fired = 0, feasible = 0;
  for (int round = 0; round < 200; ++round) {
    Graph g;
    if (round % 2 == 0) {
      g = testing::random_graph_max_edges(rng, rng.uniform(2, 8), 50, 10);
    } else {
      // Small cover with many same-neighborhood vertices.
      const int s = rng.uniform(1, 2), n = rng.uniform(s + 2, 8);
      std::vector<Edge> edges;
      if (s == 2 && rng.chance(50)) edges.emplace_back(0, 1);
      for (Vertex v = s; v < n; ++v) {
        for (Vertex u = 0; u < s; ++u) {
          if (rng.chance(70) && edges.size() < 10) edges.emplace_back(u, v);
        }
      }
      g = Graph(n, edges);
    }
    SteinerInstance si = random_steiner(rng, g);
    try {
      const auto expected = oracle::usf(si);
      const UsfKernel k = usf_kernelize(si);
      fired += !k.trace.empty();
      const auto kernel_opt = oracle::usf(k.instance);
      c.expect(expected.has_value() == kernel_opt.has_value(), tag("feasibility", round));
      if (!expected || !kernel_opt) continue;
      ++feasible;
      c.expect(expected->weight == kernel_opt->weight + k.budget_delta, tag("optimum", round));
      const int s = static_cast<int>(k.cover.size());
      std::vector<char> terminal(k.instance.graph.order(), 0);
      for (const auto& t : k.instance.terminals) {
        c.expect(static_cast<int>(t.size()) <= s * (1 << s), tag("terminal set size", round));
        for (Vertex v : t) terminal[v] = 1;
      }
      int non_terminals = 0;
      for (Vertex v = 0; v < k.instance.graph.order(); ++v) non_terminals += !terminal[v];
      c.expect(non_terminals <= (1 << s) + s, tag("non-terminal count", round));
    } catch (const std::exception& e) {
      c.expect(false, tag(e.what(), round));
    }
  }
  return {c.failures == 0, "200 instances, " + std::to_string(feasible) + " feasible, rules fired on " +
                               std::to_string(fired) + c.summary()};
}

// Criterion 8: exact ILP against full grid enumeration.
Line criterion_ilp() {
  Check c;
  Rng rng(8001);
  const auto start = Clock::now();
  for (int round = 0; round < 1000; ++round) {
    const IlpInstance ilp = testing::random_ilp(rng);
    const auto grid = testing::grid_enumerate(ilp);
    const auto first = feasible(ilp);
    c.expect(first == grid.first_feasible, tag("feasible", round));
    const auto best = optimize(ilp);
    c.expect(best.has_value() == grid.optimum.has_value(), tag("optimize decision", round));
    if (best && grid.optimum) {
      c.expect(best->objective == *grid.optimum, tag("optimum", round));
      c.expect(satisfies(ilp, best->values) && objective_value(ilp, best->values) == best->objective,
               tag("optimal point", round));
    }
  }
  const double secs = seconds_since(start);
  c.expect(secs < 10.0, "took " + std::to_string(secs) + "s");
  std::ostringstream d;
  d.precision(2);
  d << "1000 instances in " << std::fixed << secs << "s" << c.summary();
  return {c.failures == 0, d.str()};
}

}  // namespace
}  // namespace viforge

int main() {
  using namespace viforge;
  const std::vector<std::pair<const char*, Line (*)()>> criteria = {
      {"oracle equivalence", criterion_oracle_equivalence},
      {"motif dichotomy", criterion_motif_dichotomy},
      {"mmoo boundary", criterion_mmoo_boundary},
      {"reduction equivalence", criterion_reduction_equivalence},
      {"bandwidth identities", criterion_bandwidth_identities},
      {"parameter chain", criterion_parameter_chain},
      {"kernel soundness", criterion_kernel},
      {"ilp engine", criterion_ilp},
  };
  bool all = true;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Line line;
    try {
      line = run();
    } catch (const std::exception& e) {
      line = {false, std::string("exception: ") + e.what()};
    }
    all = all && line.pass;
    std::cout << "criterion " << index++ << " (" << name << "): " << (line.pass ? "PASS" : "FAIL") << ": "
              << line.detail << std::endl;
  }
  return all ? 0 : 1;
}
