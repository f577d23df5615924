#include "viforge/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "viforge/errors.hpp"

namespace viforge {

namespace {

std::int64_t to_int(const std::string& tok, int line) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
  return v;
}

// Seeded generator; modulo reduction keeps sequences identical across
// standard libraries.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int percent) { return uniform(0, 99) < percent; }

 private:
  std::mt19937_64 engine_;
};

void decorate(InstanceFile& inst, const std::vector<Edge>& edges, int n, const GenerateOptions& opt,
              Draw& draw) {
  Graph g(n, edges);
  if (opt.max_weight > 0) {
    std::vector<std::int64_t> w(g.size());
    for (auto& x : w) x = draw.uniform(1, opt.max_weight);
    g = g.with_weights(w);
  }
  if (opt.colors > 0) {
    std::vector<int> c(n);
    for (int& x : c) x = draw.uniform(1, opt.colors);
    g = g.with_colors(c);
  }
  if (opt.capacities) {
    std::vector<int> c(n);
    for (Vertex v = 0; v < n; ++v) c[v] = draw.uniform(1, std::max(1, g.degree(v)));
    g = g.with_capacities(c);
  }
  inst.graph = g;
  if (opt.terminal_sets > 0) {
    std::vector<Vertex> pool(n);
    for (Vertex v = 0; v < n; ++v) pool[v] = v;
    for (int i = n - 1; i > 0; --i) std::swap(pool[i], pool[draw.uniform(0, i)]);
    std::size_t at = 0;
    for (int i = 0; i < opt.terminal_sets && at + 2 <= pool.size(); ++i) {
      VertexSubset t(pool.begin() + at, pool.begin() + at + 2);
      std::sort(t.begin(), t.end());
      inst.terminals.push_back(t);
      at += 2;
    }
  }
}

}  // namespace

InstanceFile parse_instance(std::istream& in) {
  InstanceFile out;
  std::string text;
  int line_no = 0;
  std::optional<int> n;
  int m_declared = 0;
  std::vector<Edge> edges;
  std::vector<std::pair<int, std::int64_t>> weights;  // (line, weight)
  int weighted = 0;
  std::map<int, int> caps, colors, pre;
  std::map<int, VertexSubset> sets;
  std::map<int, int> motif;
  auto vertex = [&](const std::string& tok, int line) {
    if (!n) throw ParseError(line, "vertex line before the 'p' header");
    const auto v = to_int(tok, line);
    if (v < 0 || v >= *n) throw ParseError(line, "vertex " + tok + " out of range");
    return static_cast<int>(v);
  };
  while (std::getline(in, text)) {
    ++line_no;
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream ss(text);
    std::vector<std::string> tok;
    for (std::string s; ss >> s;) tok.push_back(s);
    if (tok.empty()) continue;
    const std::string& tag = tok[0];
    auto want = [&](std::size_t lo, std::size_t hi) {
      if (tok.size() < lo || tok.size() > hi) throw ParseError(line_no, "wrong field count for '" + tag + "'");
    };
    if (tag == "p") {
      want(3, 3);
      if (n) throw ParseError(line_no, "duplicate 'p' header");
      const auto nv = to_int(tok[1], line_no), mv = to_int(tok[2], line_no);
      if (nv < 0 || mv < 0) throw ParseError(line_no, "negative size in header");
      n = static_cast<int>(nv);
      m_declared = static_cast<int>(mv);
    } else if (tag == "e") {
      want(3, 4);
      const int u = vertex(tok[1], line_no), v = vertex(tok[2], line_no);
      if (u == v) throw ParseError(line_no, "self-loop at vertex " + tok[1]);
      const Edge e(u, v);
      if (std::find(edges.begin(), edges.end(), e) != edges.end()) {
        throw ParseError(line_no, "duplicate edge " + tok[1] + " " + tok[2]);
      }
      edges.push_back(e);
      if (tok.size() == 4) {
        const auto w = to_int(tok[3], line_no);
        if (w <= 0) throw ParseError(line_no, "edge weight must be positive");
        weights.emplace_back(line_no, w);
        ++weighted;
      } else {
        weights.emplace_back(line_no, 1);
      }
      if (weighted != 0 && weighted != static_cast<int>(edges.size())) {
        throw ParseError(line_no, "either every edge has a weight or none does");
      }
    } else if (tag == "c" || tag == "col" || tag == "pc") {
      want(3, 3);
      const int v = vertex(tok[1], line_no);
      const auto val = to_int(tok[2], line_no);
      auto& target = tag == "c" ? caps : tag == "col" ? colors : pre;
      if (target.count(v)) throw ParseError(line_no, "vertex " + tok[1] + " listed twice");
      if (tag == "c" && val <= 0) throw ParseError(line_no, "capacity must be positive");
      if (tag == "pc" && val <= 0) throw ParseError(line_no, "precolor must be positive");
      target[v] = static_cast<int>(val);
    } else if (tag == "t") {
      want(3, 3);
      const auto id = to_int(tok[1], line_no);
      const int v = vertex(tok[2], line_no);
      for (const auto& [other, members] : sets) {
        if (std::find(members.begin(), members.end(), v) != members.end()) {
          throw ParseError(line_no, "vertex " + tok[2] + " already a terminal");
        }
      }
      sets[static_cast<int>(id)].push_back(v);
    } else if (tag == "m") {
      want(3, 3);
      const auto color = to_int(tok[1], line_no), count = to_int(tok[2], line_no);
      if (count <= 0) throw ParseError(line_no, "motif count must be positive");
      if (motif.count(static_cast<int>(color))) throw ParseError(line_no, "motif color listed twice");
      motif[static_cast<int>(color)] = static_cast<int>(count);
    } else if (tag == "r") {
      want(2, 2);
      if (out.r) throw ParseError(line_no, "duplicate 'r'");
      out.r = to_int(tok[1], line_no);
    } else if (tag == "a") {
      want(2, 2);
      const auto a = to_int(tok[1], line_no);
      if (a <= 0) throw ParseError(line_no, "items must be positive");
      out.items.push_back(a);
    } else if (tag == "b") {
      want(2, 2);
      if (out.bins) throw ParseError(line_no, "duplicate 'b'");
      const auto t = to_int(tok[1], line_no);
      if (t <= 0) throw ParseError(line_no, "bin count must be positive");
      out.bins = static_cast<int>(t);
    } else if (tag == "x") {
      want(2, 2);
      if (out.tdm_n) throw ParseError(line_no, "duplicate 'x'");
      const auto v = to_int(tok[1], line_no);
      if (v < 0) throw ParseError(line_no, "3DM size must be nonnegative");
      out.tdm_n = static_cast<int>(v);
    } else if (tag == "tr") {
      want(4, 4);
      if (!out.tdm_n) throw ParseError(line_no, "triple before the 'x' line");
      std::array<int, 3> t{};
      for (int i = 0; i < 3; ++i) {
        const auto v = to_int(tok[1 + i], line_no);
        if (v < 0 || v >= *out.tdm_n) throw ParseError(line_no, "triple coordinate out of range");
        t[i] = static_cast<int>(v);
      }
      out.triples.push_back(t);
    } else {
      throw ParseError(line_no, "unknown line tag '" + tag + "'");
    }
  }
  const int nv = n.value_or(0);
  if (static_cast<int>(edges.size()) != m_declared) {
    throw ParseError(line_no, "header declares " + std::to_string(m_declared) + " edges, found " +
                                  std::to_string(edges.size()));
  }
  Graph g(nv, edges);
  if (weighted > 0) {
    std::vector<std::int64_t> w(g.size());
    for (std::size_t i = 0; i < edges.size(); ++i) w[*g.edge_index(edges[i].u, edges[i].v)] = weights[i].second;
    g = g.with_weights(std::move(w));
  }
  auto total = [&](const std::map<int, int>& values, const char* what) {
    if (!values.empty() && static_cast<int>(values.size()) != nv) {
      throw ParseError(line_no, std::string(what) + " must be given for every vertex or none");
    }
    std::vector<int> out_values;
    for (const auto& [v, x] : values) out_values.push_back(x);
    return out_values;
  };
  if (auto c = total(caps, "capacities"); !c.empty()) g = g.with_capacities(c);
  if (auto c = total(colors, "colors"); !c.empty()) g = g.with_colors(c);
  out.graph = std::move(g);
  if (!pre.empty()) {
    out.precolor.assign(nv, 0);
    for (const auto& [v, c] : pre) out.precolor[v] = c;
  }
  for (auto& [id, members] : sets) {
    std::sort(members.begin(), members.end());
    out.terminals.push_back(members);
  }
  for (const auto& [color, count] : motif) out.motif.insert(out.motif.end(), count, color);
  return out;
}

InstanceFile parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

InstanceFile parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  return parse_instance(in);
}

std::string serialize_instance(const InstanceFile& inst) {
  std::ostringstream out;
  const Graph& g = inst.graph;
  if (g.order() > 0 || g.size() > 0) out << "p " << g.order() << ' ' << g.size() << '\n';
  for (int e = 0; e < g.size(); ++e) {
    out << "e " << g.edges()[e].u << ' ' << g.edges()[e].v;
    if (g.has_weights()) out << ' ' << g.weight(e);
    out << '\n';
  }
  for (Vertex v = 0; g.has_capacities() && v < g.order(); ++v) out << "c " << v << ' ' << g.capacity(v) << '\n';
  for (Vertex v = 0; g.has_colors() && v < g.order(); ++v) out << "col " << v << ' ' << g.color(v) << '\n';
  for (Vertex v = 0; v < static_cast<int>(inst.precolor.size()); ++v) {
    if (inst.precolor[v]) out << "pc " << v << ' ' << inst.precolor[v] << '\n';
  }
  for (std::size_t i = 0; i < inst.terminals.size(); ++i) {
    for (Vertex v : inst.terminals[i]) out << "t " << i << ' ' << v << '\n';
  }
  for (std::size_t i = 0; i < inst.motif.size();) {
    std::size_t j = i;
    while (j < inst.motif.size() && inst.motif[j] == inst.motif[i]) ++j;
    out << "m " << inst.motif[i] << ' ' << (j - i) << '\n';
    i = j;
  }
  if (inst.r) out << "r " << *inst.r << '\n';
  for (auto a : inst.items) out << "a " << a << '\n';
  if (inst.bins) out << "b " << *inst.bins << '\n';
  if (inst.tdm_n) out << "x " << *inst.tdm_n << '\n';
  for (const auto& t : inst.triples) out << "tr " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return out.str();
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t instance_hash(const InstanceFile& inst) { return fnv1a(serialize_instance(inst)); }

std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = digits[h & 15];
  return s;
}

MotifInstance as_motif(const InstanceFile& inst) {
  MotifInstance m{inst.graph, inst.motif};
  validate_motif(m);
  return m;
}

MmooInstance as_mmoo(const InstanceFile& inst) {
  if (!inst.r) throw InputError("MMOO instance needs an 'r' line or --r");
  return {inst.graph, *inst.r};
}

SteinerInstance as_steiner(const InstanceFile& inst) {
  SteinerInstance s{inst.graph, inst.terminals};
  validate_steiner(s);
  return s;
}

BinPackingInstance as_bin_packing(const InstanceFile& inst) {
  if (!inst.bins) throw InputError("bin packing instance needs a 'b' line");
  return {inst.items, *inst.bins};
}

ThreeDmInstance as_three_dm(const InstanceFile& inst) {
  if (!inst.tdm_n) throw InputError("3DM instance needs an 'x' line");
  return {*inst.tdm_n, inst.triples};
}

InstanceFile from_motif(const MotifInstance& m) {
  InstanceFile f;
  f.graph = m.graph;
  f.motif = m.motif;
  return f;
}

InstanceFile from_mmoo(const MmooInstance& m) {
  InstanceFile f;
  f.graph = m.graph;
  f.r = m.r;
  return f;
}

InstanceFile from_steiner(const SteinerInstance& s) {
  InstanceFile f;
  f.graph = s.graph;
  f.terminals = s.terminals;
  return f;
}

InstanceFile generate_random_vi(const GenerateOptions& opt) {
  if (opt.k < 1 || opt.n < 0) throw InputError("random-vi needs k >= 1 and n >= 0");
  Draw draw(opt.seed);
  const int n = opt.n;
  // With n > 0 at least one vertex must stay outside S, so |S| < k.
  const int s = n == 0 ? 0 : draw.uniform(0, std::min(opt.k - 1, n - 1));
  std::vector<int> comp(n, -1);
  int next_comp = 0;
  for (Vertex v = s; v < n;) {
    const int size = std::min(draw.uniform(1, opt.k - s), n - v);
    for (int i = 0; i < size; ++i) comp[v + i] = next_comp;
    v += size;
    ++next_comp;
  }
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const bool allowed = u < s || comp[u] == comp[v];
      if (allowed && draw.chance(opt.density)) edges.emplace_back(u, v);
    }
  }
  InstanceFile inst;
  decorate(inst, edges, n, opt, draw);
  return inst;
}

InstanceFile generate_random_vc(const GenerateOptions& opt) {
  if (opt.k < 0 || opt.n < 0) throw InputError("random-vc needs k >= 0 and n >= 0");
  Draw draw(opt.seed);
  const int n = opt.n, s = std::min(opt.k, n);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < s; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (draw.chance(opt.density)) edges.emplace_back(u, v);
    }
  }
  InstanceFile inst;
  decorate(inst, edges, n, opt, draw);
  return inst;
}

InstanceFile generate_reduction_source(const SourceOptions& opt) {
  Draw draw(opt.seed);
  InstanceFile inst;
  if (opt.kind == "bp" || opt.kind == "partition") {
    const int divisor = opt.kind == "bp" ? opt.t : 2;
    if (divisor < 1 || opt.n < 1 || opt.max_item < 1) throw InputError("bad source parameters");
    if (opt.n < divisor && opt.kind == "bp") throw InputError("need at least t items");
    std::int64_t total = 0;
    for (int i = 0; i < opt.n; ++i) {
      inst.items.push_back(draw.uniform(1, opt.max_item));
      total += inst.items.back();
    }
    // Bump items round robin until the total divides evenly.
    for (int i = 0; total % divisor != 0; i = (i + 1) % opt.n) {
      ++inst.items[i];
      ++total;
    }
    if (opt.kind == "bp") inst.bins = opt.t;
    return inst;
  }
  if (opt.kind == "3dm") {
    if (opt.n < 0 || opt.triples < 0) throw InputError("bad source parameters");
    inst.tdm_n = opt.n;
    for (int i = 0; i < opt.triples && opt.n > 0; ++i) {
      inst.triples.push_back({draw.uniform(0, opt.n - 1), draw.uniform(0, opt.n - 1),
                              draw.uniform(0, opt.n - 1)});
    }
    return inst;
  }
  throw InputError("unknown source kind '" + opt.kind + "' (bp, partition, 3dm)");
}

}  // namespace viforge
