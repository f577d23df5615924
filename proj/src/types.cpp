#include "viforge/types.hpp"

#include <algorithm>
#include <set>

#include "viforge/errors.hpp"

namespace viforge {

std::string to_hex(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 15]);
  }
  return out;
}

std::string ComponentType::hex() const { return to_hex(code); }

namespace {

void append_u16(std::string& s, int x) {
  s.push_back(static_cast<char>((x >> 8) & 0xff));
  s.push_back(static_cast<char>(x & 0xff));
}

void append_i32(std::string& s, int x) {
  const auto u = static_cast<std::uint32_t>(x) ^ 0x80000000u;
  for (int shift = 24; shift >= 0; shift -= 8) s.push_back(static_cast<char>((u >> shift) & 0xff));
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const LocalGraph& lg) : lg_(lg), n_(lg.n) {
    order_.resize(n_);
    for (int i = 0; i < lg.fixed; ++i) order_[i] = i;
    used_.assign(n_, 0);
    // twin_[u][v]: swapping u and v is an automorphism fixing everything else.
    twin_.assign(n_ * n_, 0);
    for (int u = lg.fixed; u < n_; ++u) {
      for (int v = lg.fixed; v < n_; ++v) {
        if (u == v) continue;
        bool same = lg.attrs.empty() || lg.attrs[u] == lg.attrs[v];
        for (int x = 0; x < n_ && same; ++x) {
          if (x != u && x != v && adj(u, x) != adj(v, x)) same = false;
        }
        twin_[u * n_ + v] = same;
      }
    }
  }

  CanonicalForm run() {
    dfs(lg_.fixed);
    CanonicalForm out;
    out.order = best_order_;
    // Pack bits MSB first.
    std::string& key = out.key;
    unsigned char acc = 0;
    int bits = 0;
    for (char b : best_matrix_) {
      acc = static_cast<unsigned char>((acc << 1) | (b ? 1 : 0));
      if (++bits == 8) {
        key.push_back(static_cast<char>(acc));
        acc = 0;
        bits = 0;
      }
    }
    if (bits > 0) key.push_back(static_cast<char>(acc << (8 - bits)));
    for (int a : best_attrs_) append_i32(key, a);
    return out;
  }

 private:
  char adj(int u, int v) const { return lg_.adj[u * n_ + v]; }

  void dfs(int pos) {
    if (have_best_ && pos > 0) {
      // Row 0, columns 0..pos-1, is the only fully determined prefix.
      for (int j = 0; j < pos; ++j) {
        const char cur = adj(order_[0], order_[j]);
        const char best = best_matrix_[j];
        if (cur < best) break;
        if (cur > best) return;
      }
    }
    if (pos == n_) {
      leaf();
      return;
    }
    std::vector<int> tried;
    for (int v = lg_.fixed; v < n_; ++v) {
      if (used_[v]) continue;
      bool duplicate = false;
      for (int u : tried) {
        if (twin_[u * n_ + v]) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;
      tried.push_back(v);
      used_[v] = 1;
      order_[pos] = v;
      dfs(pos + 1);
      used_[v] = 0;
    }
  }

  void leaf() {
    matrix_.resize(n_ * n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) matrix_[i * n_ + j] = adj(order_[i], order_[j]);
    }
    attrs_.clear();
    if (!lg_.attrs.empty()) {
      for (int i = 0; i < n_; ++i) attrs_.push_back(lg_.attrs[order_[i]]);
    }
    if (have_best_) {
      if (matrix_ > best_matrix_) return;
      if (matrix_ == best_matrix_ && attrs_ >= best_attrs_) return;
    }
    have_best_ = true;
    best_matrix_ = matrix_;
    best_attrs_ = attrs_;
    best_order_ = order_;
  }

  const LocalGraph& lg_;
  int n_;
  std::vector<int> order_;
  std::vector<char> used_;
  std::vector<char> twin_;
  std::vector<char> matrix_, best_matrix_;
  std::vector<int> attrs_, best_attrs_;
  std::vector<int> best_order_;
  bool have_best_ = false;
};

void check_component(const Graph& g, std::span<const Vertex> s, const VertexSubset& c) {
  if (c.empty()) throw InputError("component is empty");
  std::vector<char> in_s(g.order(), 0), in_c(g.order(), 0);
  for (Vertex v : s) {
    if (v < 0 || v >= g.order()) throw InputError("anchor out of range");
    in_s[v] = 1;
  }
  for (Vertex v : c) {
    if (v < 0 || v >= g.order()) throw InputError("component vertex out of range");
    if (in_s[v]) throw InputError("component meets the separator");
    if (in_c[v]) throw InputError("component has a repeated vertex");
    in_c[v] = 1;
  }
  for (Vertex v : c) {
    for (Vertex w : g.neighbors(v)) {
      if (!in_c[w] && !in_s[w]) throw InputError("component is not closed in g - s");
    }
  }
  if (!is_connected_subset(g, c)) throw InputError("component is not connected");
}

// Builds the anchored local graph on s ++ c using host adjacency.
LocalGraph local_of(const Graph& g, std::span<const Vertex> s, const VertexSubset& c,
                    std::vector<Vertex>& host) {
  host.assign(s.begin(), s.end());
  host.insert(host.end(), c.begin(), c.end());
  LocalGraph lg;
  lg.fixed = static_cast<int>(s.size());
  lg.n = static_cast<int>(host.size());
  lg.adj.assign(lg.n * lg.n, 0);
  for (int i = 0; i < lg.n; ++i) {
    for (int j = i + 1; j < lg.n; ++j) {
      if (g.adjacent(host[i], host[j])) lg.adj[i * lg.n + j] = lg.adj[j * lg.n + i] = 1;
    }
  }
  return lg;
}

ComponentType finish(char kind, const LocalGraph& lg, const std::vector<Vertex>& host) {
  CanonicalForm cf = canonicalize(lg);
  ComponentType t;
  t.code.push_back(kind);
  append_u16(t.code, lg.fixed);
  append_u16(t.code, lg.n - lg.fixed);
  t.code += cf.key;
  t.size = lg.n;
  t.order.resize(lg.n);
  for (int i = 0; i < lg.n; ++i) t.order[i] = host[cf.order[i]];
  return t;
}

}  // namespace

CanonicalForm canonicalize(const LocalGraph& lg) {
  if (static_cast<int>(lg.adj.size()) != lg.n * lg.n) throw InputError("bad local adjacency");
  if (!lg.attrs.empty() && static_cast<int>(lg.attrs.size()) != lg.n) {
    throw InputError("bad local attributes");
  }
  return Canonicalizer(lg).run();
}

ComponentType type_of(const Graph& g, std::span<const Vertex> s_ordered, const VertexSubset& c,
                      TypeMode mode) {
  check_component(g, s_ordered, c);
  std::vector<Vertex> host;
  LocalGraph lg = local_of(g, s_ordered, c, host);
  char kind = 'T';
  if (mode == TypeMode::Capacity) {
    if (!g.has_capacities()) throw InputError("capacity types need capacities");
    for (Vertex v : host) lg.attrs.push_back(g.capacity(v));
    kind = 'C';
  } else if (mode == TypeMode::Color) {
    if (!g.has_colors()) throw InputError("color types need colors");
    for (Vertex v : host) lg.attrs.push_back(g.color(v));
    kind = 'K';
  }
  ComponentType t = finish(kind, lg, host);
  if (mode == TypeMode::Capacity) {
    for (Vertex v : t.order) t.capacity_vector.push_back(g.capacity(v));
  } else if (mode == TypeMode::Color) {
    for (Vertex v : t.order) t.color_vector.push_back(g.color(v));
  }
  return t;
}

ComponentType marked_type_of(const Graph& g, std::span<const Vertex> s_ordered,
                             const VertexSubset& c, const std::vector<int>& marks) {
  check_component(g, s_ordered, c);
  if (static_cast<int>(marks.size()) != g.order()) throw InputError("marks must cover all vertices");
  std::vector<Vertex> host;
  LocalGraph lg = local_of(g, s_ordered, c, host);
  for (Vertex v : host) lg.attrs.push_back(marks[v]);
  ComponentType t = finish('M', lg, host);
  for (Vertex v : t.order) t.color_vector.push_back(marks[v]);
  return t;
}

int TypeTable::total_components() const {
  int s = 0;
  for (const auto& c : classes) s += c.count();
  return s;
}

int TypeTable::find(const std::string& code) const {
  auto it = std::lower_bound(classes.begin(), classes.end(), code,
                             [](const TypeClass& c, const std::string& k) { return c.type.code < k; });
  if (it == classes.end() || it->type.code != code) return -1;
  return static_cast<int>(it - classes.begin());
}

TypeTable classify(const Graph& g, std::span<const Vertex> s_ordered, TypeMode mode) {
  TypeTable table;
  table.separator.assign(s_ordered.begin(), s_ordered.end());
  table.mode = mode;
  std::vector<bool> removed(g.order(), false);
  for (Vertex v : s_ordered) {
    if (v < 0 || v >= g.order()) throw InputError("separator vertex out of range");
    removed[v] = true;
  }
  std::map<std::string, TypeClass> by_code;
  for (auto& c : components_without(g, removed)) {
    ComponentType t = type_of(g, s_ordered, c, mode);
    auto [it, fresh] = by_code.try_emplace(t.code);
    if (fresh) it->second.type = t;
    it->second.orders.push_back(t.order);
    it->second.members.push_back(std::move(c));
  }
  for (auto& [code, cls] : by_code) table.classes.push_back(std::move(cls));
  return table;
}

namespace {

GType piece_code(const Graph& h, std::span<const Vertex> r, const Piece& piece) {
  std::vector<Vertex> host(r.begin(), r.end());
  host.insert(host.end(), piece.vertices.begin(), piece.vertices.end());
  LocalGraph lg;
  lg.fixed = static_cast<int>(r.size());
  lg.n = static_cast<int>(host.size());
  lg.adj.assign(lg.n * lg.n, 0);
  std::vector<int> local(h.order(), -1);
  for (int i = 0; i < lg.n; ++i) local[host[i]] = i;
  auto set = [&](const Edge& e) {
    const int a = local[e.u], b = local[e.v];
    lg.adj[a * lg.n + b] = lg.adj[b * lg.n + a] = 1;
  };
  for (const Edge& e : piece.internal) set(e);
  for (const Edge& e : piece.boundary) set(e);
  return finish('G', lg, host);
}

void check_piece(const Graph& h, std::span<const Vertex> r, const Piece& piece) {
  if (piece.vertices.empty()) throw InputError("piece has no vertices");
  std::vector<char> in_r(h.order(), 0), in_a(h.order(), 0);
  for (Vertex v : r) {
    if (v < 0 || v >= h.order()) throw InputError("anchor out of range");
    in_r[v] = 1;
  }
  for (Vertex v : piece.vertices) {
    if (v < 0 || v >= h.order() || in_r[v] || in_a[v]) throw InputError("bad piece vertex");
    in_a[v] = 1;
  }
  for (const Edge& e : piece.internal) {
    if (!in_a[e.u] || !in_a[e.v] || !h.adjacent(e.u, e.v)) {
      throw InputError("internal edge not inside the piece");
    }
  }
  for (const Edge& e : piece.boundary) {
    const bool joins = (in_a[e.u] && in_r[e.v]) || (in_a[e.v] && in_r[e.u]);
    if (!joins || !h.adjacent(e.u, e.v)) throw InputError("edge does not join the piece and r");
  }
  // Connectivity through the kept internal edges.
  std::vector<Vertex> stack{piece.vertices.front()};
  std::vector<char> seen(h.order(), 0);
  seen[piece.vertices.front()] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    ++reached;
    for (const Edge& e : piece.internal) {
      Vertex w = e.u == v ? e.v : e.v == v ? e.u : -1;
      if (w >= 0 && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  if (reached != piece.vertices.size()) throw InputError("piece is not connected");
}

}  // namespace

GType g_type_of(const Graph& h, std::span<const Vertex> r_ordered, const VertexSubset& a,
                const std::vector<Edge>& b) {
  Piece piece;
  piece.vertices = a;
  std::sort(piece.vertices.begin(), piece.vertices.end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (h.adjacent(a[i], a[j])) piece.internal.emplace_back(a[i], a[j]);
    }
  }
  piece.boundary = b;
  check_piece(h, r_ordered, piece);
  return piece_code(h, r_ordered, piece);
}

GType piece_type(const Graph& h, std::span<const Vertex> r_ordered, const Piece& piece) {
  check_piece(h, r_ordered, piece);
  return piece_code(h, r_ordered, piece);
}

namespace {

// Components of (u_mask, kept edges) over the local vertex list.
std::vector<std::vector<int>> local_components(int n, unsigned u_mask,
                                               const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : edges) parent[find(a)] = find(b);
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!((u_mask >> i) & 1)) continue;
    const int root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[root]].push_back(i);
  }
  return groups;
}

struct PieceOption {
  std::string code;
  Piece piece;
};

}  // namespace

std::vector<Decomposition> enumerate_decompositions(const Graph& h,
                                                    std::span<const Vertex> r_ordered,
                                                    const VertexSubset& c,
                                                    DecompositionMode mode) {
  std::map<std::vector<std::string>, Decomposition> found;
  found[{}] = Decomposition{};
  if (c.empty()) return {found.begin()->second};
  check_component(h, r_ordered, c);
  const int n = static_cast<int>(c.size());
  if (n > 20) throw InputError("component too large to decompose");
  std::vector<char> in_r(h.order(), 0);
  for (Vertex v : r_ordered) in_r[v] = 1;
  std::vector<std::pair<int, int>> inner;  // local index pairs
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (h.adjacent(c[i], c[j])) inner.emplace_back(i, j);
    }
  }
  // Boundary edges per local vertex.
  std::vector<std::vector<Edge>> to_r(n);
  for (int i = 0; i < n; ++i) {
    for (Vertex w : h.neighbors(c[i])) {
      if (in_r[w]) to_r[i].emplace_back(c[i], w);
    }
  }

  for (unsigned u_mask = 1; u_mask < (1u << n); ++u_mask) {
    std::vector<int> kept_inner;
    for (int e = 0; e < static_cast<int>(inner.size()); ++e) {
      if (((u_mask >> inner[e].first) & 1) && ((u_mask >> inner[e].second) & 1)) {
        kept_inner.push_back(e);
      }
    }
    const unsigned f_limit =
        mode == DecompositionMode::Induced ? 1u : (1u << kept_inner.size());
    for (unsigned f_mask = 0; f_mask < f_limit; ++f_mask) {
      std::vector<std::pair<int, int>> f_edges;
      for (int i = 0; i < static_cast<int>(kept_inner.size()); ++i) {
        if (mode == DecompositionMode::Induced || ((f_mask >> i) & 1)) {
          f_edges.push_back(inner[kept_inner[i]]);
        }
      }
      // Options per piece: distinct codes over boundary subsets.
      std::vector<std::vector<PieceOption>> options;
      for (const auto& group : local_components(n, u_mask, f_edges)) {
        Piece base;
        std::vector<char> in_group(n, 0);
        for (int i : group) {
          base.vertices.push_back(c[i]);
          in_group[i] = 1;
        }
        for (auto [a, b] : f_edges) {
          if (in_group[a]) base.internal.emplace_back(c[a], c[b]);
        }
        std::vector<Edge> boundary;
        for (int i : group) boundary.insert(boundary.end(), to_r[i].begin(), to_r[i].end());
        std::sort(boundary.begin(), boundary.end());
        std::sort(base.internal.begin(), base.internal.end());
        if (boundary.size() > 24) throw InputError("piece has too many anchor edges");
        std::map<std::string, Piece> codes;
        const std::uint64_t b_limit =
            mode == DecompositionMode::Induced ? 1 : (std::uint64_t{1} << boundary.size());
        for (std::uint64_t b_mask = 0; b_mask < b_limit; ++b_mask) {
          Piece p = base;
          for (std::size_t i = 0; i < boundary.size(); ++i) {
            if (mode == DecompositionMode::Induced || ((b_mask >> i) & 1)) {
              p.boundary.push_back(boundary[i]);
            }
          }
          std::string code = piece_code(h, r_ordered, p).code;
          codes.try_emplace(std::move(code), std::move(p));
        }
        std::vector<PieceOption> opts;
        for (auto& [code, p] : codes) opts.push_back({code, std::move(p)});
        options.push_back(std::move(opts));
      }
      // Cartesian product of piece options.
      std::vector<std::size_t> pick(options.size(), 0);
      while (true) {
        std::vector<std::pair<std::string, const Piece*>> chosen;
        for (std::size_t i = 0; i < options.size(); ++i) {
          chosen.emplace_back(options[i][pick[i]].code, &options[i][pick[i]].piece);
        }
        std::stable_sort(chosen.begin(), chosen.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::string> key;
        for (const auto& [code, p] : chosen) key.push_back(code);
        if (!found.count(key)) {
          Decomposition d;
          d.multiset = key;
          for (const auto& [code, p] : chosen) d.pieces.push_back(*p);
          found.emplace(std::move(key), std::move(d));
        }
        std::size_t i = 0;
        while (i < options.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == options.size()) break;
      }
    }
  }
  std::vector<Decomposition> out;
  for (auto& [key, d] : found) out.push_back(std::move(d));
  return out;
}

}  // namespace viforge
