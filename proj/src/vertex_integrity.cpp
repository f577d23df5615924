#include "viforge/vertex_integrity.hpp"

#include <algorithm>
#include <deque>

#include "viforge/errors.hpp"

namespace viforge {

bool is_vi_set(const Graph& g, const VertexSubset& separator, int k) {
  std::vector<bool> removed(g.order(), false);
  for (Vertex v : separator) {
    if (v < 0 || v >= g.order() || removed[v]) return false;
    removed[v] = true;
  }
  const int s = static_cast<int>(separator.size());
  if (s > k) return false;
  for (const auto& c : components_without(g, removed)) {
    if (s + static_cast<int>(c.size()) > k) return false;
  }
  return true;
}

namespace {

class ViSearch {
 public:
  ViSearch(const Graph& g, int k) : g_(g), k_(k), in_s_(g.order(), false) {}

  bool run() { return branch(); }

  VertexSubset separator() const {
    VertexSubset s = chosen_;
    std::sort(s.begin(), s.end());
    return s;
  }

 private:
  // First k - |S| + 1 vertices of a BFS inside G - S from `root`.
  std::vector<Vertex> bfs_prefix(Vertex root, int want) const {
    std::vector<Vertex> order{root};
    std::vector<bool> seen(g_.order(), false);
    seen[root] = true;
    for (std::size_t head = 0; head < order.size() && static_cast<int>(order.size()) < want;
         ++head) {
      for (Vertex w : g_.neighbors(order[head])) {
        if (seen[w] || in_s_[w]) continue;
        seen[w] = true;
        order.push_back(w);
        if (static_cast<int>(order.size()) == want) break;
      }
    }
    return order;
  }

  bool branch() {
    const int s = static_cast<int>(chosen_.size());
    if (s > k_) return false;
    for (const auto& c : components_without(g_, in_s_)) {
      if (s + static_cast<int>(c.size()) <= k_) continue;
      if (s == k_) return false;
      for (Vertex v : bfs_prefix(c.front(), k_ - s + 1)) {
        in_s_[v] = true;
        chosen_.push_back(v);
        if (branch()) return true;
        chosen_.pop_back();
        in_s_[v] = false;
      }
      return false;
    }
    return true;
  }

  const Graph& g_;
  int k_;
  std::vector<bool> in_s_;
  std::vector<Vertex> chosen_;
};

}  // namespace

std::optional<ViSet> vi_k_set(const Graph& g, int k) {
  if (k < 1) throw InputError("vi_k_set requires k >= 1");
  ViSearch search(g, k);
  if (!search.run()) return std::nullopt;
  return ViSet{search.separator(), k};
}

ViSet vertex_integrity(const Graph& g) {
  if (g.order() == 0) return ViSet{{}, 0};
  for (int k = 1;; ++k) {
    if (auto found = vi_k_set(g, k)) return *found;
  }
}

namespace {

bool cover_branch(const Graph& g, std::vector<bool>& in_cover, std::vector<Vertex>& cover,
                  int budget) {
  for (const Edge& e : g.edges()) {
    if (in_cover[e.u] || in_cover[e.v]) continue;
    if (budget == 0) return false;
    for (Vertex pick : {e.u, e.v}) {
      in_cover[pick] = true;
      cover.push_back(pick);
      if (cover_branch(g, in_cover, cover, budget - 1)) return true;
      cover.pop_back();
      in_cover[pick] = false;
    }
    return false;
  }
  return true;
}

}  // namespace

VertexSubset vertex_cover_min(const Graph& g) {
  for (int budget = 0;; ++budget) {
    std::vector<bool> in_cover(g.order(), false);
    std::vector<Vertex> cover;
    if (cover_branch(g, in_cover, cover, budget)) {
      std::sort(cover.begin(), cover.end());
      return cover;
    }
  }
}

}  // namespace viforge
