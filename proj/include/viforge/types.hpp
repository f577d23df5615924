#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "viforge/graph.hpp"

namespace viforge {

enum class TypeMode { Plain, Capacity, Color };

// Canonical code of a small anchored graph. Codes of different kinds or
// sizes never collide because the header records both.
struct ComponentType {
  std::string code;
  // Number of vertices of the anchored graph (anchors included).
  int size = 0;
  // Host vertices in canonical position order: anchors as given, then the
  // component permuted to the minimal code. For two members of one class,
  // order1[i] -> order2[i] is an anchor-fixing isomorphism.
  std::vector<Vertex> order;
  std::vector<int> capacity_vector;
  std::vector<int> color_vector;

  std::string hex() const;
  friend bool operator==(const ComponentType& a, const ComponentType& b) { return a.code == b.code; }
  friend auto operator<=>(const ComponentType& a, const ComponentType& b) {
    return a.code <=> b.code;
  }
};

using GType = ComponentType;

// Small graph on n local vertices; vertices 0..fixed-1 keep their positions.
struct LocalGraph {
  int fixed = 0;
  int n = 0;
  std::vector<char> adj;   // n * n, symmetric
  std::vector<int> attrs;  // empty or size n
};

struct CanonicalForm {
  // Row-major adjacency bits packed MSB first, then attributes.
  std::string key;
  // Position -> local vertex.
  std::vector<int> order;
};

// Lexicographically minimal row-major adjacency string over all orderings of
// the free vertices, attributes compared after the matrix. Brute force with
// first-row pruning and twin skipping.
CanonicalForm canonicalize(const LocalGraph& lg);

// Type of component c of g - s, anchored at s in the given order. Throws
// InputError when c is not a component of g - s.
ComponentType type_of(const Graph& g, std::span<const Vertex> s_ordered, const VertexSubset& c,
                      TypeMode mode = TypeMode::Plain);

// Same as type_of with caller-supplied per-vertex marks (indexed by host
// vertex) compared like colors; used to canonicalize marked subsets.
ComponentType marked_type_of(const Graph& g, std::span<const Vertex> s_ordered,
                             const VertexSubset& c, const std::vector<int>& marks);

struct TypeClass {
  ComponentType type;  // type of the first member
  std::vector<VertexSubset> members;
  // Canonical order of each member, aligned with type.order positions.
  std::vector<std::vector<Vertex>> orders;
  int count() const { return static_cast<int>(members.size()); }
};

struct TypeTable {
  std::vector<Vertex> separator;
  TypeMode mode = TypeMode::Plain;
  // Sorted by code.
  std::vector<TypeClass> classes;

  int total_components() const;
  // Index of the class with this code, or -1.
  int find(const std::string& code) const;
};

TypeTable classify(const Graph& g, std::span<const Vertex> s_ordered,
                   TypeMode mode = TypeMode::Plain);

// A fragment of a component: connected vertex set with the internal edges
// and the edges to the anchors it keeps.
struct Piece {
  VertexSubset vertices;
  std::vector<Edge> internal;
  std::vector<Edge> boundary;
};

// g-type of (a, b) with all edges of h[a]: the subgraph formed by b and the
// edges inside a, anchored at r. Throws InputError when b has an edge that
// does not join a and r, or when a is not connected in h - r.
GType g_type_of(const Graph& h, std::span<const Vertex> r_ordered, const VertexSubset& a,
                const std::vector<Edge>& b);

// g-type of a piece whose internal edges may be a subset of h[a].
GType piece_type(const Graph& h, std::span<const Vertex> r_ordered, const Piece& piece);

enum class DecompositionMode {
  // Kept vertices, kept internal edges and kept anchor edges are all free.
  Subgraph,
  // Pieces are induced and keep every edge to the anchors.
  Induced,
};

struct Decomposition {
  // Sorted g-type codes of the pieces.
  std::vector<std::string> multiset;
  // One realization, aligned with `multiset`.
  std::vector<Piece> pieces;
};

// All distinct piece multisets of component c of h - r, each with one
// witness. Deterministic; ordered by multiset.
std::vector<Decomposition> enumerate_decompositions(
    const Graph& h, std::span<const Vertex> r_ordered, const VertexSubset& c,
    DecompositionMode mode = DecompositionMode::Subgraph);

std::string to_hex(const std::string& bytes);

}  // namespace viforge
