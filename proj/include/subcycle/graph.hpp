#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "subcycle/bitset.hpp"
#include "subcycle/errors.hpp"

namespace subcycle {

struct Incidence {
  int to;
  int edge;
};

/// Undirected multigraph over dense vertex ids 0..n-1. Parallel edges and
/// loops are allowed; edge ids are assigned in insertion order. Immutable by
/// convention once handed to a solver.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n) : n_(n), adj_(n) {
    if (n < 0) throw InputError("vertex count must be nonnegative");
  }

  int add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    int id = static_cast<int>(edges_.size());
    edges_.emplace_back(u, v);
    adj_[u].push_back({v, id});
    adj_[v].push_back({u, id});  // a loop appears twice at its vertex
    return id;
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  std::pair<int, int> endpoints(int e) const {
    check_edge(e);
    return edges_[e];
  }

  bool is_loop(int e) const {
    check_edge(e);
    return edges_[e].first == edges_[e].second;
  }

  /// For an edge incident to v, the endpoint other than v (== v for a loop).
  int other_endpoint(int e, int v) const {
    auto [a, b] = endpoints(e);
    if (a == v) return b;
    if (b == v) return a;
    throw InternalError("vertex not an endpoint of edge");
  }

  const std::vector<Incidence>& neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
  }

  /// Incidence degree: loops count twice.
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  bool has_loops() const {
    for (int e = 0; e < edge_count(); ++e)
      if (is_loop(e)) return true;
    return false;
  }

  bool is_simple() const;

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_)
      throw InputError("vertex " + std::to_string(v) + " out of range [0," +
                       std::to_string(n_) + ")");
  }
  void check_edge(int e) const {
    if (e < 0 || e >= edge_count())
      throw InputError("edge " + std::to_string(e) + " out of range [0," +
                       std::to_string(edge_count()) + ")");
  }

  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<Incidence>> adj_;
};

/// A simple path given by its vertex sequence; consecutive vertices must be
/// adjacent in the host graph and no vertex repeats.
struct VertexPath {
  std::vector<int> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  Bitset vertex_set(int n) const { return Bitset::of(n, vertices); }
  void validate(const Multigraph& g) const;
};

/// A simple cycle: cyclic vertex sequence plus the edge ids realizing it
/// (edges[i] joins vertices[i] and vertices[(i+1) % len]). Length 2 is
/// permitted through distinct parallel edges; loops are not cycles.
struct Cycle {
  std::vector<int> vertices;
  std::vector<int> edges;

  int length() const { return static_cast<int>(vertices.size()); }
  Bitset vertex_set(int n) const { return Bitset::of(n, vertices); }
  Bitset edge_set(int m) const { return Bitset::of(m, edges); }

  /// Rotate so the smallest vertex id comes first, then pick the orientation
  /// whose second vertex is smaller (for 2-cycles: the smaller edge id first).
  void canonicalize();
  void validate(const Multigraph& g) const;
};

struct TwoCoreResult {
  Multigraph graph;
  std::vector<int> vertex_map;  // core vertex id -> original vertex id
  std::vector<int> edge_map;    // core edge id -> original edge id
};

/// Iteratively delete vertices of incidence degree <= 1 (loops count 2).
/// Every component of the result contains a cycle; the result is empty iff
/// the input is a forest.
TwoCoreResult two_core(const Multigraph& g);

/// Same peeling as two_core but as a membership mask over the original ids.
std::vector<char> two_core_mask(const Multigraph& g);

struct SubdivideResult {
  Multigraph graph;       // n + m vertices, 2m edges
  int original_vertices;  // vertices >= this are subdivision vertices

  bool is_subdivision_vertex(int v) const { return v >= original_vertices; }
  int edge_of_vertex(int v) const {
    if (!is_subdivision_vertex(v))
      throw InternalError("not a subdivision vertex");
    return v - original_vertices;
  }
  int vertex_of_edge(int e) const { return original_vertices + e; }
};

/// Replace each edge xy by x - v_xy - y. Rejects loops (split them into two
/// edges first); the result is simple whenever the input is loop-free.
SubdivideResult subdivide(const Multigraph& g);

/// Every simple cycle exactly once in canonical form, including length-2
/// parallel-edge cycles. Throws CapExceededError past `cap` cycles.
std::vector<Cycle> enumerate_cycles(const Multigraph& g,
                                    long long cap = 1000000);

/// True iff p's vertex sequence occurs contiguously in c, in either
/// orientation and at any rotation.
bool is_segment(const VertexPath& p, const Cycle& c);

/// Number of connected components (isolated vertices count).
int component_count(const Multigraph& g);

/// Component count of the spanning subgraph (V, edges in `edge_subset`).
int component_count_with_edges(const Multigraph& g, const Bitset& edge_subset);

}  // namespace subcycle
