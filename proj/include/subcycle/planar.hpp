#pragma once

#include <optional>
#include <vector>

#include "subcycle/cycle_solver.hpp"
#include "subcycle/graph.hpp"
#include "subcycle/oracle.hpp"

namespace subcycle {

/// A multigraph with a rotation system. Darts are directed edge halves:
/// dart 2e runs endpoints(e).first -> .second, dart 2e+1 the reverse;
/// rotation[v] lists the darts with tail v in cyclic order. Faces are the
/// orbits of h -> rotation-successor of twin(h); a rotation system is
/// accepted as a spherical embedding iff every component satisfies
/// n - m + f = 2.
struct EmbeddedMultigraph {
  Multigraph graph;
  std::vector<std::vector<int>> rotation;

  int dart_count() const { return 2 * graph.edge_count(); }
  int dart_edge(int h) const { return h / 2; }
  int dart_twin(int h) const { return h ^ 1; }
  int dart_tail(int h) const {
    auto [u, v] = graph.endpoints(h / 2);
    return (h & 1) ? v : u;
  }
  int dart_head(int h) const { return dart_tail(h ^ 1); }

  /// Builds the rotation from per-vertex cyclic edge-id lists (a loop's id
  /// appears twice at its vertex; the first occurrence is dart 2e).
  static EmbeddedMultigraph from_edge_lists(
      Multigraph g, const std::vector<std::vector<int>>& lists);

  /// Per-vertex cyclic edge-id lists (inverse of from_edge_lists).
  std::vector<std::vector<int>> to_edge_lists() const;
};

struct FaceStructure {
  std::vector<int> face_of_dart;       // dart -> face id
  std::vector<std::vector<int>> faces; // face id -> dart orbit in walk order
  int face_count() const { return static_cast<int>(faces.size()); }
};

/// Traces all face orbits; throws InputError if the rotation system is
/// malformed or fails the per-component Euler check.
FaceStructure trace_faces(const EmbeddedMultigraph& g);

/// Dual graph: one vertex per face, one edge per primal edge (same id),
/// joining the two faces along it. A primal bridge becomes a dual loop.
/// The dual carries the embedding induced by the face walks.
struct DualGraph {
  EmbeddedMultigraph embedded;  // dual edge e corresponds to primal edge e
  FaceStructure primal_faces;
};

DualGraph build_dual(const EmbeddedMultigraph& g);

struct MinCutResult {
  std::vector<int> cut_edges;  // ascending primal edge ids
  Cost cost;
  SolveStats stats;
};

/// Minimum-cost cut of a connected embedded planar multigraph under an edge
/// oracle: dual loops (primal bridges) are tried as singleton cuts, every
/// other cut comes from a cycle of the loop-free dual. The returned edge set
/// is re-verified to disconnect the graph.
MinCutResult min_cut(const EmbeddedMultigraph& g, const CostOracle& f,
                     const EdgeCycleOptions& opts);

}  // namespace subcycle
