#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "subcycle/graph.hpp"
#include "subcycle/oracle.hpp"
#include "subcycle/planar.hpp"
#include "subcycle/wfh.hpp"

namespace subcycle {

// Graph text format, one record per line, '#' starts a comment:
//   n <count>
//   e <u> <v>        (repeat for parallel edges; e u u is a loop)
//   rot <v> <edge ids...>   (optional embedding; loops listed twice at v)
struct ParsedGraph {
  Multigraph graph;
  std::optional<std::vector<std::vector<int>>> rotation_lists;

  bool has_embedding() const { return rotation_lists.has_value(); }
  EmbeddedMultigraph embedded() const {
    if (!rotation_lists) throw InputError("graph file carries no rotation system");
    return EmbeddedMultigraph::from_edge_lists(graph, *rotation_lists);
  }
};

ParsedGraph parse_graph(std::istream& in);
std::string serialize_graph(const ParsedGraph& g);

// Function spec format: first line the kind, then kind-specific lines:
//   modular            w <elem> <weight>
//   colors             c <elem> <color>
//   partition-matroid  block <cap> <elem...>
//   graphic-rank       self            (rank of the input graph itself), or
//                      n <aux vertex count> + e <elem> <u> <v> per element
//   lb-f               lb <k> <p>
//   lb-fc              lb <k> <p> cycle <edge-ids...>
struct FunctionSpec {
  enum class Kind { modular, colors, graphic_rank, partition_matroid, lb_f, lb_fc };
  Kind kind;

  std::vector<std::pair<int, double>> weights;      // modular
  std::vector<std::pair<int, int>> colors;          // colors
  std::vector<PartitionMatroidRankOracle::Block> blocks;
  bool rank_self = false;                           // graphic-rank
  int rank_aux_n = 0;
  std::vector<std::tuple<int, int, int>> rank_edges;  // (elem, u, v)
  int lb_k = 0, lb_p = 0;
  std::vector<int> lb_cycle;

  int min_ground_size() const;  // smallest universe the lines refer to
};

FunctionSpec parse_function(std::istream& in);

/// Instantiates the spec over the given ground set. graph_for_self_rank is
/// required only for `graphic-rank self`.
std::unique_ptr<CostOracle> build_oracle(const FunctionSpec& spec,
                                         GroundKind kind, int ground_size,
                                         const Multigraph* graph_for_self_rank);

// WFH instance format:
//   k <budget>
//   u <universe size>
//   family               (starts a family)
//   set <elem...>        (a bare `set` is the empty set)
WfhInstance parse_wfh(std::istream& in);
std::string serialize_wfh(const WfhInstance& inst);

/// FNV-1a 64 over raw bytes, hex-encoded; used for input digests and the
/// corpus golden file.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace subcycle
