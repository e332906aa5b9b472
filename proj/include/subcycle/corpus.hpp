#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "subcycle/graph.hpp"
#include "subcycle/oracle.hpp"
#include "subcycle/planar.hpp"
#include "subcycle/wfh.hpp"

namespace subcycle {

/// Deterministic generator state: fixed engine, hand-rolled draws, so output
/// is byte-identical across platforms for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, bound); bound >= 1.
  int below(int bound);
  /// Uniform in [lo, hi] inclusive.
  int between(int lo, int hi);
  double unit();  // [0, 1)

 private:
  std::uint64_t state_;
};

/// Derives an independent stream for (seed, index) pairs.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

/// Simple graph on n vertices with at least n edges (so a cycle exists).
Multigraph random_simple_graph_with_cycle(std::uint64_t seed, int n);

enum class OracleFlavor {
  modular_int,
  modular_real,
  coverage,
  graphic_rank,
  partition_matroid,
};

inline constexpr OracleFlavor kIntegerOracleFlavors[] = {
    OracleFlavor::modular_int, OracleFlavor::coverage,
    OracleFlavor::graphic_rank, OracleFlavor::partition_matroid};

std::unique_ptr<CostOracle> random_oracle(std::uint64_t seed, OracleFlavor flavor,
                                          GroundKind kind, int ground_size);

/// Connected embedded planar multigraph grown by face-respecting insertions
/// (parallel edges, loops and bridges all arise); at most max_vertices.
EmbeddedMultigraph random_embedded_planar(std::uint64_t seed, int max_vertices);

struct WideInstanceParams {
  int min_k = 1;
  int max_k = 6;
  int min_universe = 2;
  int max_universe = 16;
  int min_families = 1;
  int max_families = 8;
  int min_family_size = 1;
  int max_family_size = 5;
  int min_set_size = 0;
  int max_set_size = 3;     // capped at k
  int max_input_size = 0;   // N = total of |A|; 0 = unbounded
  bool plant_solution = false;
  bool plant_slack = false;  // keep the planted union below k
};

/// Rejection-samples random families until every one is k-wide; optionally
/// plants one guaranteed solution.
WfhInstance random_wide_instance(std::uint64_t seed,
                                 const WideInstanceParams& params);

/// Digest over a fixed battery of generated artifacts, for golden-file
/// regression of generator determinism.
std::string corpus_digest(std::uint64_t seed);

}  // namespace subcycle
