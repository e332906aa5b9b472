#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subcycle/bitset.hpp"
#include "subcycle/cost.hpp"
#include "subcycle/graph.hpp"

namespace subcycle {

enum class GroundKind { vertices, edges };

/// A nonnegative monotone submodular set function presented as a value
/// oracle. evaluate() is pure up to the query counter; complexity of the
/// solvers is measured in calls to it.
class CostOracle {
 public:
  CostOracle(GroundKind kind, int ground_size, bool integer_valued)
      : kind_(kind), ground_size_(ground_size), integer_valued_(integer_valued) {}
  virtual ~CostOracle() = default;

  CostOracle(const CostOracle&) = delete;
  CostOracle& operator=(const CostOracle&) = delete;

  GroundKind ground_kind() const { return kind_; }
  int ground_size() const { return ground_size_; }
  bool integer_valued() const { return integer_valued_; }

  Cost evaluate(const Bitset& x) const {
    if (x.universe_size() != ground_size_)
      throw InternalError("oracle queried with wrong universe size");
    queries_.fetch_add(1, std::memory_order_relaxed);
    return do_evaluate(x);
  }

  long long query_count() const {
    return queries_.load(std::memory_order_relaxed);
  }

  Bitset empty_set() const { return Bitset(ground_size_); }

 protected:
  virtual Cost do_evaluate(const Bitset& x) const = 0;

 private:
  GroundKind kind_;
  int ground_size_;
  bool integer_valued_;
  mutable std::atomic<long long> queries_{0};
};

/// g'(X) = base(X u pinned) - base(pinned), the device for committing to a
/// path segment. Nested contractions flatten onto the root oracle, so each
/// evaluate costs exactly one root query; the cached offset costs one more
/// at construction. Preserves nonnegativity, monotonicity and submodularity.
class ContractedOracle : public CostOracle {
 public:
  ContractedOracle(const CostOracle& base, Bitset pinned);

  const CostOracle& root() const { return *root_; }
  const Bitset& pinned() const { return pinned_; }
  const Cost& offset() const { return offset_; }

 protected:
  Cost do_evaluate(const Bitset& x) const override;

 private:
  const CostOracle* root_;  // never itself a ContractedOracle
  Bitset pinned_;
  Cost offset_;
};

/// Public contraction entry point (flattening handled by the constructor).
inline ContractedOracle contract(const CostOracle& base, const Bitset& pinned) {
  return ContractedOracle(base, pinned);
}

// ---------------------------------------------------------------------------
// Built-in oracle kinds.

/// f(X) = sum of per-element nonnegative weights.
class ModularOracle : public CostOracle {
 public:
  ModularOracle(GroundKind kind, std::vector<double> weights);
  const std::vector<double>& weights() const { return weights_; }

 protected:
  Cost do_evaluate(const Bitset& x) const override;

 private:
  std::vector<double> weights_;
  std::vector<long long> int_weights_;  // populated when all weights integral
};

/// f(X) = number of distinct colors (hedges) covering X.
class CoverageOracle : public CostOracle {
 public:
  CoverageOracle(GroundKind kind, std::vector<int> colors);
  const std::vector<int>& colors() const { return colors_; }
  int color_count() const { return color_count_; }

 protected:
  Cost do_evaluate(const Bitset& x) const override;

 private:
  std::vector<int> colors_;
  int color_count_ = 0;
};

/// Rank function of the graphic matroid of `host`: ground element i is edge i
/// of host, f(X) = |V(host)| - components(V(host), X). The ground kind is
/// `edges` when ranking a solver's own edge set and `vertices` when the host
/// is an auxiliary graph indexing a vertex ground set.
class GraphicMatroidRankOracle : public CostOracle {
 public:
  explicit GraphicMatroidRankOracle(Multigraph host,
                                    GroundKind kind = GroundKind::edges);
  const Multigraph& host() const { return host_; }

 protected:
  Cost do_evaluate(const Bitset& x) const override;

 private:
  Multigraph host_;
};

/// f(X) = sum over blocks of min(|X n B_j|, cap_j). Blocks must be disjoint;
/// elements outside every block contribute 0.
class PartitionMatroidRankOracle : public CostOracle {
 public:
  struct Block {
    int capacity;
    std::vector<int> elements;
  };
  PartitionMatroidRankOracle(GroundKind kind, int ground_size,
                             std::vector<Block> blocks);
  const std::vector<Block>& blocks() const { return blocks_; }

 protected:
  Cost do_evaluate(const Bitset& x) const override;

 private:
  std::vector<Block> blocks_;
  std::vector<Bitset> block_sets_;
};

/// Ground-set relabeling: f'(X) = base({map[i] : i in X}). Used to run vertex
/// solvers on subdivided graphs and dual solvers against primal-edge costs.
class MappedOracle : public CostOracle {
 public:
  /// element i of the new ground set maps to base element map[i];
  /// map[i] < 0 means element i is invisible to the base oracle.
  MappedOracle(GroundKind kind, const CostOracle& base, std::vector<int> map);

  const CostOracle& base() const { return *base_; }

 protected:
  Cost do_evaluate(const Bitset& x) const override;

 private:
  const CostOracle* base_;
  std::vector<int> map_;
};

// ---------------------------------------------------------------------------
// Exhaustive verification (Def. 2.1 in incremental form).

struct SubmodularityReport {
  enum class Violation { none, monotonicity, submodularity, nonnegative_empty };
  Violation violation = Violation::none;
  // Witness: for submodularity, f(X+v) - f(X) < f(Y+v) - f(Y) with X subset
  // of Y and v outside Y; for monotonicity, f(X) > f(Y) with Y = X + v.
  Bitset x, y;
  int elem = -1;

  bool pass() const { return violation == Violation::none; }
  std::string describe() const;
};

/// Checks monotonicity on all (X, X+v) pairs and the incremental submodular
/// inequality on all chains X subset-of Y, v outside Y, plus f(empty) >= 0.
/// Exhaustive: refuses ground sets larger than 20 elements.
SubmodularityReport verify_submodular_monotone(const CostOracle& oracle);

}  // namespace subcycle
