#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "subcycle/bitset.hpp"
#include "subcycle/graph.hpp"

namespace subcycle {

/// Wide Family Hitting instance: pick one set per family so the union has at
/// most k elements. Every family must be k-wide: distinct members A, B of one
/// family satisfy |A u B| > k.
struct WfhInstance {
  int k = 0;
  int universe = 0;
  std::vector<std::vector<Bitset>> families;

  long long input_size() const;  // N = total of |A| over all sets
  int max_family_size() const;   // d
};

struct WfhSolution {
  std::vector<int> chosen;  // set index per family
  Bitset union_set;
};

struct WideViolation {
  int family;
  int first_set, second_set;
};

/// Checks all intra-family pairs; returns the first violating pair if any.
std::optional<WideViolation> validate_wide(const WfhInstance& inst);

/// Dynamic program over families tracking all achievable unions of size
/// <= k; reconstructs a witness. Refuses universes larger than 20.
std::optional<WfhSolution> wfh_brute_force(const WfhInstance& inst);

struct FptStats {
  long long candidates = 0;    // guessed largest sets tried
  long long branch_nodes = 0;  // branching recursion nodes
};

/// Guess the largest chosen set, prune, then process families in order:
/// greedy when a set is already covered, branch otherwise. Agrees with
/// wfh_brute_force on every instance. Requires a wide instance.
std::optional<WfhSolution> wfh_fpt_solve(const WfhInstance& inst,
                                         FptStats* stats = nullptr);

struct RandomizedOptions {
  std::uint64_t seed = 0;
  /// Trials; <= 0 selects the default 2k * d^(1 + ceil(log2 max(k,2))),
  /// the reciprocal of the per-trial success bound.
  long long repetitions = 0;
};

struct RandomizedOutcome {
  std::optional<WfhSolution> solution;  // valid whenever present
  long long trials_run = 0;
  long long trials_available = 0;
};

long long default_repetitions(int k, int d);

/// Per trial: process families with remaining budget b, take covered sets
/// greedily, drop sets exceeding b, take the (unique) light set with
/// probability (b-c)/b and each heavy set with probability c/(bd). One-sided
/// error: a returned solution is always valid.
RandomizedOutcome wfh_randomized_solve(const WfhInstance& inst,
                                       const RandomizedOptions& opts);

/// Runs exactly one randomized trial (used for success-frequency tests).
std::optional<WfhSolution> wfh_randomized_trial(const WfhInstance& inst,
                                                std::uint64_t trial_seed);

// ---------------------------------------------------------------------------
// Reductions to and from the minimum-color cycle problem on layered graphs.

/// The layered shape: spine vertices v_0..v_m, bundles of internally disjoint
/// (v_{i-1}, v_i)-paths with >= 1 internal vertex each, plus the edge v_0v_m.
/// Vertices carry colors; the question is a cycle with at most k colors.
struct LayeredHedgeGraph {
  Multigraph graph;
  std::vector<int> colors;  // per vertex
  std::vector<int> spine;   // v_0..v_m in order
  int k = 0;                // color budget
};

/// Forward reduction. Spine vertices get the fresh color `universe`; a set S
/// becomes a path with |S| internal vertices colored by S (empty sets get one
/// internal vertex with the spine color); budget k' = k+1. The instance is a
/// yes iff the graph has a cycle using at most k' colors.
LayeredHedgeGraph wfh_to_hedge_cycle(const WfhInstance& inst);

struct HedgeCycleAnswer {
  bool yes = false;
  /// Route (i): a two-path cycle inside one bundle.
  std::optional<std::pair<int, int>> bundle_pair;  // path indices in a bundle
  int bundle = -1;
  /// Route (ii): the WFH solution over path color sets.
  std::optional<WfhSolution> wfh_solution;
};

/// Reverse reduction: validates the layered shape, brute-forces two-path
/// cycles within bundles, then solves the residual instance (path color sets,
/// which are k-wide once no two-path cycle is cheap) with wfh_fpt_solve.
HedgeCycleAnswer hedge_cycle_to_wfh(const LayeredHedgeGraph& g);

}  // namespace subcycle
