#pragma once

#include <optional>
#include <vector>

#include "subcycle/graph.hpp"
#include "subcycle/oracle.hpp"

namespace subcycle {

/// Output of the rooted search: the cycle found from root v, the tree of
/// vertices labeled strictly below the termination threshold h* (just the
/// root when that set is empty, i.e. when the root's own label already sits
/// at h*), and h* itself. Invariants (checked by validate_rooted_tree_result):
///   - the root belongs to the tree;
///   - the tree is induced and connected to the root through parent links;
///   - cost(cycle) <= 2 h*;
///   - for every tree vertex x and active neighbor y outside the tree,
///     f(P_x u {y}) >= h*, where P_x is the tree path root..x.
struct RootedTreeResult {
  int root = -1;
  Cycle cycle;
  Cost cycle_cost;
  std::vector<int> parent;      // -1 outside the tree; parent[root] == root
  std::vector<char> in_tree;    // membership mask over the host graph
  Cost h_star;

  /// Tree path root..x as a vertex sequence (x must be in the tree).
  std::vector<int> tree_path(int x) const;
};

/// Family of candidate branch paths: every cycle of the searched graph
/// contains at least one of them as a segment, and there are at most n*m.
struct PathFamily {
  std::vector<VertexPath> paths;
};

struct SolveStats {
  long long oracle_queries = 0;   // base-oracle calls attributable to the run
  long long recursion_nodes = 0;  // executed Find-Cycle nodes (memo hits excluded)
  double wall_ms = 0.0;
};

struct CycleResult {
  Cycle cycle;          // original vertex ids / edge ids of the input graph
  Cost cost;            // fresh oracle evaluation of the returned cycle
  SolveStats stats;
};

struct TwoApproxResult {
  CycleResult best;
  // Trees are computed on the input graph restricted to `active` (its
  // 2-core); there is one tree per active vertex, in root order.
  std::vector<RootedTreeResult> trees;
  std::vector<char> active;
};

/// Rooted search from v on g restricted to `active` (empty mask = all of g).
/// Requires a simple graph and that v's active component contains a cycle.
RootedTreeResult cycle_from_root(const Multigraph& g, int v,
                                 const CostOracle& f,
                                 const std::vector<char>& active = {});

/// Runs cycle_from_root from every active vertex and keeps the cheapest
/// cycle; cost is at most twice the optimum. Throws NoSolutionError on
/// forests.
TwoApproxResult two_approx(const Multigraph& g, const CostOracle& f);

/// All paths (tree path root..x) + y for x in T(root), y an active neighbor
/// of x outside T(root), over all supplied trees.
PathFamily build_path_family(const Multigraph& g,
                             const std::vector<RootedTreeResult>& trees,
                             const std::vector<char>& active = {});

/// Recursive branching solver: cost at most (1 + 2^-k) times the optimum.
CycleResult find_cycle(const Multigraph& g, const CostOracle& f, int depth);

/// find_cycle with depth ceil(log2(1/epsilon)): cost <= (1+epsilon) OPT.
CycleResult ptas(const Multigraph& g, const CostOracle& f, double epsilon);

/// Smallest k >= 0 with 2^k * epsilon >= 1 (0 when epsilon >= 1).
int depth_for_epsilon(double epsilon);

/// Exact minimum for integer-valued oracles: a depth-1 run bounds the
/// optimum by w, then depth ceil(log2(w+1)) pins it exactly.
CycleResult exact_integer(const Multigraph& g, const CostOracle& f);

enum class SolveMode { exact, approximate };

struct EdgeCycleOptions {
  SolveMode mode = SolveMode::exact;
  double epsilon = 1.0;  // used when mode == approximate
};

/// Edge-cost version on loop-free multigraphs: subdivides, lifts the oracle
/// to subdivision vertices, solves, and maps the cycle back to edge ids.
CycleResult edge_cycle(const Multigraph& g, const CostOracle& f,
                       const EdgeCycleOptions& opts);

/// Vertex oracle over subdivide(g) seeing only subdivision vertices:
/// g'(X) = f({edge(v) : v in X, v a subdivision vertex}).
MappedOracle lift_to_subdivision(const SubdivideResult& sub,
                                 const CostOracle& edge_oracle);

/// Checks all four RootedTreeResult invariants (issues extra oracle
/// queries); throws InternalError on the first violation.
void validate_rooted_tree_result(const Multigraph& g, const CostOracle& f,
                                 const RootedTreeResult& r,
                                 const std::vector<char>& active = {});

}  // namespace subcycle
