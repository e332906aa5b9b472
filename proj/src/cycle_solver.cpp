#include "subcycle/cycle_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace subcycle {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<char> all_active(int n) { return std::vector<char>(n, 1); }

void check_simple_restricted(const Multigraph& g, const std::vector<char>& active) {
  std::set<std::pair<int, int>> seen;
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    if (!active[u] || !active[v]) continue;
    if (u == v) throw InputError("vertex-cost solvers require a simple graph (loop found)");
    if (!seen.insert(std::minmax(u, v)).second)
      throw InputError("vertex-cost solvers require a simple graph (parallel edges found)");
  }
}

// One run of the rooted search. Assumes the restricted graph is simple and
// the oracle's ground set is V(g).
RootedTreeResult rooted_search(const Multigraph& g, int root,
                               const CostOracle& f,
                               const std::vector<char>& active) {
  const int n = g.vertex_count();
  std::vector<std::optional<Cost>> label(n);
  std::vector<char> popped(n, 0);
  std::vector<int> parent(n, -1), parent_edge(n, -1);
  std::vector<Bitset> path_set(n);

  parent[root] = root;
  label[root] = f.evaluate(Bitset::of(n, {root}));

  while (true) {
    int x = -1;
    for (int z = 0; z < n; ++z) {
      if (!active[z] || popped[z] || !label[z]) continue;
      if (x == -1 || label[z]->less(*label[x])) x = z;
    }
    if (x == -1)
      throw NoSolutionError("no cycle reachable from the root (component is a tree)");

    popped[x] = 1;
    if (x == root) {
      path_set[x] = Bitset::of(n, {root});
    } else {
      path_set[x] = path_set[parent[x]];
      path_set[x].set(x);
    }

    // Termination test: a second labeled route into x's neighborhood.
    int y = -1;
    int closing_edge = -1;
    for (const Incidence& inc : g.neighbors(x)) {
      int z = inc.to;
      if (!active[z] || z == parent[x] || !label[z]) continue;
      if (!label[z]->leq(*label[x])) continue;
      if (y == -1 || label[z]->less(*label[y]) ||
          (label[z]->same_value(*label[y], 0.0) && z < y)) {
        y = z;
        closing_edge = inc.edge;
      }
    }

    if (y != -1) {
      RootedTreeResult res;
      res.root = root;
      res.h_star = *label[x];

      // Close the cycle through the lowest common ancestor of x and y.
      std::vector<int> ax, ay;
      for (int w = x;; w = parent[w]) {
        ax.push_back(w);
        if (w == root) break;
      }
      for (int w = y;; w = parent[w]) {
        ay.push_back(w);
        if (w == root) break;
      }
      std::unordered_map<int, int> pos_in_ax;
      for (std::size_t i = 0; i < ax.size(); ++i) pos_in_ax[ax[i]] = static_cast<int>(i);
      int j = 0;
      while (pos_in_ax.find(ay[j]) == pos_in_ax.end()) ++j;
      int idx = pos_in_ax[ay[j]];

      Cycle c;
      for (int i = 0; i <= idx; ++i) {
        c.vertices.push_back(ax[i]);
        if (i < idx) c.edges.push_back(parent_edge[ax[i]]);
      }
      for (int t = j - 1; t >= 0; --t) {
        c.edges.push_back(parent_edge[ay[t]]);
        c.vertices.push_back(ay[t]);
      }
      c.edges.push_back(closing_edge);
      c.canonicalize();

      res.cycle = c;
      res.cycle_cost = f.evaluate(c.vertex_set(n));
      res.parent.assign(n, -1);
      res.in_tree.assign(n, 0);
      for (int z = 0; z < n; ++z) {
        if (!popped[z] || !label[z]->less(*label[x])) continue;
        res.in_tree[z] = 1;
        res.parent[z] = parent[z];
      }
      // The strict threshold set is empty exactly when d(root) == h*; fall
      // back to the root alone, which keeps the tree invariants (boundary
      // labels all sit at h* already) and keeps every cycle through the root
      // covered by the path family.
      if (!res.in_tree[root]) {
        res.in_tree.assign(n, 0);
        res.parent.assign(n, -1);
        res.in_tree[root] = 1;
        res.parent[root] = root;
      }
      return res;
    }

    // Relaxation; every labeled non-parent neighbor would have terminated
    // above, so only unlabeled or costlier routes remain.
    for (const Incidence& inc : g.neighbors(x)) {
      int z = inc.to;
      if (!active[z] || z == parent[x]) continue;
      Bitset px_z = path_set[x];
      px_z.set(z);
      Cost cand = f.evaluate(px_z);
      if (!label[z] || cand.less(*label[z])) {
        label[z] = cand;
        parent[z] = x;
        parent_edge[z] = inc.edge;
      }
    }
  }
}

struct TwoApproxInternal {
  Cycle best_cycle;
  Cost best_cost;
  bool found = false;
  std::vector<RootedTreeResult> trees;
};

TwoApproxInternal two_approx_masked(const Multigraph& g, const CostOracle& f,
                                    const std::vector<char>& active) {
  TwoApproxInternal out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!active[v]) continue;
    RootedTreeResult r = rooted_search(g, v, f, active);
    if (!out.found || r.cycle_cost.less(out.best_cost)) {
      out.best_cycle = r.cycle;
      out.best_cost = r.cycle_cost;
      out.found = true;
    }
    out.trees.push_back(std::move(r));
  }
  return out;
}

PathFamily path_family_masked(const Multigraph& g,
                              const std::vector<RootedTreeResult>& trees,
                              const std::vector<char>& active) {
  PathFamily fam;
  for (const RootedTreeResult& t : trees) {
    for (int y = 0; y < g.vertex_count(); ++y) {
      if (!active[y] || t.in_tree[y]) continue;
      for (const Incidence& inc : g.neighbors(y)) {
        int x = inc.to;
        if (!t.in_tree[x]) continue;
        VertexPath p;
        p.vertices = t.tree_path(x);
        p.vertices.push_back(y);
        fam.paths.push_back(std::move(p));
      }
    }
  }
  return fam;
}

struct MemoKey {
  Bitset pinned;
  int depth;
  bool operator==(const MemoKey& o) const {
    return depth == o.depth && pinned == o.pinned;
  }
};
struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    return k.pinned.hash() * 1315423911u + static_cast<std::size_t>(k.depth);
  }
};

// Recursive branching engine. Branches with identical accumulated pinned
// sets at the same remaining depth produce identical subresults, so they are
// cached; this changes query counts only, never the returned cycle.
struct FindCycleEngine {
  const Multigraph& g;
  const CostOracle& f;
  const std::vector<char>& active;
  std::unordered_map<MemoKey, Cycle, MemoKeyHash> memo;
  long long nodes = 0;

  Cycle solve(const Bitset& pinned, int depth) {
    MemoKey key{pinned, depth};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Cycle res = solve_uncached(pinned, depth);
    memo.emplace(std::move(key), res);
    return res;
  }

  Cycle solve_uncached(const Bitset& pinned, int depth) {
    ++nodes;
    std::optional<ContractedOracle> contracted;
    const CostOracle* oracle = &f;
    if (!pinned.empty()) {
      contracted.emplace(f, pinned);
      oracle = &*contracted;
    }

    TwoApproxInternal base = two_approx_masked(g, *oracle, active);
    Cycle best = base.best_cycle;
    Cost best_cost = base.best_cost;
    if (!best_cost.positive() || depth == 0) return best;

    PathFamily fam = path_family_masked(g, base.trees, active);
    std::vector<Bitset> branch_sets;
    std::unordered_set<Bitset, BitsetHash> seen;
    for (const VertexPath& p : fam.paths) {
      Bitset vs = p.vertex_set(g.vertex_count());
      if (seen.insert(vs).second) branch_sets.push_back(std::move(vs));
    }

    for (const Bitset& vs : branch_sets) {
      Cycle cand = solve(pinned | vs, depth - 1);
      Cost cand_cost = oracle->evaluate(cand.vertex_set(g.vertex_count()));
      if (cand_cost.less(best_cost)) {
        best = cand;
        best_cost = cand_cost;
      }
    }
    return best;
  }
};

}  // namespace

std::vector<int> RootedTreeResult::tree_path(int x) const {
  if (x < 0 || x >= static_cast<int>(in_tree.size()) || !in_tree[x])
    throw InternalError("tree_path on a vertex outside the tree");
  std::vector<int> rev;
  for (int w = x;; w = parent[w]) {
    rev.push_back(w);
    if (w == root) break;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

RootedTreeResult cycle_from_root(const Multigraph& g, int v,
                                 const CostOracle& f,
                                 const std::vector<char>& active) {
  if (f.ground_kind() != GroundKind::vertices ||
      f.ground_size() != g.vertex_count())
    throw InputError("oracle ground set must be the graph's vertex set");
  std::vector<char> mask = active.empty() ? all_active(g.vertex_count()) : active;
  if (v < 0 || v >= g.vertex_count() || !mask[v])
    throw InputError("root vertex is not in the searched graph");
  check_simple_restricted(g, mask);
  return rooted_search(g, v, f, mask);
}

TwoApproxResult two_approx(const Multigraph& g, const CostOracle& f) {
  if (f.ground_kind() != GroundKind::vertices ||
      f.ground_size() != g.vertex_count())
    throw InputError("oracle ground set must be the graph's vertex set");
  auto t0 = Clock::now();
  long long q0 = f.query_count();

  std::vector<char> active = two_core_mask(g);
  if (std::none_of(active.begin(), active.end(), [](char c) { return c != 0; }))
    throw NoSolutionError("graph has no cycle");
  check_simple_restricted(g, active);

  TwoApproxInternal internal = two_approx_masked(g, f, active);
  TwoApproxResult res;
  res.best.cycle = internal.best_cycle;
  res.best.cost = internal.best_cost;
  res.trees = std::move(internal.trees);
  res.active = std::move(active);
  res.best.stats.oracle_queries = f.query_count() - q0;
  res.best.stats.recursion_nodes = 1;
  res.best.stats.wall_ms = ms_since(t0);
  return res;
}

PathFamily build_path_family(const Multigraph& g,
                             const std::vector<RootedTreeResult>& trees,
                             const std::vector<char>& active) {
  std::vector<char> mask = active.empty() ? all_active(g.vertex_count()) : active;
  for (const RootedTreeResult& t : trees)
    if (static_cast<int>(t.in_tree.size()) != g.vertex_count())
      throw InputError("tree does not match the graph");
  return path_family_masked(g, trees, mask);
}

CycleResult find_cycle(const Multigraph& g, const CostOracle& f, int depth) {
  if (depth < 0) throw InputError("recursion depth must be nonnegative");
  if (f.ground_kind() != GroundKind::vertices ||
      f.ground_size() != g.vertex_count())
    throw InputError("oracle ground set must be the graph's vertex set");
  auto t0 = Clock::now();
  long long q0 = f.query_count();

  std::vector<char> active = two_core_mask(g);
  if (std::none_of(active.begin(), active.end(), [](char c) { return c != 0; }))
    throw NoSolutionError("graph has no cycle");
  check_simple_restricted(g, active);

  FindCycleEngine engine{g, f, active, {}, 0};
  Cycle best = engine.solve(Bitset(g.vertex_count()), depth);

  CycleResult res;
  res.cycle = best;
  res.cost = f.evaluate(best.vertex_set(g.vertex_count()));
  res.stats.oracle_queries = f.query_count() - q0;
  res.stats.recursion_nodes = engine.nodes;
  res.stats.wall_ms = ms_since(t0);
  return res;
}

int depth_for_epsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  int k = 0;
  while (std::ldexp(epsilon, k) < 1.0) {
    if (++k > 64) throw InputError("epsilon too small");
  }
  return k;
}

CycleResult ptas(const Multigraph& g, const CostOracle& f, double epsilon) {
  return find_cycle(g, f, depth_for_epsilon(epsilon));
}

CycleResult exact_integer(const Multigraph& g, const CostOracle& f) {
  if (!f.integer_valued())
    throw InputError("exact solving requires an integer-valued oracle");

  CycleResult first = find_cycle(g, f, 1);
  long long w = first.cost.ival();
  if (w == 0) return first;

  int k = 0;
  while ((1LL << k) < w + 1) ++k;
  CycleResult second = find_cycle(g, f, k);
  second.stats.oracle_queries += first.stats.oracle_queries;
  second.stats.recursion_nodes += first.stats.recursion_nodes;
  second.stats.wall_ms += first.stats.wall_ms;
  return second;
}

MappedOracle lift_to_subdivision(const SubdivideResult& sub,
                                 const CostOracle& edge_oracle) {
  std::vector<int> map(sub.graph.vertex_count(), -1);
  for (int v = sub.original_vertices; v < sub.graph.vertex_count(); ++v)
    map[v] = sub.edge_of_vertex(v);
  return MappedOracle(GroundKind::vertices, edge_oracle, std::move(map));
}

CycleResult edge_cycle(const Multigraph& g, const CostOracle& f,
                       const EdgeCycleOptions& opts) {
  if (f.ground_kind() != GroundKind::edges || f.ground_size() != g.edge_count())
    throw InputError("oracle ground set must be the graph's edge set");
  auto t0 = Clock::now();
  long long q0 = f.query_count();

  SubdivideResult sub = subdivide(g);
  MappedOracle lifted = lift_to_subdivision(sub, f);

  CycleResult inner = opts.mode == SolveMode::exact
                          ? exact_integer(sub.graph, lifted)
                          : ptas(sub.graph, lifted, opts.epsilon);

  // Every cycle of the subdivision alternates original and subdivision
  // vertices; rotate so it starts on an original one and read the edges off.
  const std::vector<int>& vs = inner.cycle.vertices;
  int start = -1;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (!sub.is_subdivision_vertex(vs[i])) {
      start = static_cast<int>(i);
      break;
    }
  if (start < 0 || vs.size() % 2 != 0)
    throw InternalError("subdivision cycle does not alternate");

  Cycle mapped;
  const int len = static_cast<int>(vs.size());
  for (int i = 0; i < len; i += 2) {
    int orig = vs[(start + i) % len];
    int subv = vs[(start + i + 1) % len];
    if (sub.is_subdivision_vertex(orig) || !sub.is_subdivision_vertex(subv))
      throw InternalError("subdivision cycle does not alternate");
    mapped.vertices.push_back(orig);
    mapped.edges.push_back(sub.edge_of_vertex(subv));
  }
  mapped.canonicalize();
  mapped.validate(g);

  CycleResult res;
  res.cycle = std::move(mapped);
  res.cost = f.evaluate(res.cycle.edge_set(g.edge_count()));
  res.stats.oracle_queries = f.query_count() - q0;
  res.stats.recursion_nodes = inner.stats.recursion_nodes;
  res.stats.wall_ms = ms_since(t0);
  return res;
}

void validate_rooted_tree_result(const Multigraph& g, const CostOracle& f,
                                 const RootedTreeResult& r,
                                 const std::vector<char>& active) {
  const int n = g.vertex_count();
  std::vector<char> mask = active.empty() ? all_active(n) : active;

  if (r.root < 0 || r.root >= n || !r.in_tree[r.root])
    throw InternalError("root is not in its tree");

  // Connectivity through parent pointers plus induced-tree edge count.
  int tree_size = 0;
  for (int z = 0; z < n; ++z) {
    if (!r.in_tree[z]) continue;
    ++tree_size;
    int hops = 0;
    for (int w = z; w != r.root; w = r.parent[w]) {
      if (w < 0 || !r.in_tree[w] || r.parent[w] < 0 || !r.in_tree[r.parent[w]])
        throw InternalError("tree parent chain leaves the tree");
      if (++hops > n) throw InternalError("tree parent chain has a cycle");
    }
  }
  int internal_edges = 0;
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    if (r.in_tree[u] && r.in_tree[v]) ++internal_edges;
  }
  if (internal_edges != tree_size - 1)
    throw InternalError("tree vertex set does not induce a tree");

  r.cycle.validate(g);
  Cost fresh = f.evaluate(r.cycle.vertex_set(n));
  if (!fresh.same_value(r.cycle_cost))
    throw InternalError("stored cycle cost is stale");
  double bound = 2.0 * r.h_star.value() + kCostTolerance;
  if (r.cycle_cost.value() > bound)
    throw InternalError("cycle cost exceeds twice the termination threshold");

  for (int x = 0; x < n; ++x) {
    if (!r.in_tree[x]) continue;
    Bitset px = Bitset::of(n, r.tree_path(x));
    for (const Incidence& inc : g.neighbors(x)) {
      int y = inc.to;
      if (!mask[y] || r.in_tree[y]) continue;
      Bitset pxy = px;
      pxy.set(y);
      if (f.evaluate(pxy).value() < r.h_star.value() - kCostTolerance)
        throw InternalError("boundary path is cheaper than the threshold");
    }
  }
}

}  // namespace subcycle
