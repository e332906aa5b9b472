#include "subcycle/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

namespace subcycle {

bool Multigraph::is_simple() const {
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges_) {
    if (u == v) return false;
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) return false;
  }
  return true;
}

void VertexPath::validate(const Multigraph& g) const {
  std::unordered_set<int> seen;
  for (int v : vertices) {
    if (v < 0 || v >= g.vertex_count()) throw InputError("path vertex out of range");
    if (!seen.insert(v).second) throw InputError("path repeats a vertex");
  }
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    bool adjacent = false;
    for (const Incidence& inc : g.neighbors(vertices[i]))
      if (inc.to == vertices[i + 1]) adjacent = true;
    if (!adjacent) throw InputError("consecutive path vertices not adjacent");
  }
}

void Cycle::canonicalize() {
  const int len = length();
  if (len == 0) return;
  if (static_cast<int>(edges.size()) != len)
    throw InternalError("cycle edge list length mismatch");

  if (len == 2) {
    if (vertices[0] > vertices[1]) std::swap(vertices[0], vertices[1]);
    if (edges[0] > edges[1]) std::swap(edges[0], edges[1]);
    return;
  }

  int pos = static_cast<int>(
      std::min_element(vertices.begin(), vertices.end()) - vertices.begin());
  auto at = [&](int i) { return vertices[(pos + i % len + len) % len]; };
  bool forward = at(1) < at(-1);

  std::vector<int> vs(len), es(len);
  for (int i = 0; i < len; ++i) {
    if (forward) {
      vs[i] = vertices[(pos + i) % len];
      es[i] = edges[(pos + i) % len];
    } else {
      vs[i] = vertices[(pos - i + len) % len];
      // edges[j] joins vertices[j], vertices[j+1]; reversed, the edge after
      // vs[i] is the one entering vertices[pos - i] from below.
      es[i] = edges[(pos - i - 1 + 2 * len) % len];
    }
  }
  vertices = std::move(vs);
  edges = std::move(es);
}

void Cycle::validate(const Multigraph& g) const {
  const int len = length();
  if (len < 2) throw InputError("cycle must have at least 2 vertices");
  if (static_cast<int>(edges.size()) != len)
    throw InputError("cycle edge count must equal vertex count");

  std::unordered_set<int> vseen, eseen;
  for (int v : vertices) {
    if (v < 0 || v >= g.vertex_count()) throw InputError("cycle vertex out of range");
    if (!vseen.insert(v).second) throw InputError("cycle repeats a vertex");
  }
  for (int e : edges) {
    if (e < 0 || e >= g.edge_count()) throw InputError("cycle edge out of range");
    if (!eseen.insert(e).second) throw InputError("cycle repeats an edge");
  }
  for (int i = 0; i < len; ++i) {
    int a = vertices[i], b = vertices[(i + 1) % len];
    auto [u, v] = g.endpoints(edges[i]);
    if (!((u == a && v == b) || (u == b && v == a)))
      throw InputError("cycle edge does not join its stated vertices");
  }
}

TwoCoreResult two_core(const Multigraph& g) {
  std::vector<char> alive = two_core_mask(g);

  TwoCoreResult res;
  std::vector<int> orig_to_core(g.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!alive[v]) continue;
    orig_to_core[v] = static_cast<int>(res.vertex_map.size());
    res.vertex_map.push_back(v);
  }
  res.graph = Multigraph(static_cast<int>(res.vertex_map.size()));
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    if (alive[u] && alive[v]) {
      res.graph.add_edge(orig_to_core[u], orig_to_core[v]);
      res.edge_map.push_back(e);
    }
  }
  return res;
}

std::vector<char> two_core_mask(const Multigraph& g) {
  const int n = g.vertex_count();
  std::vector<char> alive(n, 1);
  std::vector<int> deg(n, 0);
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);

  std::vector<int> stack;
  for (int v = 0; v < n; ++v)
    if (deg[v] <= 1) stack.push_back(v);

  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (const Incidence& inc : g.neighbors(v)) {
      if (!alive[inc.to]) continue;
      if (--deg[inc.to] <= 1) stack.push_back(inc.to);
    }
  }
  return alive;
}

SubdivideResult subdivide(const Multigraph& g) {
  if (g.has_loops())
    throw InputError("cannot subdivide a graph with loops: subdivide a loop twice instead");

  const int n = g.vertex_count();
  const int m = g.edge_count();
  SubdivideResult res;
  res.original_vertices = n;
  res.graph = Multigraph(n + m);
  for (int e = 0; e < m; ++e) {
    auto [u, v] = g.endpoints(e);
    res.graph.add_edge(u, n + e);
    res.graph.add_edge(n + e, v);
  }
  return res;
}

namespace {

// Depth-first enumeration of simple cycles rooted at their smallest vertex.
// Cycles are deduplicated by edge-id set (a simple cycle is determined by
// its edge set).
struct CycleEnumerator {
  const Multigraph& g;
  long long cap;
  std::vector<Cycle> out;
  std::unordered_set<Bitset, BitsetHash> seen_edge_sets;
  std::vector<char> on_path;
  std::vector<char> edge_used;
  std::vector<int> path_vertices;
  std::vector<int> path_edges;
  int root = -1;

  explicit CycleEnumerator(const Multigraph& graph, long long c)
      : g(graph), cap(c), on_path(graph.vertex_count(), 0),
        edge_used(graph.edge_count(), 0) {}

  void run() {
    for (root = 0; root < g.vertex_count(); ++root) {
      on_path[root] = 1;
      path_vertices = {root};
      path_edges.clear();
      extend(root);
      on_path[root] = 0;
    }
  }

  void extend(int v) {
    for (const Incidence& inc : g.neighbors(v)) {
      if (inc.to == v) continue;  // loops are not cycles
      if (edge_used[inc.edge]) continue;
      if (inc.to == root) {
        if (path_vertices.size() >= 2) record_cycle(inc.edge);
        continue;
      }
      if (inc.to < root || on_path[inc.to]) continue;
      on_path[inc.to] = 1;
      edge_used[inc.edge] = 1;
      path_vertices.push_back(inc.to);
      path_edges.push_back(inc.edge);
      extend(inc.to);
      path_vertices.pop_back();
      path_edges.pop_back();
      edge_used[inc.edge] = 0;
      on_path[inc.to] = 0;
    }
  }

  void record_cycle(int closing_edge) {
    Cycle c;
    c.vertices = path_vertices;
    c.edges = path_edges;
    c.edges.push_back(closing_edge);
    Bitset key = c.edge_set(g.edge_count());
    if (!seen_edge_sets.insert(key).second) return;
    if (static_cast<long long>(out.size()) >= cap)
      throw CapExceededError("too many cycles (cap " + std::to_string(cap) + ")");
    c.canonicalize();
    out.push_back(std::move(c));
  }
};

}  // namespace

std::vector<Cycle> enumerate_cycles(const Multigraph& g, long long cap) {
  CycleEnumerator en(g, cap);
  en.run();
  return en.out;
}

bool is_segment(const VertexPath& p, const Cycle& c) {
  const int pl = static_cast<int>(p.vertices.size());
  const int cl = c.length();
  if (pl == 0) return true;
  if (pl > cl) return false;

  auto matches_at = [&](int start, int dir) {
    for (int i = 0; i < pl; ++i) {
      int idx = ((start + dir * i) % cl + cl) % cl;
      if (c.vertices[idx] != p.vertices[i]) return false;
    }
    return true;
  };
  for (int start = 0; start < cl; ++start)
    if (matches_at(start, +1) || matches_at(start, -1)) return true;
  return false;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

int component_count(const Multigraph& g) {
  UnionFind uf(g.vertex_count());
  int comps = g.vertex_count();
  for (auto [u, v] : g.edges())
    if (uf.unite(u, v)) --comps;
  return comps;
}

int component_count_with_edges(const Multigraph& g, const Bitset& edge_subset) {
  UnionFind uf(g.vertex_count());
  int comps = g.vertex_count();
  edge_subset.for_each([&](int e) {
    auto [u, v] = g.endpoints(e);
    if (uf.unite(u, v)) --comps;
  });
  return comps;
}

}  // namespace subcycle
