#include "subcycle/planar.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace subcycle {

EmbeddedMultigraph EmbeddedMultigraph::from_edge_lists(
    Multigraph g, const std::vector<std::vector<int>>& lists) {
  EmbeddedMultigraph em;
  const int n = g.vertex_count();
  const int m = g.edge_count();
  if (static_cast<int>(lists.size()) != n)
    throw InputError("rotation lists must cover every vertex");

  em.rotation.assign(n, {});
  std::vector<char> placed(2 * m, 0);
  for (int v = 0; v < n; ++v) {
    std::vector<char> seen_once(m, 0);
    for (int e : lists[v]) {
      if (e < 0 || e >= m) throw InputError("rotation refers to unknown edge");
      auto [a, b] = g.endpoints(e);
      int dart;
      if (a == b) {
        if (a != v) throw InputError("loop listed at a non-endpoint vertex");
        dart = seen_once[e] ? 2 * e + 1 : 2 * e;
        seen_once[e] = 1;
      } else if (a == v) {
        dart = 2 * e;
      } else if (b == v) {
        dart = 2 * e + 1;
      } else {
        throw InputError("edge listed at a non-endpoint vertex");
      }
      if (placed[dart]) throw InputError("edge end listed twice in rotations");
      placed[dart] = 1;
      em.rotation[v].push_back(dart);
    }
  }
  for (int d = 0; d < 2 * m; ++d)
    if (!placed[d])
      throw InputError("rotation lists miss an end of edge " + std::to_string(d / 2));
  em.graph = std::move(g);
  return em;
}

std::vector<std::vector<int>> EmbeddedMultigraph::to_edge_lists() const {
  std::vector<std::vector<int>> lists(graph.vertex_count());
  for (int v = 0; v < graph.vertex_count(); ++v)
    for (int d : rotation[v]) lists[v].push_back(dart_edge(d));
  return lists;
}

FaceStructure trace_faces(const EmbeddedMultigraph& g) {
  const int n = g.graph.vertex_count();
  const int nd = g.dart_count();
  if (static_cast<int>(g.rotation.size()) != n)
    throw InputError("rotation lists must cover every vertex");

  std::vector<int> pos(nd, -1);  // position of a dart in its tail's rotation
  for (int v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < g.rotation[v].size(); ++i) {
      int d = g.rotation[v][i];
      if (d < 0 || d >= nd || g.dart_tail(d) != v || pos[d] != -1)
        throw InputError("malformed rotation system");
      pos[d] = static_cast<int>(i);
    }
  }
  for (int d = 0; d < nd; ++d)
    if (pos[d] == -1) throw InputError("rotation system misses a dart");

  auto next_dart = [&](int h) {
    int t = g.dart_twin(h);
    int v = g.dart_tail(t);
    const auto& rot = g.rotation[v];
    return rot[(pos[t] + 1) % rot.size()];
  };

  FaceStructure fs;
  fs.face_of_dart.assign(nd, -1);
  for (int d = 0; d < nd; ++d) {
    if (fs.face_of_dart[d] != -1) continue;
    int id = fs.face_count();
    fs.faces.emplace_back();
    for (int h = d; fs.face_of_dart[h] == -1; h = next_dart(h)) {
      fs.face_of_dart[h] = id;
      fs.faces[id].push_back(h);
    }
  }

  // Per-component Euler check n - m + f = 2 (edge-free components have one
  // face that tracing cannot see).
  std::vector<int> comp(n, -1);
  int comps = 0;
  for (int v = 0; v < n; ++v) {
    if (comp[v] != -1) continue;
    std::vector<int> stack{v};
    comp[v] = comps;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const Incidence& inc : g.graph.neighbors(u))
        if (comp[inc.to] == -1) {
          comp[inc.to] = comps;
          stack.push_back(inc.to);
        }
    }
    ++comps;
  }
  std::vector<int> nv(comps, 0), me(comps, 0), nf(comps, 0);
  for (int v = 0; v < n; ++v) ++nv[comp[v]];
  for (int e = 0; e < g.graph.edge_count(); ++e)
    ++me[comp[g.graph.endpoints(e).first]];
  for (const auto& face : fs.faces) ++nf[comp[g.dart_tail(face[0])]];
  for (int c = 0; c < comps; ++c) {
    int f = me[c] == 0 ? 1 : nf[c];
    if (nv[c] - me[c] + f != 2)
      throw InputError("embedding is not planar/spherical (Euler check failed)");
  }
  return fs;
}

DualGraph build_dual(const EmbeddedMultigraph& g) {
  DualGraph dual;
  dual.primal_faces = trace_faces(g);
  const FaceStructure& fs = dual.primal_faces;

  Multigraph dg(fs.face_count());
  for (int e = 0; e < g.graph.edge_count(); ++e)
    dg.add_edge(fs.face_of_dart[2 * e], fs.face_of_dart[2 * e + 1]);

  // The face walks induce the dual rotation: crossing dual darts in walk
  // order. Primal dart 2e+s with face F contributes dual dart 2e+s, whose
  // tail is F by the edge construction above.
  dual.embedded.graph = std::move(dg);
  dual.embedded.rotation.assign(fs.face_count(), {});
  for (int fid = 0; fid < fs.face_count(); ++fid)
    for (int h : fs.faces[fid]) dual.embedded.rotation[fid].push_back(h);
  return dual;
}

MinCutResult min_cut(const EmbeddedMultigraph& g, const CostOracle& f,
                     const EdgeCycleOptions& opts) {
  const int m = g.graph.edge_count();
  if (f.ground_kind() != GroundKind::edges || f.ground_size() != m)
    throw InputError("oracle ground set must be the graph's edge set");
  if (component_count(g.graph) != 1)
    throw InputError("min_cut requires a connected graph");
  if (g.graph.vertex_count() < 2)
    throw NoSolutionError("graph has no cut");

  auto t0 = std::chrono::steady_clock::now();
  long long q0 = f.query_count();

  DualGraph dual = build_dual(g);

  // Dual loops are primal bridges: minimal cuts of size one, tried directly.
  std::optional<std::pair<Bitset, Cost>> best;
  auto consider = [&](const Bitset& cut) {
    Cost c = f.evaluate(cut);
    if (!best || c.less(best->second)) best = {cut, c};
  };
  Multigraph loop_free(dual.embedded.graph.vertex_count());
  std::vector<int> primal_of;  // loop-free dual edge -> primal edge id
  for (int e = 0; e < m; ++e) {
    auto [a, b] = dual.embedded.graph.endpoints(e);
    if (a == b) {
      consider(Bitset::of(m, {e}));
    } else {
      loop_free.add_edge(a, b);
      primal_of.push_back(e);
    }
  }

  SolveStats inner_stats;
  if (loop_free.edge_count() > 0) {
    MappedOracle dual_costs(GroundKind::edges, f, primal_of);
    try {
      CycleResult r = edge_cycle(loop_free, dual_costs, opts);
      Bitset cut(m);
      for (int de : r.cycle.edges) cut.set(primal_of[de]);
      consider(cut);
      inner_stats.recursion_nodes = r.stats.recursion_nodes;
    } catch (const NoSolutionError&) {
      // acyclic dual remainder: only bridge cuts exist
    }
  }

  if (!best) throw InternalError("connected graph with no cut candidate");

  MinCutResult res;
  res.cut_edges = best->first.to_vector();
  res.cost = best->second;
  res.stats.oracle_queries = f.query_count() - q0;
  res.stats.recursion_nodes = inner_stats.recursion_nodes;
  res.stats.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();

  Bitset keep = Bitset::full(m);
  for (int e : res.cut_edges) keep.reset(e);
  if (component_count_with_edges(g.graph, keep) < 2)
    throw InternalError("returned cut does not disconnect the graph");
  return res;
}

}  // namespace subcycle
