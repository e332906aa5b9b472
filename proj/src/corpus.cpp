#include "subcycle/corpus.hpp"

#include <algorithm>
#include <set>

#include "subcycle/io.hpp"

namespace subcycle {

std::uint64_t Rng::next() {
  // splitmix64: small, fully specified, platform-independent.
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

int Rng::below(int bound) {
  if (bound <= 0) throw InternalError("Rng::below needs a positive bound");
  return static_cast<int>(next() % static_cast<std::uint64_t>(bound));
}

int Rng::between(int lo, int hi) { return lo + below(hi - lo + 1); }

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  Rng r(root ^ (0xabcdef1234567890ull + index * 0x100000001b3ull));
  return r.next();
}

Multigraph random_simple_graph_with_cycle(std::uint64_t seed, int n) {
  if (n < 3) throw InputError("need at least 3 vertices for a simple cycle");
  Rng rng(seed);
  const int max_m = n * (n - 1) / 2;
  const int m = std::min(max_m, rng.between(n, n + 1 + n / 2));

  std::vector<std::pair<int, int>> all_pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all_pairs.emplace_back(u, v);
  // Partial Fisher-Yates for the first m pairs.
  for (int i = 0; i < m; ++i) {
    int j = i + rng.below(static_cast<int>(all_pairs.size()) - i);
    std::swap(all_pairs[i], all_pairs[j]);
  }
  all_pairs.resize(m);
  std::sort(all_pairs.begin(), all_pairs.end());

  Multigraph g(n);
  for (auto [u, v] : all_pairs) g.add_edge(u, v);
  return g;
}

std::unique_ptr<CostOracle> random_oracle(std::uint64_t seed, OracleFlavor flavor,
                                          GroundKind kind, int ground_size) {
  Rng rng(seed);
  switch (flavor) {
    case OracleFlavor::modular_int: {
      std::vector<double> w(ground_size);
      for (double& x : w) x = rng.below(8);
      return std::make_unique<ModularOracle>(kind, std::move(w));
    }
    case OracleFlavor::modular_real: {
      std::vector<double> w(ground_size);
      for (double& x : w) x = rng.unit() * 4.0 + (rng.below(4) == 0 ? 0.0 : 0.25);
      return std::make_unique<ModularOracle>(kind, std::move(w));
    }
    case OracleFlavor::coverage: {
      int colors = rng.between(1, std::max(1, ground_size));
      std::vector<int> c(ground_size);
      for (int& x : c) x = rng.below(colors);
      return std::make_unique<CoverageOracle>(kind, std::move(c));
    }
    case OracleFlavor::graphic_rank: {
      // Auxiliary host graph whose edges are the ground elements.
      int aux_n = rng.between(2, std::max(2, ground_size));
      Multigraph aux(aux_n);
      for (int e = 0; e < ground_size; ++e) {
        int u = rng.below(aux_n);
        int v = rng.below(aux_n);
        if (u == v) v = (v + 1) % aux_n;
        aux.add_edge(u, v);
      }
      return std::make_unique<GraphicMatroidRankOracle>(std::move(aux), kind);
    }
    case OracleFlavor::partition_matroid: {
      std::vector<int> perm(ground_size);
      for (int i = 0; i < ground_size; ++i) perm[i] = i;
      for (int i = ground_size - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.below(i + 1)]);
      std::vector<PartitionMatroidRankOracle::Block> blocks;
      int at = 0;
      while (at < ground_size) {
        int len = std::min(ground_size - at, rng.between(1, 3));
        PartitionMatroidRankOracle::Block b;
        b.capacity = rng.between(0, len);
        for (int i = 0; i < len; ++i) b.elements.push_back(perm[at + i]);
        blocks.push_back(std::move(b));
        at += len;
      }
      return std::make_unique<PartitionMatroidRankOracle>(kind, ground_size,
                                                          std::move(blocks));
    }
  }
  throw InternalError("unhandled oracle flavor");
}

namespace {

// Grows a connected spherical embedding by operations that provably keep the
// Euler invariant: an edge routed inside one face (between any two passages
// of its walk, loops included) and a pendant edge hanging into a face.
struct EmbeddingBuilder {
  Multigraph graph{2};
  std::vector<std::vector<int>> rotation;

  EmbeddingBuilder() {
    graph.add_edge(0, 1);
    rotation = {{0}, {1}};
  }

  int dart_tail(int h) const {
    auto [u, v] = graph.endpoints(h / 2);
    return (h & 1) ? v : u;
  }

  EmbeddedMultigraph snapshot() const { return {graph, rotation}; }

  std::vector<std::vector<int>> faces() const {
    return trace_faces(snapshot()).faces;
  }

  void insert_before(int dart, int anchor) {
    auto& rot = rotation[dart_tail(anchor)];
    rot.insert(std::find(rot.begin(), rot.end(), anchor), dart);
  }

  // New edge between the tails of two passages of one face walk. With
  // h1 == h2 this adds an empty loop; with equal tails, a loop around part
  // of the face.
  void add_edge_in_face(int h1, int h2) {
    int x = dart_tail(h1), y = dart_tail(h2);
    int e = graph.add_edge(x, y);
    insert_before(2 * e, h1);
    insert_before(2 * e + 1, h2);
  }

  // New degree-1 vertex hanging into the face at passage h.
  void add_pendant(int h) {
    int v = dart_tail(h);
    int w = graph.vertex_count();
    Multigraph bigger(w + 1);
    for (auto [a, b] : graph.edges()) bigger.add_edge(a, b);
    graph = std::move(bigger);
    int e = graph.add_edge(v, w);
    insert_before(2 * e, h);
    rotation.push_back({2 * e + 1});
  }
};

}  // namespace

EmbeddedMultigraph random_embedded_planar(std::uint64_t seed, int max_vertices) {
  if (max_vertices < 2) throw InputError("need at least 2 vertices");
  Rng rng(seed);
  EmbeddingBuilder b;

  const int ops = rng.between(2, 3 + 2 * max_vertices);
  for (int i = 0; i < ops; ++i) {
    auto faces = b.faces();
    const auto& face = faces[rng.below(static_cast<int>(faces.size()))];
    int roll = rng.below(10);
    if (roll < 7 || b.graph.vertex_count() >= max_vertices) {
      int h1 = face[rng.below(static_cast<int>(face.size()))];
      int h2 = face[rng.below(static_cast<int>(face.size()))];
      b.add_edge_in_face(h1, h2);
    } else {
      b.add_pendant(face[rng.below(static_cast<int>(face.size()))]);
    }
  }
  EmbeddedMultigraph out = b.snapshot();
  trace_faces(out);  // builder ops keep this valid; fail loudly if not
  return out;
}

WfhInstance random_wide_instance(std::uint64_t seed,
                                 const WideInstanceParams& params) {
  if (params.max_input_size > 0) {
    // Rejection-sample against the N budget, shrinking the family count if
    // the budget proves hard to hit.
    WideInstanceParams inner = params;
    inner.max_input_size = 0;
    for (int attempt = 0;; ++attempt) {
      WfhInstance inst =
          random_wide_instance(derive_seed(seed, 7000 + attempt), inner);
      if (inst.input_size() <= params.max_input_size) return inst;
      if (attempt % 20 == 19 && inner.max_families > 1) --inner.max_families;
    }
  }
  Rng rng(seed);
  WfhInstance inst;
  inst.k = rng.between(params.min_k, params.max_k);
  inst.universe =
      rng.between(std::max(params.min_universe, std::max(2, inst.k)),
                  std::max(params.max_universe,
                           std::max(params.min_universe, std::max(2, inst.k))));
  const int m = rng.between(params.min_families, params.max_families);

  Bitset planted(inst.universe);
  if (params.plant_solution) {
    int cap = params.plant_slack ? std::max(1, inst.k - 1) : inst.k;
    int size = rng.between(1, cap);
    while (planted.count() < size) planted.set(rng.below(inst.universe));
  }

  auto random_set = [&](int max_size) {
    Bitset s(inst.universe);
    int size = rng.between(std::min(params.min_set_size, max_size), max_size);
    for (int t = 0; t < size; ++t) s.set(rng.below(inst.universe));
    return s;
  };
  auto random_subset_of = [&](const Bitset& sup) {
    std::vector<int> elems = sup.to_vector();
    Bitset s(inst.universe);
    for (int e : elems)
      if (rng.below(2)) s.set(e);
    return s;
  };

  for (int i = 0; i < m; ++i) {
    const int want = rng.between(
        std::min(params.min_family_size, params.max_family_size),
        params.max_family_size);
    // Rejection sampling: draw candidate sets, keep those that stay k-wide
    // against everything already in the family.
    std::vector<Bitset> fam;
    int planted_at = params.plant_solution ? rng.below(want) : -1;
    for (int attempts = 0; static_cast<int>(fam.size()) < want && attempts < 200;
         ++attempts) {
      Bitset cand = (static_cast<int>(fam.size()) == planted_at)
                        ? random_subset_of(planted)
                        : random_set(std::min(params.max_set_size, inst.k + 1));
      bool ok = true;
      for (const Bitset& prev : fam) {
        if (prev == cand || (prev | cand).count() <= inst.k) {
          ok = false;
          break;
        }
      }
      if (ok) fam.push_back(std::move(cand));
      else if (static_cast<int>(fam.size()) == planted_at)
        planted_at = -2;  // planted set clashed; give up planting here
    }
    if (fam.empty()) fam.push_back(random_set(std::min(params.max_set_size, inst.k + 1)));
    inst.families.push_back(std::move(fam));
  }
  return inst;
}

std::string corpus_digest(std::uint64_t seed) {
  std::string blob;
  for (int i = 0; i < 4; ++i) {
    Multigraph g = random_simple_graph_with_cycle(derive_seed(seed, i), 6 + i);
    blob += serialize_graph({g, std::nullopt});
  }
  for (int i = 0; i < 4; ++i) {
    EmbeddedMultigraph em = random_embedded_planar(derive_seed(seed, 100 + i), 7);
    blob += serialize_graph({em.graph, em.to_edge_lists()});
  }
  for (int i = 0; i < 4; ++i) {
    WideInstanceParams p;
    p.plant_solution = (i % 2 == 0);
    blob += serialize_wfh(random_wide_instance(derive_seed(seed, 200 + i), p));
  }
  return fnv1a_hex(blob);
}

}  // namespace subcycle
