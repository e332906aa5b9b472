#include "subcycle/wfh.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <tuple>
#include <unordered_map>

namespace subcycle {

long long WfhInstance::input_size() const {
  long long n = 0;
  for (const auto& fam : families)
    for (const Bitset& s : fam) n += s.count();
  return n;
}

int WfhInstance::max_family_size() const {
  std::size_t d = 0;
  for (const auto& fam : families) d = std::max(d, fam.size());
  return static_cast<int>(d);
}

std::optional<WideViolation> validate_wide(const WfhInstance& inst) {
  for (std::size_t i = 0; i < inst.families.size(); ++i) {
    const auto& fam = inst.families[i];
    for (std::size_t a = 0; a < fam.size(); ++a)
      for (std::size_t b = a + 1; b < fam.size(); ++b) {
        if (fam[a] == fam[b]) continue;  // the same set listed twice
        if ((fam[a] | fam[b]).count() <= inst.k)
          return WideViolation{static_cast<int>(i), static_cast<int>(a),
                               static_cast<int>(b)};
      }
  }
  return std::nullopt;
}

namespace {

void check_instance(const WfhInstance& inst) {
  if (inst.k < 0) throw InputError("budget k must be nonnegative");
  if (inst.universe < 0) throw InputError("universe size must be nonnegative");
  for (const auto& fam : inst.families)
    for (const Bitset& s : fam)
      if (s.universe_size() != inst.universe)
        throw InputError("family set universe mismatch");
}

void require_wide(const WfhInstance& inst) {
  if (auto v = validate_wide(inst))
    throw InputError("instance is not k-wide (family " +
                     std::to_string(v->family) + ", sets " +
                     std::to_string(v->first_set) + " and " +
                     std::to_string(v->second_set) + ")");
}

bool any_empty_family(const WfhInstance& inst) {
  for (const auto& fam : inst.families)
    if (fam.empty()) return true;
  return false;
}

}  // namespace

std::optional<WfhSolution> wfh_brute_force(const WfhInstance& inst) {
  check_instance(inst);
  if (inst.universe > 20)
    throw InputError("brute force refuses universes larger than 20");
  if (any_empty_family(inst)) return std::nullopt;

  struct Tag {
    std::uint32_t prev;
    int set_index;
  };
  std::unordered_map<std::uint32_t, Tag> layer;
  layer[0] = {0, -1};
  std::vector<std::unordered_map<std::uint32_t, Tag>> history;

  for (const auto& fam : inst.families) {
    std::unordered_map<std::uint32_t, Tag> next;
    for (const auto& [mask, tag] : layer) {
      for (std::size_t si = 0; si < fam.size(); ++si) {
        std::uint32_t u = mask;
        fam[si].for_each([&](int e) { u |= std::uint32_t{1} << e; });
        if (std::popcount(u) > inst.k) continue;
        next.emplace(u, Tag{mask, static_cast<int>(si)});
      }
    }
    history.push_back(layer);
    layer = std::move(next);
    if (layer.empty()) return std::nullopt;
  }

  // Reconstruct from the smallest achievable final union (deterministic).
  std::uint32_t best = 0;
  bool first = true;
  for (const auto& [mask, tag] : layer) {
    if (first || std::popcount(mask) < std::popcount(best) ||
        (std::popcount(mask) == std::popcount(best) && mask < best)) {
      best = mask;
      first = false;
    }
  }

  WfhSolution sol;
  sol.chosen.assign(inst.families.size(), -1);
  std::uint32_t cur = best;
  for (int i = static_cast<int>(inst.families.size()) - 1; i >= 0; --i) {
    const Tag& tag = (i + 1 == static_cast<int>(inst.families.size()))
                         ? layer.at(cur)
                         : history[i + 1].at(cur);
    sol.chosen[i] = tag.set_index;
    cur = tag.prev;
  }
  sol.union_set = Bitset(inst.universe);
  for (std::size_t i = 0; i < inst.families.size(); ++i)
    sol.union_set |= inst.families[i][sol.chosen[i]];
  return sol;
}

namespace {

struct FptSearch {
  const WfhInstance& inst;
  const std::vector<std::vector<int>>& surviving;  // set indices per family
  int skip_family;
  FptStats* stats;
  std::vector<int> chosen;

  bool run(Bitset x, int family) {
    const int m = static_cast<int>(inst.families.size());
    if (family == m) return true;
    if (family == skip_family) return run(std::move(x), family + 1);
    if (stats) ++stats->branch_nodes;

    const auto& fam = inst.families[family];
    // Greedy: a set already inside the accumulated union is free.
    for (int si : surviving[family]) {
      if (fam[si].is_subset_of(x)) {
        chosen[family] = si;
        return run(std::move(x), family + 1);
      }
    }
    for (int si : surviving[family]) {
      Bitset u = x | fam[si];
      if (u.count() > inst.k) continue;
      chosen[family] = si;
      if (run(std::move(u), family + 1)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<WfhSolution> wfh_fpt_solve(const WfhInstance& inst,
                                         FptStats* stats) {
  check_instance(inst);
  require_wide(inst);
  const int m = static_cast<int>(inst.families.size());
  if (m == 0)
    return WfhSolution{{}, Bitset(inst.universe)};
  if (any_empty_family(inst)) return std::nullopt;

  // Candidate largest sets, decreasing size, ties by (family, set index).
  struct Cand {
    int size, family, set;
  };
  std::vector<Cand> candidates;
  for (int i = 0; i < m; ++i)
    for (std::size_t si = 0; si < inst.families[i].size(); ++si) {
      int sz = inst.families[i][si].count();
      if (sz <= inst.k)
        candidates.push_back({sz, i, static_cast<int>(si)});
    }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Cand& a, const Cand& b) { return a.size > b.size; });

  for (const Cand& cand : candidates) {
    if (stats) ++stats->candidates;
    const Bitset& x0 = inst.families[cand.family][cand.set];

    std::vector<std::vector<int>> surviving(m);
    bool feasible = true;
    for (int i = 0; i < m && feasible; ++i) {
      if (i == cand.family) continue;
      for (std::size_t si = 0; si < inst.families[i].size(); ++si) {
        const Bitset& a = inst.families[i][si];
        if (a.count() > cand.size || (a | x0).count() > inst.k) continue;
        surviving[i].push_back(static_cast<int>(si));
      }
      if (surviving[i].empty()) feasible = false;
    }
    if (!feasible) continue;

    FptSearch search{inst, surviving, cand.family, stats, std::vector<int>(m, -1)};
    search.chosen[cand.family] = cand.set;
    if (search.run(x0, 0)) {
      WfhSolution sol;
      sol.chosen = search.chosen;
      sol.union_set = Bitset(inst.universe);
      for (int i = 0; i < m; ++i) sol.union_set |= inst.families[i][sol.chosen[i]];
      return sol;
    }
  }
  return std::nullopt;
}

long long default_repetitions(int k, int d) {
  if (k <= 0 || d <= 0) return 1;
  int log2k = 0;
  while ((1 << log2k) < std::max(k, 2)) ++log2k;
  long long reps = 2LL * k;
  for (int i = 0; i < 1 + log2k; ++i) {
    if (reps > 4000000000LL) break;  // plenty; avoid overflow on odd inputs
    reps *= d;
  }
  return std::max<long long>(reps, 1);
}

namespace {

std::uint64_t mix_seed(std::uint64_t root, std::uint64_t trial) {
  // splitmix64 step over the pair, for independent per-trial streams.
  std::uint64_t z = root + 0x9e3779b97f4a7c15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::optional<WfhSolution> wfh_randomized_trial(const WfhInstance& inst,
                                                std::uint64_t trial_seed) {
  std::mt19937_64 rng(trial_seed);
  const int m = static_cast<int>(inst.families.size());
  const int d = inst.max_family_size();

  WfhSolution sol;
  sol.chosen.assign(m, -1);
  Bitset x(inst.universe);

  for (int i = 0; i < m; ++i) {
    const auto& fam = inst.families[i];

    int greedy = -1;
    for (std::size_t si = 0; si < fam.size(); ++si)
      if (fam[si].is_subset_of(x)) {
        greedy = static_cast<int>(si);
        break;
      }
    if (greedy >= 0) {
      sol.chosen[i] = greedy;
      continue;
    }

    const int b = inst.k - x.count();
    if (b <= 0) return std::nullopt;

    // Light set: increment at most b/2. At most one exists in a wide family.
    int light = -1;
    std::vector<std::pair<int, int>> heavy;  // (set index, increment)
    for (std::size_t si = 0; si < fam.size(); ++si) {
      int inc = (x | fam[si]).count() - x.count();
      if (inc > b) continue;  // cannot fit the remaining budget
      if (2 * inc <= b) {
        if (light != -1)
          throw InputError("two light sets in one family: instance is not k-wide");
        light = static_cast<int>(si);
      } else {
        heavy.emplace_back(static_cast<int>(si), inc);
      }
    }

    double c = light >= 0
                   ? static_cast<double>((x | fam[light]).count() - x.count())
                   : static_cast<double>(b) / 2.0;
    double r = next_unit(rng);
    double acc = 0.0;
    int picked = -1;
    if (light >= 0) {
      acc = (static_cast<double>(b) - c) / static_cast<double>(b);
      if (r < acc) picked = light;
    }
    if (picked < 0) {
      const double per_heavy = c / (static_cast<double>(b) * d);
      for (const auto& [si, inc] : heavy) {
        acc += per_heavy;
        if (r < acc) {
          picked = si;
          break;
        }
      }
    }
    if (picked < 0) return std::nullopt;  // leftover mass: failed trial

    sol.chosen[i] = picked;
    x |= fam[picked];
  }

  sol.union_set = std::move(x);
  return sol;
}

RandomizedOutcome wfh_randomized_solve(const WfhInstance& inst,
                                       const RandomizedOptions& opts) {
  check_instance(inst);
  require_wide(inst);
  RandomizedOutcome out;
  if (inst.families.empty()) {
    out.solution = WfhSolution{{}, Bitset(inst.universe)};
    return out;
  }
  if (any_empty_family(inst)) return out;

  out.trials_available =
      opts.repetitions > 0
          ? opts.repetitions
          : default_repetitions(inst.k, inst.max_family_size());
  for (long long t = 0; t < out.trials_available; ++t) {
    ++out.trials_run;
    if (auto sol = wfh_randomized_trial(inst, mix_seed(opts.seed, t))) {
      out.solution = std::move(sol);
      break;
    }
  }
  return out;
}

LayeredHedgeGraph wfh_to_hedge_cycle(const WfhInstance& inst) {
  check_instance(inst);
  const int m = static_cast<int>(inst.families.size());
  if (m == 0) throw InputError("reduction needs at least one family");
  for (const auto& fam : inst.families)
    if (fam.empty()) throw InputError("reduction needs nonempty families");

  LayeredHedgeGraph out;
  out.k = inst.k + 1;
  const int spine_color = inst.universe;

  std::vector<int> colors(m + 1, spine_color);
  out.spine.resize(m + 1);
  for (int i = 0; i <= m; ++i) out.spine[i] = i;

  auto add_colored_vertex = [&](int color) {
    // Rebuild-free growth: vertices are appended, edges added afterwards.
    colors.push_back(color);
    return static_cast<int>(colors.size()) - 1;
  };

  std::vector<std::pair<int, int>> pending_edges;
  for (int i = 0; i < m; ++i) {
    for (const Bitset& s : inst.families[i]) {
      std::vector<int> elems = s.to_vector();
      if (elems.empty()) elems.push_back(-1);  // one spine-colored vertex
      int prev = i;
      for (int e : elems) {
        int w = add_colored_vertex(e < 0 ? spine_color : e);
        pending_edges.emplace_back(prev, w);
        prev = w;
      }
      pending_edges.emplace_back(prev, i + 1);
    }
  }

  Multigraph full(static_cast<int>(colors.size()));
  for (auto [a, b] : pending_edges) full.add_edge(a, b);
  full.add_edge(0, m);

  out.graph = std::move(full);
  out.colors = std::move(colors);
  return out;
}

namespace {

struct LayeredDecomposition {
  // bundle[i] = paths between spine i and i+1, each as internal vertices in
  // walk order (spine endpoints excluded)
  std::vector<std::vector<std::vector<int>>> bundles;
  int closing_edge = -1;
};

LayeredDecomposition decompose_layered(const LayeredHedgeGraph& lg) {
  const Multigraph& g = lg.graph;
  const int n = g.vertex_count();
  const int m = static_cast<int>(lg.spine.size()) - 1;
  if (m < 1) throw InputError("layered graph needs at least two spine vertices");
  if (static_cast<int>(lg.colors.size()) != n)
    throw InputError("color list must cover every vertex");

  std::vector<int> spine_index(n, -1);
  for (int i = 0; i <= m; ++i) {
    int v = lg.spine[i];
    if (v < 0 || v >= n || spine_index[v] != -1)
      throw InputError("spine vertices must be distinct graph vertices");
    spine_index[v] = i;
  }

  LayeredDecomposition dec;
  dec.bundles.resize(m);
  std::vector<char> edge_used(g.edge_count(), 0);
  std::vector<char> vertex_used(n, 0);

  for (int i = 0; i < m; ++i) {
    int v = lg.spine[i];
    for (const Incidence& inc : g.neighbors(v)) {
      if (edge_used[inc.edge]) continue;
      if (spine_index[inc.to] != -1) continue;  // closing edge handled below
      // Walk the internal degree-2 chain to the next spine vertex.
      std::vector<int> internal;
      edge_used[inc.edge] = 1;
      int cur = inc.to;
      while (spine_index[cur] == -1) {
        if (vertex_used[cur] || g.degree(cur) != 2)
          throw InputError("input not of the layered shape: bad internal vertex");
        vertex_used[cur] = 1;
        internal.push_back(cur);
        int nxt = -1;
        for (const Incidence& step : g.neighbors(cur)) {
          if (edge_used[step.edge]) continue;
          edge_used[step.edge] = 1;
          nxt = step.to;
          break;
        }
        if (nxt == -1) throw InputError("input not of the layered shape: dead end");
        cur = nxt;
      }
      if (spine_index[cur] != i + 1)
        throw InputError("input not of the layered shape: path skips a layer");
      if (internal.empty())
        throw InputError("input not of the layered shape: path without internal vertex");
      dec.bundles[i].push_back(std::move(internal));
    }
  }

  // Exactly one leftover edge: v_0 v_m.
  for (int e = 0; e < g.edge_count(); ++e) {
    if (edge_used[e]) continue;
    auto [a, b] = g.endpoints(e);
    bool closing = (a == lg.spine[0] && b == lg.spine[m]) ||
                   (b == lg.spine[0] && a == lg.spine[m]);
    if (!closing || dec.closing_edge != -1)
      throw InputError("input not of the layered shape: unexpected edge");
    dec.closing_edge = e;
  }
  if (dec.closing_edge == -1 && m >= 1)
    throw InputError("input not of the layered shape: missing closing edge");
  for (int i = 0; i < m; ++i)
    if (dec.bundles[i].empty())
      throw InputError("input not of the layered shape: empty bundle");
  return dec;
}

}  // namespace

HedgeCycleAnswer hedge_cycle_to_wfh(const LayeredHedgeGraph& lg) {
  LayeredDecomposition dec = decompose_layered(lg);
  const int m = static_cast<int>(dec.bundles.size());

  int color_universe = 0;
  for (int c : lg.colors) {
    if (c < 0) throw InputError("colors must be nonnegative");
    color_universe = std::max(color_universe, c + 1);
  }

  auto path_colors = [&](int bundle, int path) {
    Bitset s(color_universe);
    s.set(lg.colors[lg.spine[bundle]]);
    s.set(lg.colors[lg.spine[bundle + 1]]);
    for (int v : dec.bundles[bundle][path]) s.set(lg.colors[v]);
    return s;
  };

  HedgeCycleAnswer ans;
  // Route (i): cycles made of two paths within one bundle.
  for (int i = 0; i < m; ++i) {
    const auto& bundle = dec.bundles[i];
    for (std::size_t a = 0; a < bundle.size(); ++a)
      for (std::size_t b = a + 1; b < bundle.size(); ++b) {
        if ((path_colors(i, static_cast<int>(a)) |
             path_colors(i, static_cast<int>(b)))
                .count() <= lg.k) {
          ans.yes = true;
          ans.bundle = i;
          ans.bundle_pair = {static_cast<int>(a), static_cast<int>(b)};
          return ans;
        }
      }
  }

  // Route (ii): the residual families are k-wide now; any full cycle uses one
  // path per bundle plus the closing edge.
  WfhInstance inst;
  inst.k = lg.k;
  inst.universe = color_universe;
  inst.families.resize(m);
  for (int i = 0; i < m; ++i)
    for (std::size_t pi = 0; pi < dec.bundles[i].size(); ++pi)
      inst.families[i].push_back(path_colors(i, static_cast<int>(pi)));

  if (validate_wide(inst))
    throw InternalError("residual families not wide despite no cheap two-path cycle");
  ans.wfh_solution = wfh_fpt_solve(inst);
  ans.yes = ans.wfh_solution.has_value();
  return ans;
}

}  // namespace subcycle
