#include "subcycle/adversary.hpp"

#include <cmath>
#include <unordered_set>

namespace subcycle {

namespace {

void check_kp(int k, int p) {
  if (k < 1 || p < 1) throw InputError("lower-bound construction needs k >= 1 and p >= 1");
  if (k > 61) throw InputError("k too large for exact 64-bit values (k <= 61)");
}

// Shared value rule for f and f_C away from the designated cycle.
Cost base_value(int k, int p, const Bitset& x) {
  const int size = x.count();
  bool contains_cycle = size >= k + 1;
  if (!contains_cycle) {
    std::vector<int> class_count(k, 0);
    x.for_each([&](int e) {
      if (e < k * p && ++class_count[e / p] >= 2) contains_cycle = true;
    });
  }
  const long long top = 1LL << (k + 1);
  if (contains_cycle) return Cost::integer(top - 1);
  return Cost::integer(top - (1LL << (k + 1 - size)));
}

}  // namespace

bool LowerBoundGraph::is_hamiltonian_cycle_set(const Bitset& x) const {
  if (x.count() != k + 1 || !x.test(closing_edge())) return false;
  std::vector<int> class_count(k, 0);
  bool ok = true;
  x.for_each([&](int e) {
    if (e < k * p && ++class_count[e / p] > 1) ok = false;
  });
  for (int i = 0; i < k && ok; ++i) ok = class_count[i] == 1;
  return ok;
}

Bitset LowerBoundGraph::hamiltonian_cycle_set(const std::vector<int>& choice) const {
  if (static_cast<int>(choice.size()) != k)
    throw InputError("need one edge choice per parallel class");
  Bitset b(graph.edge_count());
  for (int i = 0; i < k; ++i) {
    if (choice[i] < 0 || choice[i] >= p) throw InputError("edge choice out of range");
    b.set(i * p + choice[i]);
  }
  b.set(closing_edge());
  return b;
}

Cycle LowerBoundGraph::hamiltonian_cycle(const std::vector<int>& choice) const {
  Cycle c;
  for (int i = 0; i <= k; ++i) c.vertices.push_back(i);
  for (int i = 0; i < k; ++i) c.edges.push_back(i * p + choice[i]);
  c.edges.push_back(closing_edge());
  c.canonicalize();
  return c;
}

long long LowerBoundGraph::hamiltonian_cycle_count() const {
  long long count = 1;
  for (int i = 0; i < k; ++i) {
    if (count > 2000000000000000000LL / p)
      throw InputError("p^k overflows the audit counter");
    count *= p;
  }
  return count;
}

LowerBoundGraph build_lower_bound_graph(int k, int p) {
  check_kp(k, p);
  LowerBoundGraph g;
  g.k = k;
  g.p = p;
  g.graph = Multigraph(k + 1);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < p; ++j) g.graph.add_edge(i, i + 1);
  g.graph.add_edge(0, k);
  return g;
}

LowerBoundF::LowerBoundF(const LowerBoundGraph& g)
    : CostOracle(GroundKind::edges, g.graph.edge_count(), true),
      k_(g.k),
      p_(g.p) {}

Cost LowerBoundF::do_evaluate(const Bitset& x) const {
  return base_value(k_, p_, x);
}

LowerBoundFC::LowerBoundFC(const LowerBoundGraph& g, Bitset designated_cycle)
    : CostOracle(GroundKind::edges, g.graph.edge_count(), true),
      k_(g.k),
      p_(g.p),
      cycle_(std::move(designated_cycle)) {
  if (!g.is_hamiltonian_cycle_set(cycle_))
    throw InputError("designated set is not a Hamiltonian cycle of G(k,p)");
}

Cost LowerBoundFC::do_evaluate(const Bitset& x) const {
  if (x == cycle_) return Cost::integer((1LL << (k_ + 1)) - 2);
  return base_value(k_, p_, x);
}

namespace {

// Answers as f; records exact-equality hits on Hamiltonian cycle sets.
class TranscriptOracle : public CostOracle {
 public:
  explicit TranscriptOracle(const LowerBoundGraph& g)
      : CostOracle(GroundKind::edges, g.graph.edge_count(), true),
        g_(&g),
        f_(g) {}

  const std::unordered_set<Bitset, BitsetHash>& cycles_queried() const {
    return cycles_queried_;
  }

 protected:
  Cost do_evaluate(const Bitset& x) const override {
    if (g_->is_hamiltonian_cycle_set(x)) cycles_queried_.insert(x);
    return f_.evaluate(x);
  }

 private:
  const LowerBoundGraph* g_;
  LowerBoundF f_;
  mutable std::unordered_set<Bitset, BitsetHash> cycles_queried_;
};

// Lexicographic iteration over per-class edge choices.
bool next_choice(std::vector<int>& choice, int p) {
  for (int i = static_cast<int>(choice.size()) - 1; i >= 0; --i) {
    if (++choice[i] < p) return true;
    choice[i] = 0;
  }
  return false;
}

}  // namespace

AdversaryTranscript run_adversary(const EdgeSolver& solver, int k, int p) {
  LowerBoundGraph g = build_lower_bound_graph(k, p);
  TranscriptOracle oracle(g);

  CycleResult result = solver(g.graph, oracle);

  AdversaryTranscript t;
  t.k = k;
  t.p = p;
  t.hamiltonian_cycle_count = g.hamiltonian_cycle_count();
  t.total_queries = oracle.query_count();
  t.distinct_cycles_queried =
      static_cast<long long>(oracle.cycles_queried().size());
  t.claimed_cost = result.cost;
  t.output_cycle = result.cycle;

  const bool all = t.distinct_cycles_queried == t.hamiltonian_cycle_count;
  const Cost opt_f = Cost::integer((1LL << (k + 1)) - 1);

  std::optional<Bitset> unqueried;
  bool unique_unqueried = false;
  if (!all) {
    std::vector<int> choice(k, 0);
    long long missing = 0;
    do {
      Bitset c = g.hamiltonian_cycle_set(choice);
      if (oracle.cycles_queried().count(c) == 0) {
        if (!unqueried) unqueried = c;
        ++missing;
      }
    } while (next_choice(choice, p));
    unique_unqueried = missing == 1;
  }

  if (all) {
    t.verdict = AdversaryVerdict::all_cycles_queried;
  } else if (t.claimed_cost.same_value(opt_f)) {
    t.verdict = AdversaryVerdict::fooled;
    t.fooling_certificate = unqueried;
  } else {
    t.verdict = AdversaryVerdict::wrong_claim;
    t.fooling_certificate = unqueried;
  }

  // Output-cycle scoring: under f every cycle of G(k,p) is optimal, while
  // under a consistent f_C only C is; so the output is optimal under every
  // consistent function iff it is a real cycle and no cycle other than the
  // output itself went unqueried.
  bool valid_cycle = true;
  try {
    result.cycle.validate(g.graph);
  } catch (const InputError&) {
    valid_cycle = false;
  }
  if (valid_cycle) {
    if (all) {
      t.output_cycle_always_optimal = true;
    } else if (unique_unqueried) {
      Bitset out_edges = result.cycle.edge_set(g.graph.edge_count());
      t.output_cycle_always_optimal = out_edges == *unqueried;
    }
  }
  return t;
}

Lemma41Report verify_lemma_4_1(int k, int p, const Bitset& designated_cycle) {
  check_kp(k, p);
  if (p * k + 1 > 14)
    throw InputError("exhaustive Lemma 4.1 check refuses more than 14 edges");
  LowerBoundGraph g = build_lower_bound_graph(k, p);
  LowerBoundF f(g);
  LowerBoundFC fc(g, designated_cycle);
  Lemma41Report rep;
  rep.f_report = verify_submodular_monotone(f);
  rep.fc_report = verify_submodular_monotone(fc);
  return rep;
}

}  // namespace subcycle
