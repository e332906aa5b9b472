#include "subcycle/adversary.hpp"

#include "doctest.h"
#include "subcycle/corpus.hpp"
#include "test_util.hpp"

using namespace subcycle;
using namespace subcycle::testutil;

namespace {

EdgeSolver exact_solver() {
  return [](const Multigraph& g, const CostOracle& f) {
    return edge_cycle(g, f, {SolveMode::exact, 0.0});
  };
}

// Answers after one query with the official optimum claim.
EdgeSolver lazy_stub(int k) {
  return [k](const Multigraph& g, const CostOracle& f) {
    f.evaluate(Bitset(g.edge_count()));
    LowerBoundGraph lb = build_lower_bound_graph(k, (g.edge_count() - 1) / k);
    CycleResult r;
    r.cycle = lb.hamiltonian_cycle(std::vector<int>(k, 0));
    r.cost = Cost::integer((1LL << (k + 1)) - 1);
    return r;
  };
}

}  // namespace

TEST_CASE("G(k,p) shape: vertices, edges, Hamiltonian cycles") {
  LowerBoundGraph g = build_lower_bound_graph(1, 2);
  CHECK(g.graph.vertex_count() == 2);
  CHECK(g.graph.edge_count() == 3);
  CHECK(g.hamiltonian_cycle_count() == 2);
  // the two Hamiltonian (length-2) cycles pair each F_1 edge with e_2
  auto cycles = enumerate_cycles(g.graph);
  int hamiltonian = 0;
  for (const Cycle& c : cycles)
    if (g.is_hamiltonian_cycle_set(c.edge_set(3))) ++hamiltonian;
  CHECK(hamiltonian == 2);
  CHECK(cycles.size() == 3);  // plus the F_1-internal pair

  LowerBoundGraph g32 = build_lower_bound_graph(3, 2);
  CHECK(g32.graph.vertex_count() == 4);
  CHECK(g32.graph.edge_count() == 7);
  CHECK(g32.hamiltonian_cycle_count() == 8);
  int count = 0;
  for (const Cycle& c : enumerate_cycles(g32.graph))
    if (g32.is_hamiltonian_cycle_set(c.edge_set(7))) ++count;
  CHECK(count == 8);

  CHECK_THROWS_AS(build_lower_bound_graph(0, 2), InputError);
}

TEST_CASE("lower-bound function values") {
  LowerBoundGraph g = build_lower_bound_graph(2, 2);
  LowerBoundF f(g);
  CHECK(f.evaluate(Bitset(5)).ival() == 0);  // 2^{k+1} - 2^{k+1}
  // any single edge: 8 - 4
  for (int e = 0; e < 5; ++e)
    CHECK(f.evaluate(Bitset::of(5, {e})).ival() == 4);
  // two edges in one class contain a cycle: 7
  CHECK(f.evaluate(Bitset::of(5, {0, 1})).ival() == 7);
  CHECK(f.evaluate(Bitset::of(5, {2, 3})).ival() == 7);
  // acyclic pair: 8 - 2
  CHECK(f.evaluate(Bitset::of(5, {0, 2})).ival() == 6);
  // any Hamiltonian cycle: 7
  CHECK(f.evaluate(g.hamiltonian_cycle_set({0, 0})).ival() == 7);
}

TEST_CASE("f and f_C differ on exactly the designated cycle") {
  LowerBoundGraph g = build_lower_bound_graph(2, 2);
  LowerBoundF f(g);
  Bitset c = g.hamiltonian_cycle_set({1, 0});
  LowerBoundFC fc(g, c);
  const int m = 5;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    Bitset x(m);
    for (int i = 0; i < m; ++i)
      if ((mask >> i) & 1u) x.set(i);
    if (x == c) {
      CHECK(fc.evaluate(x).ival() == 6);
      CHECK(f.evaluate(x).ival() == 7);
    } else {
      CHECK(fc.evaluate(x).ival() == f.evaluate(x).ival());
    }
  }
}

TEST_CASE("f is symmetric under permuting edges within a class") {
  LowerBoundGraph g = build_lower_bound_graph(2, 3);
  LowerBoundF f(g);
  Rng rng(5);
  const int m = g.graph.edge_count();
  for (int trial = 0; trial < 60; ++trial) {
    Bitset x(m);
    for (int e = 0; e < m; ++e)
      if (rng.below(2)) x.set(e);
    // permute within each class: value depends only on per-class counts
    Bitset y(m);
    for (int cls = 0; cls < 2; ++cls) {
      int count = 0;
      for (int j = 0; j < 3; ++j)
        if (x.test(cls * 3 + j)) ++count;
      int offset = rng.below(3);
      for (int j = 0; j < count; ++j) y.set(cls * 3 + (offset + j) % 3);
    }
    if (x.test(g.closing_edge())) y.set(g.closing_edge());
    CHECK(f.evaluate(x).ival() == f.evaluate(y).ival());
  }
}

TEST_CASE("designated cycles must be Hamiltonian") {
  LowerBoundGraph g = build_lower_bound_graph(2, 2);
  CHECK_THROWS_AS(LowerBoundFC(g, Bitset::of(5, {0, 1, 4})), InputError);
  CHECK_THROWS_AS(LowerBoundFC(g, Bitset::of(5, {0, 2})), InputError);
}

TEST_CASE("Lemma 4.1 verification passes for every designated cycle at (2,2)") {
  LowerBoundGraph g = build_lower_bound_graph(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Lemma41Report rep = verify_lemma_4_1(2, 2, g.hamiltonian_cycle_set({a, b}));
      CHECK(rep.pass());
    }
}

TEST_CASE("Lemma 4.1 verification passes at (3,2)") {
  LowerBoundGraph g = build_lower_bound_graph(3, 2);
  Lemma41Report rep = verify_lemma_4_1(3, 2, g.hamiltonian_cycle_set({0, 1, 0}));
  CHECK(rep.pass());
  CHECK_THROWS_AS(verify_lemma_4_1(7, 2, Bitset(15)), InputError);  // 15 > 14 edges
}

TEST_CASE("a mutated designated value breaks submodularity and is caught") {
  // f_C with f_C(C) = 2^{k+1} - 4 instead of -2 violates the incremental
  // inequality; the exhaustive checker must find a witness.
  LowerBoundGraph g = build_lower_bound_graph(2, 2);
  Bitset c = g.hamiltonian_cycle_set({0, 0});

  class MutatedFC : public CostOracle {
   public:
    MutatedFC(const LowerBoundGraph& g, Bitset cycle)
        : CostOracle(GroundKind::edges, g.graph.edge_count(), true),
          inner_(g, cycle),
          cycle_(std::move(cycle)) {}

   protected:
    Cost do_evaluate(const Bitset& x) const override {
      if (x == cycle_) return Cost::integer(4);  // should be 6
      return inner_.evaluate(x);
    }

   private:
    LowerBoundFC inner_;
    Bitset cycle_;
  } mutated(g, c);

  auto rep = verify_submodular_monotone(mutated);
  CHECK_FALSE(rep.pass());
}

TEST_CASE("exact solvers achieve the designed optima") {
  for (auto [k, p] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {2, 3}}) {
    LowerBoundGraph g = build_lower_bound_graph(k, p);
    LowerBoundF f(g);
    CycleResult rf = edge_cycle(g.graph, f, {SolveMode::exact, 0.0});
    CHECK(rf.cost.ival() == (1LL << (k + 1)) - 1);

    Bitset c = g.hamiltonian_cycle_set(std::vector<int>(k, p - 1));
    LowerBoundFC fc(g, c);
    CycleResult rc = edge_cycle(g.graph, fc, {SolveMode::exact, 0.0});
    CHECK(rc.cost.ival() == (1LL << (k + 1)) - 2);
    CHECK(rc.cycle.edge_set(g.graph.edge_count()) == c);
  }
}

TEST_CASE("run_adversary: the exact solver is forced to query every cycle") {
  AdversaryTranscript t = run_adversary(exact_solver(), 2, 3);
  CHECK(t.hamiltonian_cycle_count == 9);
  CHECK(t.distinct_cycles_queried == 9);
  CHECK(t.total_queries >= 9);
  CHECK(t.verdict == AdversaryVerdict::all_cycles_queried);
  CHECK(t.output_cycle_always_optimal);
  CHECK_FALSE(t.fooling_certificate.has_value());
}

TEST_CASE("run_adversary at (1,1): the single cycle must be queried") {
  AdversaryTranscript t = run_adversary(exact_solver(), 1, 1);
  CHECK(t.hamiltonian_cycle_count == 1);
  CHECK(t.verdict == AdversaryVerdict::all_cycles_queried);
}

TEST_CASE("run_adversary hands a lazy solver a fooling certificate") {
  AdversaryTranscript t = run_adversary(lazy_stub(2), 2, 3);
  CHECK(t.verdict == AdversaryVerdict::fooled);
  REQUIRE(t.fooling_certificate.has_value());
  LowerBoundGraph g = build_lower_bound_graph(2, 3);
  CHECK(g.is_hamiltonian_cycle_set(*t.fooling_certificate));
  CHECK_FALSE(t.output_cycle_always_optimal);

  // The certificate's f_C is consistent with every answer the stub saw:
  // it asked only about the empty set, where f and f_C agree.
  LowerBoundFC fc(g, *t.fooling_certificate);
  LowerBoundF f(g);
  Bitset empty(g.graph.edge_count());
  CHECK(fc.evaluate(empty).ival() == f.evaluate(empty).ival());
}

TEST_CASE("ptas solvers also query all cycles once epsilon is tight enough") {
  EdgeSolver tight = [](const Multigraph& g, const CostOracle& f) {
    return edge_cycle(g, f, {SolveMode::approximate, 1.0 / 16.0});
  };
  AdversaryTranscript t = run_adversary(tight, 2, 2);
  // (1 + 1/16) * 6 < 7: a correct solver must distinguish f from every f_C.
  CHECK(t.distinct_cycles_queried == t.hamiltonian_cycle_count);
}
