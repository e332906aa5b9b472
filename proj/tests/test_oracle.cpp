#include "subcycle/oracle.hpp"

#include "doctest.h"
#include "subcycle/adversary.hpp"
#include "subcycle/corpus.hpp"
#include "test_util.hpp"

using namespace subcycle;
using namespace subcycle::testutil;

namespace {

// Deliberately supermodular: f(X) = |X|^2.
class SquareOracle : public CostOracle {
 public:
  explicit SquareOracle(int n) : CostOracle(GroundKind::vertices, n, true) {}

 protected:
  Cost do_evaluate(const Bitset& x) const override {
    long long c = x.count();
    return Cost::integer(c * c);
  }
};

}  // namespace

TEST_CASE("query accounting: one increment per evaluate") {
  ModularOracle f(GroundKind::vertices, {1, 2, 3});
  CHECK(f.query_count() == 0);
  Bitset x = Bitset::of(3, {0, 2});
  CHECK(f.evaluate(x).ival() == 4);
  CHECK(f.evaluate(x).ival() == 4);  // pure
  CHECK(f.query_count() == 2);
}

TEST_CASE("contraction examples") {
  ModularOracle w(GroundKind::vertices, {1, 2, 3});

  SUBCASE("contract by the empty set is the base function") {
    ContractedOracle c = contract(w, Bitset(3));
    for (unsigned mask = 0; mask < 8; ++mask) {
      Bitset x(3);
      for (int i = 0; i < 3; ++i)
        if ((mask >> i) & 1u) x.set(i);
      CHECK(c.evaluate(x).ival() == w.evaluate(x).ival());
    }
  }

  SUBCASE("modular contraction drops the pinned weight") {
    ContractedOracle c = contract(w, Bitset::of(3, {0}));
    CHECK(c.evaluate(Bitset::of(3, {1})).ival() == 2);
  }

  SUBCASE("coverage contraction can zero out an element") {
    CoverageOracle cov(GroundKind::vertices, {0, 0, 1});  // colors a,a,b
    ContractedOracle c = contract(cov, Bitset::of(3, {0}));
    CHECK(c.evaluate(Bitset::of(3, {1})).ival() == 0);
  }
}

TEST_CASE("nested contraction flattens to a single base query per evaluate") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 8;
    auto base = random_oracle(rng.next(), OracleFlavor::coverage,
                              GroundKind::vertices, n);
    auto rand_set = [&] {
      Bitset b(n);
      for (int i = 0; i < n; ++i)
        if (rng.below(2)) b.set(i);
      return b;
    };
    Bitset a = rand_set(), b = rand_set(), x = rand_set();

    ContractedOracle inner = contract(*base, a);
    ContractedOracle nested = contract(inner, b);
    ContractedOracle flat = contract(*base, a | b);
    CHECK(nested.pinned() == flat.pinned());

    long long before = base->query_count();
    Cost via_nested = nested.evaluate(x);
    CHECK(base->query_count() == before + 1);  // flattened: one base query
    CHECK(via_nested.same_value(flat.evaluate(x)));
  }
}

TEST_CASE("flattening is exact for real-valued oracles too") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 7;
    auto base = random_oracle(rng.next(), OracleFlavor::modular_real,
                              GroundKind::vertices, n);
    Bitset a(n), b(n), x(n);
    for (int i = 0; i < n; ++i) {
      if (rng.below(2)) a.set(i);
      if (rng.below(2)) b.set(i);
      if (rng.below(2)) x.set(i);
    }
    ContractedOracle nested = contract(contract(*base, a), b);
    ContractedOracle flat = contract(*base, a | b);
    CHECK(nested.evaluate(x).value() ==
          doctest::Approx(flat.evaluate(x).value()).epsilon(1e-12));
  }
}

TEST_CASE("verification passes modular and flags a supermodular function") {
  ModularOracle w(GroundKind::vertices, {1.5, 0, 2});
  CHECK(verify_submodular_monotone(w).pass());

  SquareOracle sq(3);
  auto rep = verify_submodular_monotone(sq);
  CHECK_FALSE(rep.pass());
  CHECK(rep.violation == SubmodularityReport::Violation::submodularity);
  // The witness is a genuine violation of the incremental inequality.
  Bitset xv = rep.x, yv = rep.y;
  xv.set(rep.elem);
  yv.set(rep.elem);
  long long lhs = sq.evaluate(xv).ival() - sq.evaluate(rep.x).ival();
  long long rhs = sq.evaluate(yv).ival() - sq.evaluate(rep.y).ival();
  CHECK(lhs < rhs);
}

TEST_CASE("verification refuses oversized ground sets") {
  ModularOracle big(GroundKind::vertices, std::vector<double>(21, 1.0));
  CHECK_THROWS_AS(verify_submodular_monotone(big), InputError);
}

TEST_CASE("lower-bound f_C on G(2,2) passes exhaustive verification") {
  LowerBoundGraph g = build_lower_bound_graph(2, 2);
  LowerBoundFC fc(g, g.hamiltonian_cycle_set({0, 1}));
  CHECK(verify_submodular_monotone(fc).pass());
}

TEST_CASE("every built-in oracle kind verifies at ground sizes up to 12") {
  for (OracleFlavor flavor : {OracleFlavor::modular_int, OracleFlavor::modular_real,
                              OracleFlavor::coverage, OracleFlavor::graphic_rank,
                              OracleFlavor::partition_matroid}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      int ground = seed % 2 == 0 ? 12 : 8;
      auto f = random_oracle(seed, flavor, GroundKind::vertices, ground);
      CAPTURE(static_cast<int>(flavor));
      CAPTURE(seed);
      CHECK(verify_submodular_monotone(*f).pass());
    }
  }
}

TEST_CASE("contraction preserves the verification verdict") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_oracle(rng.next(), OracleFlavor::partition_matroid,
                           GroundKind::vertices, 7);
    Bitset a(7);
    for (int i = 0; i < 7; ++i)
      if (rng.below(3) == 0) a.set(i);
    ContractedOracle c = contract(*f, a);
    CHECK(verify_submodular_monotone(c).pass());
  }
}

TEST_CASE("graphic matroid rank matches components") {
  // Host: triangle plus isolated vertex.
  Multigraph host = make_graph(4, {{0, 1}, {1, 2}, {2, 0}});
  GraphicMatroidRankOracle rank(host);
  CHECK(rank.evaluate(Bitset(3)).ival() == 0);
  CHECK(rank.evaluate(Bitset::of(3, {0})).ival() == 1);
  CHECK(rank.evaluate(Bitset::of(3, {0, 1})).ival() == 2);
  CHECK(rank.evaluate(Bitset::of(3, {0, 1, 2})).ival() == 2);  // cycle is dependent
}

TEST_CASE("partition matroid rank caps each block") {
  PartitionMatroidRankOracle f(GroundKind::edges, 5,
                               {{1, {0, 1, 2}}, {2, {3, 4}}});
  CHECK(f.evaluate(Bitset::of(5, {0, 1, 2})).ival() == 1);
  CHECK(f.evaluate(Bitset::of(5, {0, 3, 4})).ival() == 3);
  CHECK_THROWS_AS(PartitionMatroidRankOracle(GroundKind::edges, 3,
                                             {{1, {0, 1}}, {1, {1, 2}}}),
                  InputError);
}

TEST_CASE("modular oracle detects integer weights") {
  ModularOracle ints(GroundKind::vertices, {1, 2, 0});
  CHECK(ints.integer_valued());
  ModularOracle reals(GroundKind::vertices, {1, 2.5});
  CHECK_FALSE(reals.integer_valued());
  CHECK_THROWS_AS(ModularOracle(GroundKind::vertices, {-1.0}), InputError);
}
