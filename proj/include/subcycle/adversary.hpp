#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "subcycle/cycle_solver.hpp"
#include "subcycle/graph.hpp"
#include "subcycle/oracle.hpp"

namespace subcycle {

/// The hard multigraph: vertices v_0..v_k, parallel classes F_1..F_k of p
/// edges each between consecutive vertices, and one closing edge between v_0
/// and v_k. Edge ids: F_i occupies [(i-1)p, ip), the closing edge is kp.
/// It has exactly p^k Hamiltonian cycles, each taking one edge per class
/// plus the closing edge.
struct LowerBoundGraph {
  int k = 0;
  int p = 0;
  Multigraph graph;

  int closing_edge() const { return k * p; }
  /// 1-based class of an edge; 0 for the closing edge.
  int family_of_edge(int e) const { return e == k * p ? 0 : e / p + 1; }

  bool is_hamiltonian_cycle_set(const Bitset& x) const;
  /// choice[i] in [0,p): the edge picked from F_{i+1}.
  Bitset hamiltonian_cycle_set(const std::vector<int>& choice) const;
  Cycle hamiltonian_cycle(const std::vector<int>& choice) const;
  long long hamiltonian_cycle_count() const;  // p^k (guarded against overflow)
};

LowerBoundGraph build_lower_bound_graph(int k, int p);

/// f(X) = 2^{k+1} - 1 when X contains a cycle (|X| >= k+1 or two edges in
/// one class), else 2^{k+1} - 2^{k+1-|X|}. Integer, monotone, submodular;
/// its minimum over cycles is 2^{k+1} - 1.
class LowerBoundF : public CostOracle {
 public:
  explicit LowerBoundF(const LowerBoundGraph& g);

 protected:
  Cost do_evaluate(const Bitset& x) const override;

 private:
  int k_, p_;
};

/// Agrees with f everywhere except on one designated Hamiltonian cycle C,
/// where it returns 2^{k+1} - 2; the minimum drops to 2^{k+1} - 2, attained
/// only by C.
class LowerBoundFC : public CostOracle {
 public:
  LowerBoundFC(const LowerBoundGraph& g, Bitset designated_cycle);
  const Bitset& designated_cycle() const { return cycle_; }

 protected:
  Cost do_evaluate(const Bitset& x) const override;

 private:
  int k_, p_;
  Bitset cycle_;
};

/// A solver under audit: consumes the graph and an edge oracle, returns a
/// cycle with its claimed cost.
using EdgeSolver =
    std::function<CycleResult(const Multigraph&, const CostOracle&)>;

enum class AdversaryVerdict {
  all_cycles_queried,  // every Hamiltonian cycle's edge set was queried
  fooled,              // claimed 2^{k+1}-1 while some cycle went unqueried
  wrong_claim,         // claimed something f itself refutes
};

struct AdversaryTranscript {
  int k = 0, p = 0;
  long long hamiltonian_cycle_count = 0;  // p^k
  long long total_queries = 0;
  long long distinct_cycles_queried = 0;
  Cost claimed_cost;
  Cycle output_cycle;
  AdversaryVerdict verdict = AdversaryVerdict::wrong_claim;
  /// An unqueried cycle all answers are consistent with (verdict != all_...).
  std::optional<Bitset> fooling_certificate;
  /// Second scoring: is the output cycle optimal under every function
  /// consistent with the transcript (f and every f_C with C unqueried)?
  bool output_cycle_always_optimal = false;
};

/// Answers every query of `solver` according to f while recording which
/// Hamiltonian-cycle edge sets were queried (exact set equality only: f and
/// f_C differ on nothing else). A correct exact solver must end with every
/// cycle queried; anything claiming optimality earlier is handed a fooling
/// certificate C* whose f_C* is consistent with all answers given.
AdversaryTranscript run_adversary(const EdgeSolver& solver, int k, int p);

struct Lemma41Report {
  SubmodularityReport f_report;
  SubmodularityReport fc_report;
  bool pass() const { return f_report.pass() && fc_report.pass(); }
};

/// Exhaustively verifies monotone submodularity of f and of f_C for the
/// given designated cycle. Refuses pk+1 > 14 edges.
Lemma41Report verify_lemma_4_1(int k, int p, const Bitset& designated_cycle);

}  // namespace subcycle
