// Command-line front end: parses the text formats, dispatches to the
// solvers, and prints a line-oriented `key value` report.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "subcycle/adversary.hpp"
#include "subcycle/corpus.hpp"
#include "subcycle/cycle_solver.hpp"
#include "subcycle/io.hpp"
#include "subcycle/planar.hpp"
#include "subcycle/wfh.hpp"

namespace {

using namespace subcycle;

constexpr int kExitOk = 0;
constexpr int kExitNoSolution = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SUBCYCLE_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

void print_kv(const std::string& key, const std::string& value) {
  std::cout << key << " " << value << "\n";
}

void print_list(const std::string& key, const std::vector<int>& xs) {
  std::cout << key;
  for (int x : xs) std::cout << " " << x;
  std::cout << "\n";
}

void print_stats(const SolveStats& s) {
  print_kv("queries", std::to_string(s.oracle_queries));
  print_kv("recursion-nodes", std::to_string(s.recursion_nodes));
  std::ostringstream ms;
  ms.precision(3);
  ms << std::fixed << s.wall_ms;
  print_kv("wall-ms", ms.str());
}

void print_cycle_result(const CycleResult& r, bool edge_ids) {
  print_kv("cost", r.cost.str());
  if (edge_ids)
    print_list("cycle-edges", r.cycle.edges);
  else
    print_list("cycle", r.cycle.vertices);
  print_stats(r.stats);
}

// Decimal string -> recursion depth, via exact rational comparison:
// smallest k >= 0 with 2^k * num >= den (k = 0 when epsilon >= 1).
int depth_from_decimal(const std::string& text) {
  std::string digits;
  long long den = 1;
  bool seen_dot = false, seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot) throw InputError("malformed epsilon '" + text + "'");
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      seen_digit = true;
      if (digits.size() < 18) {
        digits += c;
        if (seen_dot) den *= 10;
      } else if (!seen_dot) {
        throw InputError("epsilon too large");
      }
      // further fractional digits beyond 18 are dropped
    } else {
      throw InputError("malformed epsilon '" + text + "'");
    }
  }
  if (!seen_digit) throw InputError("malformed epsilon '" + text + "'");
  long long num = digits.empty() ? 0 : std::stoll(digits);
  if (num <= 0) throw InputError("epsilon must be positive");

  int k = 0;
  long long scaled = num;
  while (scaled < den) {
    if (++k > 63) throw InputError("epsilon too small");
    if (scaled > (1LL << 62)) break;  // certainly >= den after doubling
    scaled <<= 1;
  }
  return k;
}

struct GraphWithOracle {
  ParsedGraph parsed;
  FunctionSpec spec;
  std::unique_ptr<CostOracle> oracle;
};

GraphWithOracle load_graph_and_oracle(const std::string& graph_path,
                                      const std::string& fn_path,
                                      GroundKind kind) {
  GraphWithOracle out;
  std::string graph_bytes = read_file(graph_path);
  std::string fn_bytes = read_file(fn_path);
  print_kv("graph-digest", fnv1a_hex(graph_bytes));
  print_kv("fn-digest", fnv1a_hex(fn_bytes));

  std::istringstream gs(graph_bytes);
  out.parsed = parse_graph(gs);
  std::istringstream fs(fn_bytes);
  out.spec = parse_function(fs);

  int ground = kind == GroundKind::vertices ? out.parsed.graph.vertex_count()
                                            : out.parsed.graph.edge_count();
  out.oracle = build_oracle(out.spec, kind, ground, &out.parsed.graph);
  return out;
}

int run_vertex_solver(const std::string& mode, const std::string& graph_path,
                      const std::string& fn_path, int depth) {
  GraphWithOracle in = load_graph_and_oracle(graph_path, fn_path, GroundKind::vertices);
  CycleResult r;
  if (mode == "approx") {
    r = two_approx(in.parsed.graph, *in.oracle).best;
  } else if (mode == "ptas") {
    print_kv("depth", std::to_string(depth));
    r = find_cycle(in.parsed.graph, *in.oracle, depth);
  } else {
    r = exact_integer(in.parsed.graph, *in.oracle);
  }
  print_cycle_result(r, false);
  return kExitOk;
}

int run_edge_cycle(const std::string& graph_path, const std::string& fn_path,
                   bool exact, const std::string& epsilon) {
  GraphWithOracle in = load_graph_and_oracle(graph_path, fn_path, GroundKind::edges);
  EdgeCycleOptions opts;
  if (exact) {
    opts.mode = SolveMode::exact;
  } else {
    opts.mode = SolveMode::approximate;
    int depth = depth_from_decimal(epsilon);
    opts.epsilon = std::ldexp(1.0, -depth);  // realizes exactly that depth
    print_kv("depth", std::to_string(depth));
  }
  CycleResult r = edge_cycle(in.parsed.graph, *in.oracle, opts);
  print_cycle_result(r, true);
  return kExitOk;
}

int run_planar_cut(const std::string& graph_path, const std::string& fn_path,
                   bool exact, const std::string& epsilon) {
  GraphWithOracle in = load_graph_and_oracle(graph_path, fn_path, GroundKind::edges);
  EdgeCycleOptions opts;
  if (exact) {
    opts.mode = SolveMode::exact;
  } else {
    opts.mode = SolveMode::approximate;
    int depth = depth_from_decimal(epsilon);
    opts.epsilon = std::ldexp(1.0, -depth);
    print_kv("depth", std::to_string(depth));
  }
  MinCutResult r = min_cut(in.parsed.embedded(), *in.oracle, opts);
  print_list("cut-edges", r.cut_edges);
  print_kv("cost", r.cost.str());
  print_kv("verified", "yes");
  print_stats(r.stats);
  return kExitOk;
}

int run_adversary_cmd(int k, int p, const std::string& solver_name) {
  EdgeSolver solver;
  if (solver_name == "exact") {
    solver = [](const Multigraph& g, const CostOracle& f) {
      return edge_cycle(g, f, {SolveMode::exact, 0.0});
    };
  } else if (solver_name.rfind("ptas:", 0) == 0) {
    int depth = depth_from_decimal(solver_name.substr(5));
    double eps = std::ldexp(1.0, -depth);
    solver = [eps](const Multigraph& g, const CostOracle& f) {
      return edge_cycle(g, f, {SolveMode::approximate, eps});
    };
  } else if (solver_name == "stub") {
    // Answers after one query; always gets fooled for p^k >= 2.
    solver = [k](const Multigraph& g, const CostOracle& f) {
      f.evaluate(Bitset(g.edge_count()));
      CycleResult r;
      LowerBoundGraph lb = build_lower_bound_graph(k, (g.edge_count() - 1) / k);
      r.cycle = lb.hamiltonian_cycle(std::vector<int>(k, 0));
      r.cost = Cost::integer((1LL << (k + 1)) - 1);
      return r;
    };
  } else {
    throw InputError("unknown solver '" + solver_name + "' (exact|ptas:<eps>|stub)");
  }

  AdversaryTranscript t = run_adversary(solver, k, p);
  print_kv("pk", std::to_string(t.hamiltonian_cycle_count));
  print_kv("queries", std::to_string(t.total_queries));
  print_kv("cycles-queried", std::to_string(t.distinct_cycles_queried));
  print_kv("claimed-cost", t.claimed_cost.str());
  switch (t.verdict) {
    case AdversaryVerdict::all_cycles_queried:
      print_kv("verdict", "all-cycles-queried");
      break;
    case AdversaryVerdict::fooled:
      print_kv("verdict", "fooled");
      break;
    case AdversaryVerdict::wrong_claim:
      print_kv("verdict", "wrong-claim");
      break;
  }
  if (t.fooling_certificate)
    print_list("certificate", t.fooling_certificate->to_vector());
  print_kv("output-cycle-always-optimal",
           t.output_cycle_always_optimal ? "yes" : "no");
  return t.verdict == AdversaryVerdict::all_cycles_queried ? kExitOk
                                                           : kExitNoSolution;
}

int run_wfh(const std::string& algo, const std::string& path,
            std::uint64_t seed, long long reps) {
  std::string bytes = read_file(path);
  print_kv("instance-digest", fnv1a_hex(bytes));
  std::istringstream is(bytes);
  WfhInstance inst = parse_wfh(is);

  std::optional<WfhSolution> sol;
  if (algo == "brute") {
    sol = wfh_brute_force(inst);
  } else if (algo == "fpt") {
    FptStats stats;
    sol = wfh_fpt_solve(inst, &stats);
    print_kv("candidates", std::to_string(stats.candidates));
    print_kv("branch-nodes", std::to_string(stats.branch_nodes));
  } else if (algo == "random") {
    RandomizedOutcome out = wfh_randomized_solve(inst, {seed, reps});
    print_kv("trials", std::to_string(out.trials_run));
    print_kv("trials-available", std::to_string(out.trials_available));
    sol = out.solution;
  } else {
    throw InputError("unknown algorithm '" + algo + "' (fpt|random|brute)");
  }

  if (!sol) {
    print_kv("answer", algo == "random" ? "probably-no" : "no");
    return kExitNoSolution;
  }
  print_kv("answer", "yes");
  print_list("chosen-sets", sol->chosen);
  print_list("union", sol->union_set.to_vector());
  return kExitOk;
}

int run_verify(const std::string& fn_path, const std::string& graph_path,
               int ground_override) {
  std::string bytes = read_file(fn_path);
  print_kv("fn-digest", fnv1a_hex(bytes));
  std::istringstream is(bytes);
  FunctionSpec spec = parse_function(is);

  std::optional<ParsedGraph> pg;
  if (!graph_path.empty()) {
    std::istringstream gs(read_file(graph_path));
    pg = parse_graph(gs);
  }
  GroundKind kind = GroundKind::vertices;
  int ground = ground_override;
  if (ground <= 0) {
    if (spec.kind == FunctionSpec::Kind::graphic_rank && spec.rank_self) {
      if (!pg) throw InputError("graphic-rank self needs --graph");
      kind = GroundKind::edges;
      ground = pg->graph.edge_count();
    } else {
      ground = spec.min_ground_size();
    }
  }
  print_kv("ground-size", std::to_string(ground));
  auto oracle = build_oracle(spec, kind, ground, pg ? &pg->graph : nullptr);
  SubmodularityReport rep = verify_submodular_monotone(*oracle);
  print_kv("result", rep.pass() ? "pass" : "fail");
  if (!rep.pass()) print_kv("violation", rep.describe());
  return rep.pass() ? kExitOk : kExitNoSolution;
}

int run_enumerate(const std::string& graph_path, long long cap) {
  std::string bytes = read_file(graph_path);
  print_kv("graph-digest", fnv1a_hex(bytes));
  std::istringstream is(bytes);
  ParsedGraph pg = parse_graph(is);
  std::vector<Cycle> cycles = enumerate_cycles(pg.graph, cap);
  print_kv("count", std::to_string(cycles.size()));
  for (const Cycle& c : cycles) {
    print_list("cycle", c.vertices);
    print_list("cycle-edges", c.edges);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shortest cycles, cuts and wide-family hitting under monotone submodular cost oracles"};
  app.require_subcommand(1);

  std::uint64_t seed = default_seed();
  app.add_option("--seed", seed, "root seed (default: SUBCYCLE_SEED or 0)");
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker count; only 1 (serial) is supported");

  std::string graph_path, fn_path, inst_path, epsilon = "1", algo = "fpt";
  std::string solver = "exact";
  bool exact_flag = false;
  long long cap = 1000000, reps = 0;
  int adv_k = 2, adv_p = 2, ground_override = 0;

  auto* approx = app.add_subcommand("approx-cycle", "factor-2 cycle under a vertex oracle");
  approx->add_option("graph", graph_path)->required();
  approx->add_option("fn", fn_path)->required();

  auto* ptas_cmd = app.add_subcommand("ptas-cycle", "(1+epsilon) cycle under a vertex oracle");
  ptas_cmd->add_option("--epsilon", epsilon, "approximation parameter (decimal)")->required();
  ptas_cmd->add_option("graph", graph_path)->required();
  ptas_cmd->add_option("fn", fn_path)->required();

  auto* exact_cmd = app.add_subcommand("exact-cycle", "exact cycle under an integer vertex oracle");
  exact_cmd->add_option("graph", graph_path)->required();
  exact_cmd->add_option("fn", fn_path)->required();

  auto* edge_cmd = app.add_subcommand("edge-cycle", "cycle under an edge oracle (multigraphs)");
  edge_cmd->add_flag("--exact", exact_flag, "exact (integer oracles)");
  edge_cmd->add_option("--epsilon", epsilon, "approximation parameter");
  edge_cmd->add_option("graph", graph_path)->required();
  edge_cmd->add_option("fn", fn_path)->required();

  auto* cut_cmd = app.add_subcommand("planar-cut", "min cut of an embedded planar multigraph");
  cut_cmd->add_flag("--exact", exact_flag, "exact (integer oracles)");
  cut_cmd->add_option("--epsilon", epsilon, "approximation parameter");
  cut_cmd->add_option("graph", graph_path, "graph file with rot lines")->required();
  cut_cmd->add_option("fn", fn_path)->required();

  auto* adv = app.add_subcommand("adversary", "query lower-bound harness on G(k,p)");
  auto* adv_run = adv->add_subcommand("run", "audit a solver against f / f_C");
  adv_run->add_option("--k", adv_k)->required();
  adv_run->add_option("--p", adv_p)->required();
  adv_run->add_option("--solver", solver, "exact|ptas:<eps>|stub");

  auto* wfh_cmd = app.add_subcommand("wfh", "wide family hitting");
  auto* wfh_solve = wfh_cmd->add_subcommand("solve", "solve an instance file");
  wfh_solve->add_option("--algo", algo, "fpt|random|brute");
  wfh_solve->add_option("--reps", reps, "randomized trials (default: derived from k and d)");
  wfh_solve->add_option("file", inst_path)->required();

  auto* verify = app.add_subcommand("verify-submodular", "exhaustive oracle verification");
  verify->add_option("fn", fn_path)->required();
  verify->add_option("--graph", graph_path, "host graph (for graphic-rank self)");
  verify->add_option("--ground", ground_override, "ground set size override");

  auto* enum_cmd = app.add_subcommand("enumerate", "brute-force cycle enumeration");
  enum_cmd->add_option("graph", graph_path)->required();
  enum_cmd->add_option("--cap", cap, "abort past this many cycles");

  CLI11_PARSE(app, argc, argv);

  try {
    if (jobs != 1) throw InputError("only --jobs 1 is supported");
    print_kv("command", app.get_subcommands().front()->get_name());
    print_kv("seed", std::to_string(seed));

    if (approx->parsed()) return run_vertex_solver("approx", graph_path, fn_path, 0);
    if (ptas_cmd->parsed())
      return run_vertex_solver("ptas", graph_path, fn_path, depth_from_decimal(epsilon));
    if (exact_cmd->parsed()) return run_vertex_solver("exact", graph_path, fn_path, 0);
    if (edge_cmd->parsed()) return run_edge_cycle(graph_path, fn_path, exact_flag, epsilon);
    if (cut_cmd->parsed()) return run_planar_cut(graph_path, fn_path, exact_flag, epsilon);
    if (adv->parsed()) {
      if (!adv_run->parsed()) throw InputError("usage: adversary run ...");
      return run_adversary_cmd(adv_k, adv_p, solver);
    }
    if (wfh_cmd->parsed()) {
      if (!wfh_solve->parsed()) throw InputError("usage: wfh solve ...");
      return run_wfh(algo, inst_path, seed, reps);
    }
    if (verify->parsed()) return run_verify(fn_path, graph_path, ground_override);
    if (enum_cmd->parsed()) return run_enumerate(graph_path, cap);
    throw InputError("no subcommand given");
  } catch (const NoSolutionError& e) {
    print_kv("error", e.what());
    return kExitNoSolution;
  } catch (const CapExceededError& e) {
    print_kv("error", e.what());
    return kExitNoSolution;
  } catch (const InputError& e) {
    print_kv("error", e.what());
    return kExitInputError;
  } catch (const std::exception& e) {
    print_kv("internal-error", e.what());
    return kExitInternal;
  }
}
