#include "subcycle/io.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <sstream>

#include "subcycle/adversary.hpp"

namespace subcycle {

namespace {

// Line-oriented tokenizer with '#' comments and line-numbered errors.
struct LineReader {
  std::istream& in;
  int line_no = 0;

  std::optional<std::vector<std::string>> next() {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::vector<std::string> tokens;
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return tokens;
    }
    return std::nullopt;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("line " + std::to_string(line_no) + ": " + msg);
  }

  long long to_int(const std::string& s) const {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size()) fail("malformed integer '" + s + "'");
      return v;
    } catch (const InputError&) {
      throw;
    } catch (...) {
      fail("malformed integer '" + s + "'");
    }
  }

  double to_double(const std::string& s) const {
    try {
      std::size_t pos = 0;
      double v = std::stod(s, &pos);
      if (pos != s.size()) fail("malformed number '" + s + "'");
      return v;
    } catch (const InputError&) {
      throw;
    } catch (...) {
      fail("malformed number '" + s + "'");
    }
  }
};

}  // namespace

ParsedGraph parse_graph(std::istream& in) {
  LineReader rd{in};
  std::optional<int> n;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, std::vector<int>>> rot_lines;

  while (auto tokens = rd.next()) {
    const auto& t = *tokens;
    if (t[0] == "n") {
      if (t.size() != 2) rd.fail("usage: n <count>");
      if (n) rd.fail("duplicate n line");
      n = static_cast<int>(rd.to_int(t[1]));
      if (*n < 0) rd.fail("vertex count must be nonnegative");
    } else if (t[0] == "e") {
      if (t.size() != 3) rd.fail("usage: e <u> <v>");
      if (!n) rd.fail("e line before n line");
      edges.emplace_back(static_cast<int>(rd.to_int(t[1])),
                         static_cast<int>(rd.to_int(t[2])));
    } else if (t[0] == "rot") {
      if (t.size() < 2) rd.fail("usage: rot <v> <edge ids...>");
      if (!n) rd.fail("rot line before n line");
      std::vector<int> ids;
      for (std::size_t i = 2; i < t.size(); ++i)
        ids.push_back(static_cast<int>(rd.to_int(t[i])));
      rot_lines.emplace_back(static_cast<int>(rd.to_int(t[1])), std::move(ids));
    } else {
      rd.fail("unknown record '" + t[0] + "'");
    }
  }
  if (!n) throw InputError("graph file is missing its n line");

  ParsedGraph pg;
  pg.graph = Multigraph(*n);
  for (auto [u, v] : edges) {
    try {
      pg.graph.add_edge(u, v);
    } catch (const InputError& e) {
      throw InputError(std::string("graph file: ") + e.what());
    }
  }
  if (!rot_lines.empty()) {
    std::vector<std::vector<int>> lists(*n);
    std::vector<char> seen(*n, 0);
    for (auto& [v, ids] : rot_lines) {
      if (v < 0 || v >= *n) throw InputError("rot line for unknown vertex");
      if (seen[v]) throw InputError("duplicate rot line for vertex " + std::to_string(v));
      seen[v] = 1;
      lists[v] = std::move(ids);
    }
    pg.rotation_lists = std::move(lists);
    pg.embedded();  // validates placement now, with file context
  }
  return pg;
}

std::string serialize_graph(const ParsedGraph& g) {
  std::ostringstream os;
  os << "n " << g.graph.vertex_count() << "\n";
  for (auto [u, v] : g.graph.edges()) os << "e " << u << " " << v << "\n";
  if (g.rotation_lists) {
    for (int v = 0; v < g.graph.vertex_count(); ++v) {
      os << "rot " << v;
      for (int e : (*g.rotation_lists)[v]) os << " " << e;
      os << "\n";
    }
  }
  return os.str();
}

int FunctionSpec::min_ground_size() const {
  int max_elem = -1;
  auto see = [&](int e) { max_elem = std::max(max_elem, e); };
  for (auto [e, w] : weights) see(e);
  for (auto [e, c] : colors) see(e);
  for (const auto& b : blocks)
    for (int e : b.elements) see(e);
  for (auto [e, u, v] : rank_edges) see(e);
  if (kind == Kind::lb_f || kind == Kind::lb_fc) return lb_p * lb_k + 1;
  return max_elem + 1;
}

FunctionSpec parse_function(std::istream& in) {
  LineReader rd{in};
  auto first = rd.next();
  if (!first || first->size() != 1)
    throw InputError("function file must start with its kind");
  const std::string& kind = (*first)[0];

  FunctionSpec spec;
  if (kind == "modular") {
    spec.kind = FunctionSpec::Kind::modular;
  } else if (kind == "colors") {
    spec.kind = FunctionSpec::Kind::colors;
  } else if (kind == "graphic-rank") {
    spec.kind = FunctionSpec::Kind::graphic_rank;
  } else if (kind == "partition-matroid") {
    spec.kind = FunctionSpec::Kind::partition_matroid;
  } else if (kind == "lb-f") {
    spec.kind = FunctionSpec::Kind::lb_f;
  } else if (kind == "lb-fc") {
    spec.kind = FunctionSpec::Kind::lb_fc;
  } else {
    rd.fail("unknown function kind '" + kind + "'");
  }

  while (auto tokens = rd.next()) {
    const auto& t = *tokens;
    if (t[0] == "w" && spec.kind == FunctionSpec::Kind::modular) {
      if (t.size() != 3) rd.fail("usage: w <elem> <weight>");
      spec.weights.emplace_back(static_cast<int>(rd.to_int(t[1])),
                                rd.to_double(t[2]));
    } else if (t[0] == "c" && spec.kind == FunctionSpec::Kind::colors) {
      if (t.size() != 3) rd.fail("usage: c <elem> <color>");
      spec.colors.emplace_back(static_cast<int>(rd.to_int(t[1])),
                               static_cast<int>(rd.to_int(t[2])));
    } else if (t[0] == "block" && spec.kind == FunctionSpec::Kind::partition_matroid) {
      if (t.size() < 2) rd.fail("usage: block <cap> <elem...>");
      PartitionMatroidRankOracle::Block b;
      b.capacity = static_cast<int>(rd.to_int(t[1]));
      for (std::size_t i = 2; i < t.size(); ++i)
        b.elements.push_back(static_cast<int>(rd.to_int(t[i])));
      spec.blocks.push_back(std::move(b));
    } else if (t[0] == "self" && spec.kind == FunctionSpec::Kind::graphic_rank) {
      if (t.size() != 1) rd.fail("usage: self");
      spec.rank_self = true;
    } else if (t[0] == "n" && spec.kind == FunctionSpec::Kind::graphic_rank) {
      if (t.size() != 2) rd.fail("usage: n <aux vertex count>");
      spec.rank_aux_n = static_cast<int>(rd.to_int(t[1]));
    } else if (t[0] == "e" && spec.kind == FunctionSpec::Kind::graphic_rank) {
      if (t.size() != 4) rd.fail("usage: e <elem> <u> <v>");
      spec.rank_edges.emplace_back(static_cast<int>(rd.to_int(t[1])),
                                   static_cast<int>(rd.to_int(t[2])),
                                   static_cast<int>(rd.to_int(t[3])));
    } else if (t[0] == "lb" && (spec.kind == FunctionSpec::Kind::lb_f ||
                                spec.kind == FunctionSpec::Kind::lb_fc)) {
      if (t.size() < 3) rd.fail("usage: lb <k> <p> [cycle <edge-ids...>]");
      spec.lb_k = static_cast<int>(rd.to_int(t[1]));
      spec.lb_p = static_cast<int>(rd.to_int(t[2]));
      if (spec.kind == FunctionSpec::Kind::lb_fc) {
        if (t.size() < 4 || t[3] != "cycle")
          rd.fail("lb-fc needs: lb <k> <p> cycle <edge-ids...>");
        for (std::size_t i = 4; i < t.size(); ++i)
          spec.lb_cycle.push_back(static_cast<int>(rd.to_int(t[i])));
      } else if (t.size() != 3) {
        rd.fail("lb-f takes exactly: lb <k> <p>");
      }
    } else {
      rd.fail("unexpected record '" + t[0] + "' for kind " + kind);
    }
  }
  return spec;
}

std::unique_ptr<CostOracle> build_oracle(const FunctionSpec& spec,
                                         GroundKind kind, int ground_size,
                                         const Multigraph* graph_for_self_rank) {
  auto check_elem = [&](int e) {
    if (e < 0 || e >= ground_size)
      throw InputError("function refers to element " + std::to_string(e) +
                       " outside the ground set of size " +
                       std::to_string(ground_size));
  };

  switch (spec.kind) {
    case FunctionSpec::Kind::modular: {
      std::vector<double> w(ground_size, 0.0);
      for (auto [e, wt] : spec.weights) {
        check_elem(e);
        w[e] = wt;
      }
      return std::make_unique<ModularOracle>(kind, std::move(w));
    }
    case FunctionSpec::Kind::colors: {
      std::vector<int> c(ground_size, -1);
      for (auto [e, col] : spec.colors) {
        check_elem(e);
        c[e] = col;
      }
      for (int e = 0; e < ground_size; ++e)
        if (c[e] < 0)
          throw InputError("colors function must cover every element (missing " +
                           std::to_string(e) + ")");
      return std::make_unique<CoverageOracle>(kind, std::move(c));
    }
    case FunctionSpec::Kind::partition_matroid: {
      for (const auto& b : spec.blocks)
        for (int e : b.elements) check_elem(e);
      return std::make_unique<PartitionMatroidRankOracle>(kind, ground_size,
                                                          spec.blocks);
    }
    case FunctionSpec::Kind::graphic_rank: {
      if (spec.rank_self) {
        if (!graph_for_self_rank)
          throw InputError("graphic-rank self needs an input graph");
        if (kind != GroundKind::edges ||
            graph_for_self_rank->edge_count() != ground_size)
          throw InputError("graphic-rank self only fits edge ground sets");
        return std::make_unique<GraphicMatroidRankOracle>(*graph_for_self_rank);
      }
      Multigraph aux(spec.rank_aux_n);
      std::vector<std::pair<int, int>> by_elem(ground_size, {-1, -1});
      for (auto [e, u, v] : spec.rank_edges) {
        check_elem(e);
        by_elem[e] = {u, v};
      }
      for (int e = 0; e < ground_size; ++e) {
        if (by_elem[e].first < 0)
          throw InputError("graphic-rank must map every element (missing " +
                           std::to_string(e) + ")");
        aux.add_edge(by_elem[e].first, by_elem[e].second);
      }
      return std::make_unique<GraphicMatroidRankOracle>(std::move(aux));
    }
    case FunctionSpec::Kind::lb_f:
    case FunctionSpec::Kind::lb_fc: {
      LowerBoundGraph lbg = build_lower_bound_graph(spec.lb_k, spec.lb_p);
      if (ground_size != lbg.graph.edge_count())
        throw InputError("lb oracle ground set must have pk+1 = " +
                         std::to_string(lbg.graph.edge_count()) + " elements");
      if (spec.kind == FunctionSpec::Kind::lb_f)
        return std::make_unique<LowerBoundF>(lbg);
      Bitset c(ground_size);
      for (int e : spec.lb_cycle) {
        check_elem(e);
        c.set(e);
      }
      return std::make_unique<LowerBoundFC>(lbg, std::move(c));
    }
  }
  throw InternalError("unhandled function kind");
}

WfhInstance parse_wfh(std::istream& in) {
  LineReader rd{in};
  WfhInstance inst;
  bool have_k = false, have_u = false;
  std::vector<std::vector<std::vector<int>>> raw_families;

  while (auto tokens = rd.next()) {
    const auto& t = *tokens;
    if (t[0] == "k") {
      if (t.size() != 2) rd.fail("usage: k <budget>");
      inst.k = static_cast<int>(rd.to_int(t[1]));
      have_k = true;
    } else if (t[0] == "u") {
      if (t.size() != 2) rd.fail("usage: u <universe size>");
      inst.universe = static_cast<int>(rd.to_int(t[1]));
      have_u = true;
    } else if (t[0] == "family") {
      if (t.size() != 1) rd.fail("usage: family");
      raw_families.emplace_back();
    } else if (t[0] == "set") {
      if (raw_families.empty()) rd.fail("set line before any family line");
      std::vector<int> elems;
      for (std::size_t i = 1; i < t.size(); ++i)
        elems.push_back(static_cast<int>(rd.to_int(t[i])));
      raw_families.back().push_back(std::move(elems));
    } else {
      rd.fail("unknown record '" + t[0] + "'");
    }
  }
  if (!have_k || !have_u)
    throw InputError("wfh file needs k and u lines");

  for (const auto& fam : raw_families) {
    inst.families.emplace_back();
    for (const auto& elems : fam) {
      for (int e : elems)
        if (e < 0 || e >= inst.universe)
          throw InputError("wfh set element " + std::to_string(e) +
                           " outside the universe");
      inst.families.back().push_back(Bitset::of(inst.universe, elems));
    }
  }
  return inst;
}

std::string serialize_wfh(const WfhInstance& inst) {
  std::ostringstream os;
  os << "k " << inst.k << "\n" << "u " << inst.universe << "\n";
  for (const auto& fam : inst.families) {
    os << "family\n";
    for (const Bitset& s : fam) {
      os << "set";
      s.for_each([&](int e) { os << " " << e; });
      os << "\n";
    }
  }
  return os.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace subcycle
