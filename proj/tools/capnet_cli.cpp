// Copyright 2026 The capnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// capnet command-line front end.
//
// Exit codes: 0 ok, 1 infeasible, 2 parse or usage error, 3 budget exceeded.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capnet/capnet.hpp"

namespace {

using namespace capnet;

constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_solution(const std::string& solver, std::uint64_t seed, const EdgeSubset& edges,
                    Cost cost, bool feasible) {
  std::cout << "solver " << solver << '\n'
            << "seed " << seed << '\n'
            << emit_solution(edges) << "cost " << cost << '\n'
            << "verdict " << (feasible ? "feasible" : "infeasible") << '\n';
}

// "cardinality", "additive:w0,w1,...", "coverage:a b;c d;..." over the nodes.
SubmodularOracle parse_oracle(const std::string& desc, std::size_t n) {
  const auto colon = desc.find(':');
  const std::string kind = desc.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : desc.substr(colon + 1);
  auto numbers = [](const std::string& s, char sep) {
    std::vector<std::int64_t> out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, sep)) {
      if (tok.find_first_not_of(' ') == std::string::npos) continue;
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
    }
    return out;
  };
  try {
    if (kind == "cardinality" && body.empty()) return cardinality_oracle(n);
    if (kind == "additive") {
      auto w = numbers(body, ',');
      if (w.size() != n) throw UsageError("additive oracle needs one weight per node");
      for (auto x : w)
        if (x < 0) throw UsageError("additive weights must be nonnegative");
      return additive_oracle(std::move(w));
    }
    if (kind == "coverage") {
      std::vector<std::vector<NodeId>> sets;
      std::istringstream in(body);
      for (std::string part; std::getline(in, part, ';');) {
        std::vector<NodeId> s;
        for (auto v : numbers(part, ' ')) {
          if (v < 0 || static_cast<std::size_t>(v) >= n) throw UsageError("coverage node out of range");
          s.push_back(static_cast<NodeId>(v));
        }
        sets.push_back(std::move(s));
      }
      return coverage_oracle(n, std::move(sets));
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const UsageError*>(&e)) throw;
    throw UsageError("bad oracle '" + desc + "'");
  }
  throw UsageError("unknown oracle '" + desc + "'");
}

bool is_forest(const Graph& g) { return spanning_forest(g, all_edges(g)).size() == g.edge_count(); }

EdgeSubset run_up2p(const Up2pInstance& inst, const std::string& algo, std::uint64_t seed) {
  if (algo == "zero") return solve_zero_balance(inst);
  if (algo == "tree") return solve_tree_exact(inst);
  if (algo == "general") return solve_general(inst, seed);
  if (algo == "surplus") return solve_small_surplus(inst, seed);
  throw UsageError("unknown algorithm " + algo);
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::string dir;
  std::string out;
  std::uint64_t seed = 0;
  double epsilon = 1.0;
  bool timing = false;
};

template <typename F>
RunReport timed(const BenchOptions& o, RunReport r, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  body(r);
  if (o.timing)
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::optional<Cost> try_opt(const std::function<Cost()>& f) {
  try {
    return f();
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

std::vector<RunReport> bench_file(const BenchOptions& o, const std::filesystem::path& path) {
  const std::string name = path.filename().string();
  const std::string ext = path.extension().string();
  const std::string text = read_file(path.string());
  std::vector<RunReport> rows;
  RunReport base;
  base.instance = name;
  base.seed = o.seed;
  base.epsilon = o.epsilon;
  if (ext == ".up2p") {
    const Up2pInstance inst = parse_up2p(text);
    const auto opt = try_opt([&] { return brute_up2p(inst).cost; });
    std::vector<std::string> algos{"general"};
    if (inst.total_charge() == 0) algos.push_back("zero");
    if (inst.total_charge() > 0) algos.push_back("surplus");
    if (is_forest(inst.graph)) algos.push_back("tree");
    for (const auto& a : algos) {
      RunReport r = base;
      r.solver = "up2p-" + a;
      r.opt = opt;
      rows.push_back(timed(o, r, [&](RunReport& rep) {
        const EdgeSubset s = run_up2p(inst, a, o.seed);
        rep.cost = s.total_cost(inst.graph);
        rep.feasible = verify(inst, s).feasible;
      }));
    }
  } else if (ext == ".conncap") {
    const ConnCapSndpInstance inst = parse_conncap(text);
    RunReport r = base;
    r.solver = "conncap";
    r.opt = try_opt([&] { return brute_conncap(inst).cost; });
    rows.push_back(timed(o, r, [&](RunReport& rep) {
      const ConnCapSolution s = solve(inst, {o.epsilon, o.seed, 1});
      rep.cost = s.cost;
      rep.feasible = verify(inst, s.edges).feasible;
    }));
  } else if (ext == ".gst") {
    const GstDemandInstance inst = parse_gst(text);
    RunReport r = base;
    r.solver = "gst-via-conncap";
    r.opt = try_opt([&] { return brute_gst(inst.gst).cost; });
    rows.push_back(timed(o, r, [&](RunReport& rep) {
      const ConnCapSndpInstance reduced = gst_to_conncap(inst.gst);
      const ConnCapSolution s = solve(reduced, {o.epsilon, o.seed, 1});
      const EdgeSubset tree = conncap_solution_to_gst(inst.gst, reduced, s.edges);
      rep.cost = tree.total_cost(inst.gst.graph);
      rep.feasible = gst_feasible(inst.gst, tree);
    }));
  }
  return rows;
}

int bench(const BenchOptions& o) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(o.dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::ostringstream csv;
  csv << RunReport::csv_header() << '\n';
  bool all_feasible = true;
  for (const auto& f : files) {
    for (const RunReport& r : bench_file(o, f)) {
      csv << r.csv() << '\n';
      all_feasible = all_feasible && r.feasible;
    }
  }
  if (o.out.empty() || o.out == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream(o.out, std::ios::binary) << csv.str();
    std::cout << "wrote " << o.out << '\n';
  }
  return all_feasible ? 0 : kExitInfeasible;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"capacitated network design solvers"};
  app.require_subcommand(1);
  int status = 0;

  std::string file, algo = "general", oracle, problem, instance, solution;
  std::uint64_t seed = 0;
  double epsilon = 1.0;
  std::size_t nodes = 6;

  auto* up2p = app.add_subcommand("solve-up2p", "solve an unbalanced point-to-point instance");
  up2p->add_option("file", file)->required();
  up2p->add_option("--algo", algo)->check(CLI::IsMember({"zero", "tree", "general", "surplus"}));
  up2p->add_option("--seed", seed);
  up2p->callback([&] {
    const Up2pInstance inst = parse_up2p(read_file(file));
    const EdgeSubset s = run_up2p(inst, algo, seed);
    const bool ok = verify(inst, s).feasible;
    print_solution("up2p-" + algo, seed, s, s.total_cost(inst.graph), ok);
    status = ok ? 0 : kExitInfeasible;
  });

  auto* conncap = app.add_subcommand("solve-conncap", "solve a connected capacitated instance");
  conncap->add_option("file", file)->required();
  conncap->add_option("--epsilon", epsilon)->check(CLI::PositiveNumber);
  conncap->add_option("--seed", seed);
  conncap->callback([&] {
    const ConnCapSndpInstance inst = parse_conncap(read_file(file));
    const ConnCapSolution s = solve(inst, {epsilon, seed, 1});
    const bool ok = verify(inst, s.edges).feasible;
    print_solution("conncap", seed, s.edges, s.cost, ok);
    status = ok ? 0 : kExitInfeasible;
  });

  auto* stc = app.add_subcommand("solve-stc", "submodular tree cover on a graph");
  stc->add_option("file", file)->required();
  stc->add_option("--oracle", oracle, "cardinality | additive:w,... | coverage:a b;c d")->required();
  stc->add_option("--epsilon", epsilon)->check(CLI::PositiveNumber);
  stc->add_option("--seed", seed);
  stc->callback([&] {
    const StcInstance inst = parse_stc(read_file(file));
    const SubmodularOracle f = parse_oracle(oracle, inst.graph.node_count());
    std::vector<NodeId> forced;
    if (inst.root) forced.push_back(*inst.root);
    const GraphCoverResult r = solve_on_graph(inst.graph, f, forced, {epsilon, seed, 1});
    const bool ok = r.value >= f.f_max();
    print_solution("stc", seed, r.edges, r.edges.total_cost(inst.graph), ok);
    status = ok ? 0 : kExitInfeasible;
  });

  auto* gen = app.add_subcommand("gen", "generate instances");
  std::string kind;
  gen->add_option("kind", kind, "gst-reduction | random-up2p | random-conncap | random-gst")
      ->required()
      ->check(CLI::IsMember({"gst-reduction", "random-up2p", "random-conncap", "random-gst"}));
  gen->add_option("input", file, "gst file for gst-reduction");
  gen->add_option("--nodes", nodes)->check(CLI::Range(2, 64));
  gen->add_option("--seed", seed);
  gen->callback([&] {
    gen::Rng rng(seed);
    if (kind == "gst-reduction") {
      if (file.empty()) throw UsageError("gst-reduction needs a gst file");
      std::cout << emit_conncap(gst_to_conncap(parse_gst(read_file(file)).gst));
    } else if (kind == "random-up2p") {
      std::cout << emit_up2p(gen::random_up2p(rng, nodes));
    } else if (kind == "random-conncap") {
      std::cout << emit_conncap(gen::random_conncap(rng, nodes));
    } else {
      std::cout << emit_gst(gen::random_gst(rng, nodes));
    }
  });

  auto* ver = app.add_subcommand("verify", "check a solution file against an instance");
  ver->add_option("problem", problem)->required()->check(CLI::IsMember({"up2p", "conncap", "gst"}));
  ver->add_option("instance", instance)->required();
  ver->add_option("solution", solution)->required();
  ver->callback([&] {
    const std::string text = read_file(instance);
    const std::string sol = read_file(solution);
    bool ok = false;
    Cost cost = 0;
    if (problem == "up2p") {
      const Up2pInstance inst = parse_up2p(text);
      const EdgeSubset s = parse_solution(sol, inst.graph.edge_count());
      const Up2pReport rep = verify(inst, s);
      for (std::size_t i : rep.offending)
        std::cout << "component charge " << rep.components[i].charge << " at node "
                  << rep.components[i].nodes.front() << '\n';
      ok = rep.feasible;
      cost = s.total_cost(inst.graph);
    } else if (problem == "conncap") {
      const ConnCapSndpInstance inst = parse_conncap(text);
      const EdgeSubset s = parse_solution(sol, inst.graph.edge_count());
      const ConnCapReport rep = verify(inst, s);
      for (const SourceCheck& c : rep.sources)
        std::cout << "source " << c.node << " need " << c.requirement << " got "
                  << c.achieved.to_string() << (c.ok ? "" : " short") << '\n';
      std::cout << "backbone " << (rep.backbone_connected ? "connected" : "broken") << '\n';
      ok = rep.feasible;
      cost = s.total_cost(inst.graph);
    } else {
      const GstDemandInstance inst = parse_gst(text);
      const EdgeSubset s = parse_solution(sol, inst.gst.graph.edge_count());
      ok = gst_feasible(inst.gst, s);
      cost = s.total_cost(inst.gst.graph);
    }
    std::cout << "cost " << cost << '\n' << (ok ? "feasible" : "infeasible") << '\n';
    status = ok ? 0 : kExitInfeasible;
  });

  BenchOptions bo;
  auto* bench_cmd = app.add_subcommand("bench", "run every instance of a suite directory");
  bench_cmd->add_option("suite", bo.dir)->required()->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--out", bo.out, "CSV destination, '-' for stdout");
  bench_cmd->add_option("--seed", bo.seed);
  bench_cmd->add_option("--epsilon", bo.epsilon)->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--timing", bo.timing, "fill the millis column");
  bench_cmd->callback([&] { status = bench(bo); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const capnet::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const capnet::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const capnet::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const capnet::InfeasibleError& e) {
    std::cout << "verdict infeasible\n";
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  }
}
