// Copyright 2026 The bblab Authors
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

// bblab command-line tool: generators, tree checkers, the branch-and-bound
// engine, minimal-tree search, experiments and the acceptance suite.

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bblab/bb_core.hpp"
#include "bblab/error.hpp"
#include "bblab/experiment.hpp"
#include "bblab/instances.hpp"
#include "bblab/json_io.hpp"
#include "bblab/acceptance_suite.hpp"
#include "bblab/search.hpp"

namespace {

using namespace bblab;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

constexpr const char* kCaveat =
    "bounded-coefficient search: the result is lower-bound evidence for trees with |pi_i| <= M only";

std::atomic<bool> g_interrupted{false};

void OnInterrupt(int) { g_interrupted = true; }

struct Globals {
  std::uint64_t seed = 0;
  std::uint64_t budget_nodes = 1'000'000;
  std::string format;  // empty: the verb's default
  std::string out;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void Emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(g.out);
  if (!file) throw UsageError("cannot write '" + g.out + "'");
  file << text;
}

void EmitJson(const Globals& g, const Json& j) { Emit(g, j.dump(1) + "\n"); }

void RequireJson(const Globals& g, const char* verb) {
  if (g.format != "json") throw UsageError(std::string(verb) + " only writes JSON");
}

struct InstanceArgs {
  std::string polytope_file;
  std::string family;
  std::size_t n = 0;
  std::size_t k = 0;
  bool oracle = false;

  void Attach(CLI::App* app) {
    app->add_option("--polytope", polytope_file, "Polytope JSON file");
    app->add_option("--family", family, "Generator family instead of --polytope");
    app->add_option("--n", n, "Dimension / number of cities");
    app->add_option("--k", k, "Cardinality parameter");
    app->add_flag("--oracle", oracle, "Lazy row family where available");
  }

  bool from_family() const { return polytope_file.empty(); }

  Polytope Load(const Globals& g) const {
    if (!polytope_file.empty()) {
      if (!family.empty()) throw UsageError("give either --polytope or --family, not both");
      return PolytopeFromJson(ReadJsonFile(polytope_file));
    }
    if (family.empty()) throw UsageError("an instance is required (--polytope or --family)");
    return BuildInstance({family, n, k, g.seed, oracle});
  }
};

std::optional<RationalVector> ReadVector(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return PointFromJson(ReadJsonFile(path));
}

// ---------------------------------------------------------------------------

int Gen(const Globals& g, const InstanceArgs& args) {
  RequireJson(g, "gen");
  if (args.family.empty()) throw UsageError("gen needs a family name");
  EmitJson(g, PolytopeToJson(args.Load(g)));
  return kExitOk;
}

struct CheckArgs {
  std::string polytope_file;
  std::string tree_file;
  std::string objective_file;
  std::string point_file;
  std::string report_file;
};

int CheckTree(const Globals& g, const CheckArgs& a) {
  RequireJson(g, "check-tree");
  const Polytope p = PolytopeFromJson(ReadJsonFile(a.polytope_file));
  const BBTree tree = TreeFromJson(ReadJsonFile(a.tree_file), p.dim);
  if (!a.objective_file.empty() && !a.point_file.empty()) throw UsageError("give --objective or --point, not both");
  Json out;
  bool ok = false;
  if (!a.report_file.empty()) {
    // LP-free: verify stored certificates only.
    const InfeasibilityReport stored = InfeasibilityReportFromJson(ReadJsonFile(a.report_file));
    ok = VerifyInfeasibilityReport(tree, p, stored);
    out = {{"check", "verify_report"}, {"verified", ok}, {"leaves", stored.leaves.size()}};
  } else if (auto c = ReadVector(a.objective_file)) {
    const SolveReport r = Solves(tree, p, *c);
    ok = r.solved;
    out = SolveReportToJson(r);
  } else if (auto x = ReadVector(a.point_file)) {
    const SeparationReport r = Separates(tree, p, *x);
    ok = r.separates;
    out = SeparationReportToJson(r);
  } else {
    const InfeasibilityReport r = ProvesInfeasibility(tree, p);
    ok = r.proved;
    out = InfeasibilityReportToJson(r);
  }
  out["nodes"] = tree.Size();
  EmitJson(g, out);
  return ok ? kExitOk : kExitFailed;
}

struct RunArgs {
  InstanceArgs instance;
  std::string strategy = "most-fractional";
  std::int64_t m = 2;
  std::string objective_file;
  std::string tree_out;
};

int Run(const Globals& g, const RunArgs& a) {
  const Polytope p = a.instance.Load(g);
  std::optional<RationalVector> objective = ReadVector(a.objective_file);
  if (!objective && a.instance.from_family()) {
    objective = InstanceObjective({a.instance.family, a.instance.n, a.instance.k, g.seed, false});
  }
  SearchBudget budget;
  budget.max_nodes = g.budget_nodes;
  const BranchStrategy strategy = BranchStrategy::Parse(a.strategy, a.m, g.seed);
  const RunReport r = RunBB(p, strategy, objective, budget);
  if (!a.tree_out.empty()) WriteJsonFile(a.tree_out, TreeToJson(r.tree));
  if (g.format == "csv") {
    std::ostringstream csv;
    csv << "strategy,seed,nodes,leaves,status,value\n"
        << strategy.Name() << ',' << g.seed << ',' << r.nodes << ',' << r.leaves << ',' << RunStatusName(r.status)
        << ',' << (r.value ? ToString(*r.value) : "") << '\n';
    Emit(g, csv.str());
  } else {
    Json j = RunReportToJson(r);
    j["strategy"] = strategy.Name();
    j["seed"] = g.seed;
    if (a.tree_out.empty()) j["tree"] = TreeToJson(r.tree);
    EmitJson(g, j);
  }
  return kExitOk;
}

struct MinTreeArgs {
  InstanceArgs instance;
  std::int64_t m = 2;
  std::size_t max_leaves = 8;
  std::string point_file;
};

int MinTree(const Globals& g, const MinTreeArgs& a) {
  const Polytope p = a.instance.Load(g);
  Json j{{"M", a.m}, {"max_leaves", a.max_leaves}, {"caveat", kCaveat}};
  if (auto x = ReadVector(a.point_file)) {
    const ResistanceResult r = SeparationResistance(p, *x, a.m, a.max_leaves);
    j["query"] = "separation_resistance";
    j["result"] = r.found ? "MinLeavesToSeparate" : "MoreThan";
    j["leaves"] = r.leaves;
    j["trees_checked"] = r.trees_checked;
    if (r.tree) j["tree"] = TreeToJson(*r.tree);
  } else {
    const MinTreeResult r = MinTreeSize(p, a.m, a.max_leaves);
    j["query"] = "min_tree_size";
    j["result"] = r.exact ? "Exact" : "MoreThan";
    j["leaves"] = r.leaves;
    if (r.exact) j["nodes"] = 2 * r.leaves - 1;
    j["atoms_visited"] = r.atoms_visited;
  }
  if (g.format == "csv") {
    Emit(g, "query,M,result,leaves\n" + j["query"].get<std::string>() + "," + std::to_string(a.m) + "," +
                j["result"].get<std::string>() + "," + std::to_string(j["leaves"].get<std::size_t>()) + "\n");
  } else {
    EmitJson(g, j);
  }
  return kExitOk;
}

int Experiment(const Globals& g, const std::string& config_file, const CLI::App& app) {
  ExperimentConfig config = ExperimentConfig::FromJson(ReadJsonFile(config_file));
  if (app.get_option("--budget-nodes")->count() > 0) config.budget_nodes = g.budget_nodes;
  config.Validate();
  std::signal(SIGINT, OnInterrupt);
  const ExperimentResult result = RunExperiment(config, &g_interrupted);
  std::signal(SIGINT, SIG_DFL);
  if (g.format == "json") {
    Json rows = Json::array();
    for (const ExperimentRow& r : result.rows) {
      Json row{{"family", r.family}, {"n", r.n},           {"k", r.k},           {"strategy", r.strategy},
               {"seed", r.seed},     {"nodes", r.nodes},   {"leaves", r.leaves}, {"status", r.status},
               {"bound", r.bound}};
      if (!r.tree_file.empty()) row["tree_file"] = r.tree_file;
      rows.push_back(std::move(row));
    }
    EmitJson(g, {{"rows", rows}, {"interrupted", result.interrupted}, {"planned", result.planned}});
  } else {
    Emit(g, ExperimentCsv(result, config.trees_dir.has_value()));
  }
  return result.interrupted ? kExitFailed : kExitOk;
}

struct VerifyArgs {
  std::string fault;
  std::vector<int> only;
};

int VerifyAcceptance(const Globals& g, const VerifyArgs& a) {
  SuiteOptions options;
  if (!a.fault.empty()) {
    if (a.fault != "drop-cross-row") throw UsageError("unknown fault '" + a.fault + "'");
    options.drop_cross_row = true;
  }
  for (int id : a.only) {
    if (id < 1 || id > kCriterionCount) throw UsageError("criteria are numbered 1.." + std::to_string(kCriterionCount));
    options.only.insert(id);
  }
  std::ostringstream text;
  const SuiteReport report = RunAcceptanceSuite(options, [&](const CriterionResult& r) {
    const std::string line = FormatCriterion(r);
    if (g.out.empty() && g.format != "json") std::cout << line << std::endl;
    text << line << '\n';
  });
  std::size_t passed = 0;
  for (const auto& c : report.criteria) passed += c.passed ? 1 : 0;
  if (g.format == "json") {
    Json items = Json::array();
    for (const auto& c : report.criteria) {
      items.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail},
                       {"seconds", c.seconds}});
    }
    EmitJson(g, {{"criteria", items}, {"passed", passed}, {"all_passed", report.AllPassed()}});
  } else {
    text << passed << "/" << report.criteria.size() << " criteria passed\n";
    if (g.out.empty()) {
      std::cout << passed << "/" << report.criteria.size() << " criteria passed" << std::endl;
    } else {
      Emit(g, text.str());
    }
  }
  return report.AllPassed() ? kExitOk : kExitFailed;
}

int UsageExitCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
    case ErrorCode::kConfigError:
    case ErrorCode::kSpecViolation:
    case ErrorCode::kTooLarge:
    case ErrorCode::kTooLargeForExplicit:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kIndexOutOfRange:
      return kExitUsage;
    default:
      return kExitFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact branch-and-bound tree tools for 0/1 polytopes"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomised generators and strategies");
  app.add_option("--budget-nodes", g.budget_nodes, "Node budget for branch and bound")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "Write output to this file instead of stdout");

  InstanceArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate a polytope");
  gen->add_option("family", gen_args.family, "cross | packing | packing_cover | set_cover | perturbed_cross | tsp_subtour")
      ->required();
  gen->add_option("--n", gen_args.n, "Dimension / number of cities")->required();
  gen->add_option("--k", gen_args.k, "Cardinality parameter");
  gen->add_flag("--oracle", gen_args.oracle, "Lazy row family where available");

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check-tree", "Check a tree against a polytope");
  check->add_option("--polytope", check_args.polytope_file)->required()->check(CLI::ExistingFile);
  check->add_option("--tree", check_args.tree_file)->required()->check(CLI::ExistingFile);
  check->add_option("--objective", check_args.objective_file, "Objective vector: check solves()")
      ->check(CLI::ExistingFile);
  check->add_option("--point", check_args.point_file, "Point x*: check separates()")->check(CLI::ExistingFile);
  check->add_option("--report", check_args.report_file, "Verify a stored infeasibility report without LPs")
      ->check(CLI::ExistingFile);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run branch and bound");
  run_args.instance.Attach(run);
  run->add_option("--strategy", run_args.strategy)->check(CLI::IsMember({"most-fractional", "random-general"}));
  run->add_option("--m", run_args.m, "Coefficient bound for random-general")->check(CLI::PositiveNumber);
  run->add_option("--objective", run_args.objective_file, "Objective vector JSON (maximised)")
      ->check(CLI::ExistingFile);
  run->add_option("--tree-out", run_args.tree_out, "Write the tree JSON here");

  MinTreeArgs min_args;
  CLI::App* min_tree = app.add_subcommand("min-tree", "Exhaustive bounded-coefficient minimal tree search");
  min_args.instance.Attach(min_tree);
  min_tree->add_option("--m", min_args.m, "Coefficient bound M")->check(CLI::Range(1, 3));
  min_tree->add_option("--max-leaves", min_args.max_leaves)->check(CLI::PositiveNumber);
  min_tree->add_option("--point", min_args.point_file, "Point x*: search for separating trees instead")
      ->check(CLI::ExistingFile);

  std::string config_file;
  CLI::App* experiment = app.add_subcommand("experiment", "Run an experiment grid and write CSV");
  experiment->add_option("--config", config_file, "Experiment config JSON")->required()->check(CLI::ExistingFile);

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify-paper", "Run the acceptance suite");
  verify->add_option("--inject-fault", verify_args.fault, "drop-cross-row");
  verify->add_option("--only", verify_args.only, "Criterion numbers to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (g.format.empty() && !verify->parsed()) g.format = experiment->parsed() ? "csv" : "json";

  try {
    if (gen->parsed()) return Gen(g, gen_args);
    if (check->parsed()) return CheckTree(g, check_args);
    if (run->parsed()) return Run(g, run_args);
    if (min_tree->parsed()) return MinTree(g, min_args);
    if (experiment->parsed()) return Experiment(g, config_file, app);
    if (verify->parsed()) return VerifyAcceptance(g, verify_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return UsageExitCode(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
