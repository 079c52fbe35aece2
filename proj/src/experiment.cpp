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

#include "bblab/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>
#include <tuple>

#include "bblab/error.hpp"
#include "bblab/instances.hpp"
#include "bblab/search.hpp"

namespace bblab {
namespace {

[[noreturn]] void ConfigFail(const std::string& what) { throw Error(ErrorCode::kConfigError, what); }

template <typename T>
std::vector<T> ListOrRange(const Json& j, const char* key) {
  std::vector<T> out;
  if (!j.contains(key)) return out;
  const Json& v = j.at(key);
  try {
    if (v.is_array()) {
      for (const Json& x : v) out.push_back(x.get<T>());
    } else if (v.is_object()) {
      const T from = v.at("from").get<T>();
      const T to = v.at("to").get<T>();
      if (to < from) ConfigFail(std::string("empty range for '") + key + "'");
      for (T x = from; x <= to; ++x) out.push_back(x);
    } else {
      out.push_back(v.get<T>());
    }
  } catch (const nlohmann::json::exception& e) {
    ConfigFail(std::string("bad value for '") + key + "': " + e.what());
  }
  return out;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string NodeBound(const std::string& family, std::size_t n, std::size_t k) {
  if (family == "cross") return ToString(Integer((Integer(1) << static_cast<unsigned>(n + 1)) - 1));
  if (family == "packing_cover") {
    return ToString(Rational(MakeRational(2 * (Binomial(n, k) + 1), Integer(static_cast<long>(n))) - 1));
  }
  return "";
}

}  // namespace

std::vector<std::string> FamilyNames() {
  return {"cross", "packing", "packing_cover", "set_cover", "perturbed_cross", "tsp_subtour"};
}

bool FamilyNeedsK(const std::string& family) {
  return family == "packing" || family == "packing_cover" || family == "set_cover";
}

bool FamilyIsRandom(const std::string& family) {
  return family == "perturbed_cross" || family == "tsp_subtour";
}

Polytope BuildInstance(const InstanceRequest& r) {
  if (r.family == "cross") return GenCrossPolytope({r.n, r.oracle});
  if (r.family == "packing") return GenPackingFamily({r.n, r.k, false, r.oracle});
  if (r.family == "packing_cover") return GenPackingFamily({r.n, r.k, true, r.oracle});
  if (r.family == "set_cover") return GenSetCover(r.n, r.k);
  if (r.family == "perturbed_cross") {
    PerturbedSpec spec;
    spec.n = r.n;
    spec.seed = r.seed;
    return GenPerturbedCross(spec);
  }
  if (r.family == "tsp_subtour") {
    Polytope p = GenTspSubtour({r.n, r.oracle});
    p.provenance["seed"] = std::to_string(r.seed);
    return p;
  }
  ConfigFail("unknown family '" + r.family + "'");
}

std::optional<RationalVector> InstanceObjective(const InstanceRequest& r) {
  if (r.family != "tsp_subtour") return std::nullopt;
  std::mt19937_64 rng(r.seed);
  RationalVector c(TspEdgeCount(r.n));
  for (Rational& v : c) {
    const auto num = static_cast<std::int64_t>(1 + rng() % 100);
    const auto den = static_cast<std::int64_t>(1 + rng() % 8);
    v = -MakeRational(num, den);
  }
  return c;
}

ExperimentConfig ExperimentConfig::FromJson(const Json& j) {
  if (!j.is_object()) ConfigFail("experiment config must be a JSON object");
  ExperimentConfig c;
  try {
    if (!j.contains("family")) ConfigFail("config lacks 'family'");
    c.family = j.at("family").get<std::string>();
    c.ns = ListOrRange<std::size_t>(j, "n");
    c.ks = ListOrRange<std::size_t>(j, "k");
    c.seeds = ListOrRange<std::uint64_t>(j, "seeds");
    if (j.contains("strategies")) c.strategies = j.at("strategies").get<std::vector<std::string>>();
    if (j.contains("m")) c.m = j.at("m").get<std::int64_t>();
    if (j.contains("budget_nodes")) c.budget_nodes = j.at("budget_nodes").get<std::uint64_t>();
    if (j.contains("trees_dir")) c.trees_dir = j.at("trees_dir").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    ConfigFail(e.what());
  }
  return c;
}

void ExperimentConfig::Validate() const {
  const auto names = FamilyNames();
  if (std::find(names.begin(), names.end(), family) == names.end()) ConfigFail("unknown family '" + family + "'");
  if (ns.empty()) ConfigFail("no values of n");
  if (FamilyNeedsK(family) && ks.empty()) ConfigFail("family '" + family + "' needs k values");
  if (strategies.empty()) ConfigFail("empty strategy list");
  bool random_strategy = false;
  for (const std::string& s : strategies) {
    BranchStrategy::Parse(s, std::max<std::int64_t>(m, 1));
    random_strategy = random_strategy || s == "random-general";
  }
  if (m < 1) ConfigFail("M must be positive");
  if ((FamilyIsRandom(family) || random_strategy) && seeds.empty()) {
    ConfigFail("randomised family or strategy needs a nonempty seed list");
  }
  if (budget_nodes == 0) ConfigFail("node budget must be positive");
}

bool operator<(const ExperimentRow& a, const ExperimentRow& b) {
  return std::tie(a.family, a.n, a.k, a.strategy, a.seed) < std::tie(b.family, b.n, b.k, b.strategy, b.seed);
}

ExperimentResult RunExperiment(const ExperimentConfig& config, const std::atomic<bool>* stop) {
  config.Validate();
  const std::vector<std::uint64_t> seeds = config.seeds.empty() ? std::vector<std::uint64_t>{0} : config.seeds;
  const std::vector<std::size_t> ks = FamilyNeedsK(config.family) ? config.ks : std::vector<std::size_t>{0};
  std::vector<ExperimentRow> tasks;
  for (std::size_t n : config.ns) {
    for (std::size_t k : ks) {
      for (const std::string& strategy : config.strategies) {
        for (std::uint64_t seed : seeds) {
          ExperimentRow row;
          row.family = config.family;
          row.n = n;
          row.k = k;
          row.strategy = strategy;
          row.seed = seed;
          row.bound = NodeBound(config.family, n, k);
          tasks.push_back(std::move(row));
        }
      }
    }
  }
  std::sort(tasks.begin(), tasks.end());
  tasks.erase(std::unique(tasks.begin(), tasks.end(),
                          [](const ExperimentRow& a, const ExperimentRow& b) { return !(a < b) && !(b < a); }),
              tasks.end());
  if (config.trees_dir) std::filesystem::create_directories(*config.trees_dir);

  std::vector<char> done(tasks.size(), 0);
  ForEachIndex(Execution::kParallel, tasks.size(), [&](std::size_t i) {
    if (stop && stop->load()) return;
    ExperimentRow& row = tasks[i];
    try {
      const InstanceRequest request{row.family, row.n, row.k, row.seed, false};
      const Polytope p = BuildInstance(request);
      SearchBudget budget;
      budget.max_nodes = config.budget_nodes;
      const RunReport report =
          RunBB(p, BranchStrategy::Parse(row.strategy, config.m, row.seed), InstanceObjective(request), budget);
      row.nodes = report.nodes;
      row.leaves = report.leaves;
      row.status = RunStatusName(report.status);
      if (config.trees_dir) {
        std::ostringstream name;
        name << row.family << "_n" << row.n << "_k" << row.k << "_" << row.strategy << "_s" << row.seed << ".json";
        row.tree_file = (std::filesystem::path(*config.trees_dir) / name.str()).string();
        WriteJsonFile(row.tree_file, TreeToJson(report.tree));
      }
    } catch (const Error& e) {
      row.status = "Error:" + std::string(ErrorCodeName(e.code()));
    }
    done[i] = 1;
  });

  ExperimentResult result;
  result.planned = tasks.size();
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (done[i]) {
      result.rows.push_back(std::move(tasks[i]));
    } else {
      result.interrupted = true;
    }
  }
  return result;
}

std::string ExperimentCsv(const ExperimentResult& result, bool with_tree_files) {
  std::ostringstream out;
  out << "family,n,k,strategy,seed,nodes,leaves,status,bound";
  if (with_tree_files) out << ",tree_file";
  out << '\n';
  for (const ExperimentRow& r : result.rows) {
    out << CsvField(r.family) << ',' << r.n << ',' << r.k << ',' << CsvField(r.strategy) << ',' << r.seed << ','
        << r.nodes << ',' << r.leaves << ',' << CsvField(r.status) << ',' << r.bound;
    if (with_tree_files) out << ',' << CsvField(r.tree_file);
    out << '\n';
  }
  if (result.interrupted) {
    out << "# interrupted: " << result.rows.size() << " of " << result.planned << " rows completed\n";
  }
  return out.str();
}

}  // namespace bblab
