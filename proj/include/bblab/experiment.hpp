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

#ifndef BBLAB_EXPERIMENT_HPP_
#define BBLAB_EXPERIMENT_HPP_

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bblab/json_io.hpp"
#include "bblab/polytope.hpp"

namespace bblab {

// Families known to `gen` and `experiment`.
std::vector<std::string> FamilyNames();
bool FamilyNeedsK(const std::string& family);
bool FamilyIsRandom(const std::string& family);

struct InstanceRequest {
  std::string family;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  bool oracle = false;
};

// Throws kConfigError for unknown families, generator errors otherwise.
Polytope BuildInstance(const InstanceRequest& request);
// Seeded objective for families that are optimisation problems (TSP:
// maximise minus random positive rational edge weights).
std::optional<RationalVector> InstanceObjective(const InstanceRequest& request);

struct ExperimentConfig {
  std::string family;
  std::vector<std::size_t> ns;
  std::vector<std::size_t> ks;
  std::vector<std::string> strategies;
  std::vector<std::uint64_t> seeds;
  std::int64_t m = 2;
  std::uint64_t budget_nodes = 100000;
  std::optional<std::string> trees_dir;

  // "n": [lo, hi] range object {"from": a, "to": b} or explicit list.
  static ExperimentConfig FromJson(const Json& j);
  // Throws kConfigError.
  void Validate() const;
};

struct ExperimentRow {
  std::string family;
  std::size_t n = 0;
  std::size_t k = 0;
  std::string strategy;
  std::uint64_t seed = 0;
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  std::string status;
  std::string bound;  // known node lower bound where one exists
  std::string tree_file;

  friend bool operator<(const ExperimentRow& a, const ExperimentRow& b);
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // sorted
  std::size_t planned = 0;
  bool interrupted = false;
};

// Rows run in parallel; `stop` is polled before each row starts.
ExperimentResult RunExperiment(const ExperimentConfig& config, const std::atomic<bool>* stop = nullptr);

std::string ExperimentCsv(const ExperimentResult& result, bool with_tree_files);

}  // namespace bblab

#endif  // BBLAB_EXPERIMENT_HPP_
