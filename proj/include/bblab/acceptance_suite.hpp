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

#ifndef BBLAB_ACCEPTANCE_SUITE_HPP_
#define BBLAB_ACCEPTANCE_SUITE_HPP_

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace bblab {

struct SuiteOptions {
  // Fault injection: every cross polytope loses its first row.
  bool drop_cross_row = false;
  // Criteria to run; empty runs all.
  std::set<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteReport {
  std::vector<CriterionResult> criteria;
  bool AllPassed() const;
};

inline constexpr int kCriterionCount = 11;

// Runs the acceptance criteria in order; `on_result` sees each one as it
// finishes.
SuiteReport RunAcceptanceSuite(const SuiteOptions& options,
                          const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS  3  name  (1.2 s)  detail"
std::string FormatCriterion(const CriterionResult& result);

}  // namespace bblab

#endif  // BBLAB_ACCEPTANCE_SUITE_HPP_
