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

#include <iostream>

#include "bblab/acceptance_suite.hpp"

int main() {
  const bblab::SuiteReport report = bblab::RunAcceptanceSuite({}, [](const bblab::CriterionResult& r) {
    std::cout << bblab::FormatCriterion(r) << std::endl;
  });
  std::size_t passed = 0;
  for (const auto& c : report.criteria) passed += c.passed ? 1 : 0;
  std::cout << passed << "/" << report.criteria.size() << " criteria passed" << std::endl;
  return report.AllPassed() ? 0 : 1;
}
