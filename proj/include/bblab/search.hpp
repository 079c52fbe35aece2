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

#ifndef BBLAB_SEARCH_HPP_
#define BBLAB_SEARCH_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bblab/bb_tree.hpp"
#include "bblab/parallel.hpp"
#include "bblab/polytope.hpp"

namespace bblab {

struct BranchStrategy {
  enum class Kind { kMostFractional, kRandomGeneral, kFixedSequence };

  Kind kind = Kind::kMostFractional;
  std::int64_t m = 1;        // random-general coefficient bound
  std::uint64_t seed = 0;    // random-general
  std::vector<Disjunction> sequence;  // fixed-sequence

  static BranchStrategy MostFractional() { return {}; }
  static BranchStrategy RandomGeneral(std::int64_t m, std::uint64_t seed);
  static BranchStrategy FixedSequence(std::vector<Disjunction> sequence);

  // "most-fractional", "random-general", "fixed-sequence".
  std::string Name() const;
  // Throws kConfigError on unknown names.
  static BranchStrategy Parse(const std::string& name, std::int64_t m = 2, std::uint64_t seed = 0);
};

struct SearchBudget {
  std::uint64_t max_nodes = 1'000'000;
  std::uint64_t max_leaves = 1'000'000;
  std::int64_t coeff_bound = 2;
  double time_hint = 0;  // advisory, unused by the engine
};

struct NodeRecord {
  std::vector<bool> path;  // false = left child
  Disjunction disjunction;
  RationalVector lp_point;
};

struct RunReport {
  enum class Status { kProvedInfeasible, kSolved, kBudgetExceeded };

  BBTree tree;
  Status status = Status::kBudgetExceeded;
  std::optional<Rational> value;
  std::optional<RationalVector> point;
  std::size_t nodes = 1;
  std::size_t leaves = 1;
  std::size_t lp_solves = 0;
  std::vector<NodeRecord> internal;  // creation order
};

const char* RunStatusName(RunReport::Status status);

// Best-bound branch and bound, maximising `objective` (or c = 0 when absent).
RunReport RunBB(const Polytope& p, const BranchStrategy& strategy,
                const std::optional<RationalVector>& objective, const SearchBudget& budget);

// ---------------------------------------------------------------------------
// Bounded-coefficient exhaustive search (dim <= 3, M <= 3).

inline constexpr std::size_t kMaxSearchDim = 3;
inline constexpr std::int64_t kMaxSearchCoeff = 3;

struct MinTreeResult {
  bool exact = false;
  std::size_t leaves = 0;  // the minimum when exact, else maxLeaves
  std::size_t atoms_visited = 0;
};

MinTreeResult MinTreeSize(const Polytope& p, std::int64_t m, std::size_t max_leaves);

struct ResistanceResult {
  bool found = false;
  std::size_t leaves = 0;  // minimum when found, else maxLeaves
  std::size_t trees_checked = 0;
  std::optional<BBTree> tree;
};

ResistanceResult SeparationResistance(const Polytope& p, const RationalVector& x_star, std::int64_t m,
                                      std::size_t max_leaves, Execution execution = Execution::kParallel);

// Nonzero pi in [-M, M]^n with first nonzero entry positive.
std::vector<IntegerVector> CandidateDirections(std::size_t n, std::int64_t m);

// Every tree with at most `max_leaves` leaves whose disjunctions come from the
// candidate set; empty atoms are never split. Ordered by leaf count.
std::vector<BBTree> EnumerateTrees(const Polytope& p, std::int64_t m, std::size_t max_leaves);

}  // namespace bblab

#endif  // BBLAB_SEARCH_HPP_
