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

#include <algorithm>
#include <random>

#include "bblab/bb_core.hpp"
#include "bblab/enumerate.hpp"
#include "bblab/error.hpp"
#include "bblab/instances.hpp"
#include "bblab/search.hpp"
#include "doctest.h"

using namespace bblab;

namespace {

Rational Q(long p, long q = 1) { return MakeRational(p, q); }

// Path of a node in the tree.
const BBTree& Follow(const BBTree& root, const std::vector<bool>& path) {
  const BBTree* node = &root;
  for (bool right : path) node = right ? &node->right() : &node->left();
  return *node;
}

void CheckRunInvariants(const RunReport& r, const Polytope& p) {
  CHECK(r.nodes == 2 * r.leaves - 1);
  CHECK(r.internal.size() == r.leaves - 1);
  for (const NodeRecord& rec : r.internal) {
    const BBTree& node = Follow(r.tree, rec.path);
    REQUIRE_FALSE(node.is_leaf());
    CHECK(node.disjunction() == rec.disjunction);
    CHECK(rec.disjunction.CutsOff(rec.lp_point));
    CHECK(p.Contains(rec.lp_point));
  }
}

Rational BruteForceMax(const Polytope& p, const RationalVector& c) {
  const auto points = EnumIntegerPoints(p);
  REQUIRE_FALSE(points.empty());
  Rational best = Dot(c, points.front());
  for (const auto& x : points) best = std::max(best, Dot(c, x));
  return best;
}

Polytope Box(std::size_t n) {
  Polytope p;
  p.dim = n;
  return p;
}

}  // namespace

TEST_CASE("run_bb on the cross polytope builds the full tree") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const Polytope p = GenCrossPolytope({n, false});
    const RunReport r = RunBB(p, BranchStrategy::MostFractional(), std::nullopt, {});
    CHECK(r.status == RunReport::Status::kProvedInfeasible);
    CHECK(r.nodes == (std::size_t{2} << n) - 1);
    CheckRunInvariants(r, p);
    CHECK(ProvesInfeasibility(r.tree, p).proved);
  }
}

TEST_CASE("run_bb solves packing with an objective") {
  const Polytope p = GenPackingFamily({4, 2, false, false});
  const RationalVector c(4, 1);
  const RunReport r = RunBB(p, BranchStrategy::MostFractional(), c, {});
  REQUIRE(r.status == RunReport::Status::kSolved);
  CHECK(*r.value == 1);
  CHECK(p.Contains(*r.point));
  CHECK(Solves(r.tree, p, c).solved);
  CheckRunInvariants(r, p);
}

TEST_CASE("run_bb respects the node budget") {
  SearchBudget budget;
  budget.max_nodes = 1;
  const RunReport r = RunBB(GenCrossPolytope({3, false}), BranchStrategy::MostFractional(), std::nullopt, budget);
  CHECK(r.status == RunReport::Status::kBudgetExceeded);
  CHECK(r.nodes == 1);
  budget.max_nodes = 7;
  const RunReport s = RunBB(GenCrossPolytope({3, false}), BranchStrategy::MostFractional(), std::nullopt, budget);
  CHECK(s.status == RunReport::Status::kBudgetExceeded);
  CHECK(s.nodes <= 7);
}

TEST_CASE("run_bb matches brute-force optima on random instances") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> coeff(-6, 6);
  int solved = 0;
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 4;
    Polytope p = Box(n);
    for (int r = 0; r < 3; ++r) {
      LinearConstraint row;
      row.coeffs.resize(n);
      for (auto& v : row.coeffs) v = coeff(rng);
      row.rel = Relation::kLessEqual;
      row.rhs = MakeRational(coeff(rng) + 6, 2);
      p.rows.push_back(row);
    }
    RationalVector c(n);
    for (auto& v : c) v = coeff(rng);
    const bool has_point = !EnumIntegerPoints(p).empty();
    for (const BranchStrategy& s : {BranchStrategy::MostFractional(), BranchStrategy::RandomGeneral(2, t)}) {
      const RunReport r = RunBB(p, s, c, {});
      CheckRunInvariants(r, p);
      if (has_point) {
        REQUIRE(r.status == RunReport::Status::kSolved);
        CHECK(*r.value == BruteForceMax(p, c));
        CHECK(Solves(r.tree, p, c).solved);
        ++solved;
      } else {
        CHECK(r.status == RunReport::Status::kProvedInfeasible);
        CHECK(ProvesInfeasibility(r.tree, p).proved);
      }
    }
  }
  CHECK(solved > 20);
}

TEST_CASE("random general strategy proves infeasibility") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Polytope p = GenPackingFamily({5, 2, true, false});
    const RunReport r = RunBB(p, BranchStrategy::RandomGeneral(3, seed), std::nullopt, {});
    CHECK(r.status == RunReport::Status::kProvedInfeasible);
    CheckRunInvariants(r, p);
    CHECK(ProvesInfeasibility(r.tree, p).proved);
    const RunReport again = RunBB(p, BranchStrategy::RandomGeneral(3, seed), std::nullopt, {});
    CHECK(again.tree == r.tree);
  }
}

TEST_CASE("fixed sequence strategy") {
  const Polytope p = GenCrossPolytope({2, false});
  const std::vector<Disjunction> seq{Disjunction::Variable(2, 0, 0), Disjunction::Variable(2, 1, 0)};
  const RunReport r = RunBB(p, BranchStrategy::FixedSequence(seq), std::nullopt, {});
  CHECK(r.status == RunReport::Status::kProvedInfeasible);
  CHECK(r.nodes == 7);
  try {
    RunBB(p, BranchStrategy::FixedSequence({Disjunction::Variable(2, 0, 0)}), std::nullopt, {});
    FAIL("expected StrategyStuck");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kStrategyStuck);
  }
}

TEST_CASE("candidate directions") {
  CHECK(CandidateDirections(2, 1).size() == 4);
  CHECK(CandidateDirections(3, 2).size() == 62);
  for (const auto& pi : CandidateDirections(2, 2)) {
    const auto first = std::find_if(pi.begin(), pi.end(), [](const Integer& v) { return v != 0; });
    REQUIRE(first != pi.end());
    CHECK(*first > 0);
  }
}

TEST_CASE("minimum tree size on small cross polytopes") {
  const Polytope p1 = GenCrossPolytope({1, false});
  const Polytope p2 = GenCrossPolytope({2, false});
  for (std::int64_t m = 1; m <= 3; ++m) {
    const MinTreeResult r1 = MinTreeSize(p1, m, 8);
    CHECK(r1.exact);
    CHECK(r1.leaves == 2);
  }
  for (std::int64_t m = 1; m <= 2; ++m) {
    const MinTreeResult r2 = MinTreeSize(p2, m, 8);
    CHECK(r2.exact);
    CHECK(r2.leaves == 4);
  }
  const MinTreeResult over = MinTreeSize(p2, 2, 3);
  CHECK_FALSE(over.exact);
  CHECK(over.leaves == 3);

  try {
    MinTreeSize(Box(1), 1, 4);
    FAIL("expected PNotInfeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPNotInfeasible);
  }
  CHECK_THROWS_AS(MinTreeSize(GenCrossPolytope({4, false}), 1, 4), Error);
  CHECK_THROWS_AS(MinTreeSize(p1, 4, 4), Error);
}

TEST_CASE("minimum tree size agrees with enumeration") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coeff(-3, 3);
  int checked = 0;
  for (int t = 0; t < 40 && checked < 8; ++t) {
    // P2 cut by a random halfspace through a neighbourhood of (1/2)1.
    Polytope p = GenCrossPolytope({2, false});
    LinearConstraint row;
    row.coeffs = {Rational(coeff(rng)), Rational(coeff(rng))};
    row.rel = Relation::kLessEqual;
    row.rhs = Dot(row.coeffs, HalfPoint(2)) + MakeRational(coeff(rng), 4);
    p.rows.push_back(row);
    if (FirstZeroOnePoint(p) || LpFeasible(p).empty()) continue;
    ++checked;
    const MinTreeResult r = MinTreeSize(p, 1, 4);
    std::optional<std::size_t> best;
    for (const BBTree& tree : EnumerateTrees(p, 1, 4)) {
      if (ProvesInfeasibility(tree, p, Execution::kSerial).proved) {
        best = tree.LeafCount();
        break;
      }
    }
    CHECK(r.exact == best.has_value());
    if (best) CHECK(r.leaves == *best);
  }
  CHECK(checked >= 4);
}

TEST_CASE("no three-leaf tree proves the square cross polytope infeasible") {
  const Polytope p2 = GenCrossPolytope({2, false});
  const auto trees = EnumerateTrees(p2, 2, 3);
  CHECK(trees.size() > 100);
  for (const BBTree& tree : trees) {
    CHECK(tree.LeafCount() <= 3);
    CHECK_FALSE(ProvesInfeasibility(tree, p2, Execution::kSerial).proved);
  }
}

TEST_CASE("separation resistance") {
  Polytope p = Box(2);
  p.rows.push_back({{Q(1), Q(1)}, Relation::kLessEqual, Q(3, 2)});
  const ResistanceResult r = SeparationResistance(p, {Q(3, 4), Q(3, 4)}, 1, 4);
  REQUIRE(r.found);
  CHECK(r.leaves == 2);
  CHECK(Separates(*r.tree, p, {Q(3, 4), Q(3, 4)}).separates);

  // x2 <= 0 or x2 >= 1 leaves (1/2,0) and (1/2,1); a second split empties one side.
  const Polytope p2 = GenCrossPolytope({2, false});
  const ResistanceResult three = SeparationResistance(p2, HalfPoint(2), 2, 3);
  REQUIRE(three.found);
  CHECK(three.leaves == 3);
  CHECK(Separates(*three.tree, p2, HalfPoint(2)).separates);
  const ResistanceResult hard = SeparationResistance(p2, HalfPoint(2), 2, 2);
  CHECK_FALSE(hard.found);
  CHECK(hard.leaves == 2);

  // Replay a random sample of the enumerated trees.
  const auto trees = EnumerateTrees(p2, 2, 2);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    const BBTree& tree = trees[rng() % trees.size()];
    CHECK_FALSE(Separates(tree, p2, HalfPoint(2)).separates);
  }

  try {
    SeparationResistance(Box(1), {Q(1, 2)}, 1, 3);
    FAIL("expected PointInHull");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPointInHull);
  }
  CHECK_THROWS_AS(SeparationResistance(p2, {Q(0), Q(0)}, 1, 3), Error);
}
