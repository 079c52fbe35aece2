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


#include <random>

#include "bblab/bb_core.hpp"
#include "bblab/enumerate.hpp"
#include "bblab/error.hpp"
#include "bblab/instances.hpp"
#include "bblab/search.hpp"
#include "bblab/transforms.hpp"
#include "doctest.h"

using namespace bblab;

namespace {

Rational Q(long p, long q = 1) { return MakeRational(p, q); }

Polytope RandomPolytope(std::mt19937_64& rng, std::size_t n, std::size_t rows) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> rhs(-2, 4);
  Polytope p;
  p.dim = n;
  for (std::size_t i = 0; i < rows; ++i) {
    RationalVector a(n);
    for (auto& v : a) v = coef(rng);
    p.rows.push_back({a, Relation::kLessEqual, MakeRational(rhs(rng), 2)});
  }
  return p;
}

std::vector<RationalVector> ZeroOnePoints(const Polytope& p) {
  std::vector<RationalVector> out;
  for (std::uint32_t m = 0; m < (1u << p.dim); ++m) {
    RationalVector x = MaskToPoint(m, p.dim);
    if (p.Contains(x)) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("tree shape and leaf paths") {
  const BBTree t = FullVariableTree(3, 2);
  CHECK(t.Size() == 7);
  CHECK(t.LeafCount() == 4);
  CHECK(t.Depth() == 2);
  CHECK(t.Dim() == 3);
  const auto paths = t.LeafPaths();
  REQUIRE(paths.size() == 4);
  for (const auto& path : paths) CHECK(path.size() == 2);
  CHECK(BBTree::Leaf().Size() == 1);
  CHECK(BBTree::Leaf().Dim() == 0);
  CHECK_THROWS_AS(Disjunction({0, 0}, 1), Error);
  const Disjunction d({1, -1}, 0);
  CHECK(d.CutsOff({Q(1, 2), Q(0)}));
  CHECK_FALSE(d.CutsOff({Q(1), Q(0)}));
  CHECK(d.RightRow().rhs == 1);
  CHECK(d.RightRow().rel == Relation::kGreaterEqual);
  CHECK_THROWS_AS(BBTree::Branch(d, FullVariableTree(3, 1), BBTree::Leaf()), Error);
}

TEST_CASE("proves_infeasibility: full variable tree matches 0/1 enumeration") {
  std::mt19937_64 rng(5);
  int proved = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + trial % 3;
    const Polytope p = RandomPolytope(rng, n, 3);
    const BBTree t = FullVariableTree(n, n);
    const InfeasibilityReport serial = ProvesInfeasibility(t, p, Execution::kSerial);
    const InfeasibilityReport parallel = ProvesInfeasibility(t, p, Execution::kParallel);
    const bool none = ZeroOnePoints(p).empty();
    CHECK(serial.proved == none);
    CHECK(parallel.proved == none);
    CHECK(VerifyInfeasibilityReport(t, p, serial) == serial.proved);
    if (!serial.proved) {
      REQUIRE(serial.witness_leaf);
      REQUIRE(serial.witness_point);
      const Polytope atom = p.WithRows(t.LeafPaths()[*serial.witness_leaf]);
      CHECK(atom.Contains(*serial.witness_point));
    }
    proved += serial.proved;
  }
  CHECK(proved > 3);
}

TEST_CASE("proves_infeasibility on cross polytopes") {
  for (std::size_t n = 2; n <= 5; ++n) {
    const Polytope p = GenCrossPolytope({n, false});
    CHECK(ProvesInfeasibility(FullVariableTree(n, n), p).proved);
    const InfeasibilityReport shallow = ProvesInfeasibility(FullVariableTree(n, n - 1), p);
    CHECK_FALSE(shallow.proved);
    REQUIRE(shallow.witness_point);
    CHECK(p.Contains(*shallow.witness_point));
  }
}

TEST_CASE("tampered infeasibility reports are rejected") {
  const Polytope p = GenCrossPolytope({3, false});
  const BBTree t = FullVariableTree(3, 3);
  InfeasibilityReport r = ProvesInfeasibility(t, p);
  REQUIRE(r.proved);
  CHECK(VerifyInfeasibilityReport(t, p, r));
  InfeasibilityReport bad = r;
  bad.leaves[2].certificate->rows[0].multiplier *= -1;
  CHECK_FALSE(VerifyInfeasibilityReport(t, p, bad));
  bad = r;
  bad.leaves.pop_back();
  CHECK_FALSE(VerifyInfeasibilityReport(t, p, bad));
  const Polytope other = p.WithoutRow(0);
  CHECK_FALSE(VerifyInfeasibilityReport(t, other, r));
}

TEST_CASE("solves: single leaf iff LP bound equals the 0/1 optimum") {
  std::mt19937_64 rng(9);
  int agree_true = 0;
  int agree_false = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + trial % 2;
    const Polytope p = RandomPolytope(rng, n, 2);
    const auto points = ZeroOnePoints(p);
    if (points.empty()) continue;
    RationalVector c(n);
    for (auto& v : c) v = static_cast<long>(rng() % 7) - 3;
    Rational best = Dot(c, points[0]);
    for (const auto& x : points) best = std::max(best, Dot(c, x));
    const LPOutcome lp = LpOptimize(p, c, Sense::kMaximize);
    const bool expect = *lp.value == best;
    const SolveReport r = Solves(BBTree::Leaf(), p, c);
    CHECK(r.solved == expect);
    (expect ? agree_true : agree_false)++;
    CHECK(Solves(FullVariableTree(n, n), p, c, Execution::kSerial).solved);
    const SolveReport full = Solves(FullVariableTree(n, n), p, c, Execution::kParallel);
    CHECK(full.solved);
    REQUIRE(full.best_integral_value);
    CHECK(*full.best_integral_value == best);
  }
  CHECK(agree_true > 3);
  CHECK(agree_false > 3);
}

TEST_CASE("separates matches a hull oracle over the integer points") {
  std::mt19937_64 rng(13);
  int separated = 0;
  int total = 0;
  for (int trial = 0; trial < 60 && total < 25; ++trial) {
    const Polytope p = RandomPolytope(rng, 3, 2);
    const auto points = ZeroOnePoints(p);
    if (points.empty()) continue;
    const LPOutcome lp = LpOptimize(p, {Q(1), Q(2), Q(3)}, Sense::kMaximize);
    const RationalVector x = *lp.point;
    const bool expect = SeparatingHyperplane(x, points).separable;
    const SeparationReport r = Separates(FullVariableTree(3, 3), p, x);
    CHECK(r.separates == expect);
    if (!r.separates) CHECK(VerifyHullMembership(x, [&] {
      std::vector<Polytope> atoms;
      for (const auto& path : FullVariableTree(3, 3).LeafPaths()) atoms.push_back(p.WithRows(path));
      return atoms;
    }(), r.hull));
    separated += r.separates;
    ++total;
  }
  CHECK(separated > 0);
  CHECK(separated < total);
  CHECK_THROWS_AS(Separates(BBTree::Leaf(), GenCrossPolytope({2, false}), {Q(1), Q(1)}), Error);
}

TEST_CASE("maps: flip, embed and dup images match 0/1 brute force") {
  std::mt19937_64 rng(17);
  const std::vector<AffineMap> maps = {
      MakeFlip({3, {0, 2}}),
      MakeEmbed({3, 1, 1, {}}),
      MakeEmbed({3, 2, 1, {4, 0, 2, 1, 3, 5}}),
      MakeDup({3, {1, 1, 0}}),
      Compose(MakeDup({5, {4}}), MakeEmbed({3, 1, 1, {}})),
      Compose(MakeEmbed({3, 1, 0, {}}), MakeFlip({3, {1}})),
  };
  for (int trial = 0; trial < 10; ++trial) {
    const Polytope p = RandomPolytope(rng, 3, 2);
    for (const AffineMap& f : maps) {
      CAPTURE(f.kind());
      CAPTURE(f.out_dim);
      const Polytope image = ApplyMapPolytope(f, p);
      REQUIRE(image.dim == f.out_dim);
      std::vector<RationalVector> expected;
      for (const auto& x : ZeroOnePoints(p)) expected.push_back(f.Apply(x));
      std::sort(expected.begin(), expected.end());
      auto got = ZeroOnePoints(image);
      std::sort(got.begin(), got.end());
      CHECK(got == expected);
    }
  }
}

TEST_CASE("compose agrees with sequential application") {
  const AffineMap f = MakeFlip({2, {1}});
  const AffineMap g = MakeEmbed({2, 1, 0, {2, 0, 1}});
  const AffineMap h = MakeDup({3, {0}});
  const AffineMap all = Compose(h, Compose(g, f));
  CHECK(all.canonical);
  CHECK(all.steps.size() == 3);
  for (std::uint32_t m = 0; m < 4; ++m) {
    const RationalVector x = MaskToPoint(m, 2);
    CHECK(all.Apply(x) == h.Apply(g.Apply(f.Apply(x))));
  }
  CHECK_THROWS_AS(Compose(f, h), Error);
}

TEST_CASE("map argument errors") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternalError;
  };
  CHECK(code([] { MakeFlip({3, {3}}); }) == ErrorCode::kSpecViolation);
  CHECK(code([] { MakeEmbed({2, 1, 0, {0, 0, 1}}); }) == ErrorCode::kInvalidPermutation);
  CHECK(code([] { MakeEmbed({2, 1, 0, {0, 1}}); }) == ErrorCode::kInvalidPermutation);
  CHECK(code([] { MakeDup({2, {2}}); }) == ErrorCode::kIndexOutOfRange);
  const AffineMap raw = AffineMap::FromMatrix({{1, 1}}, {0});
  CHECK_FALSE(raw.canonical);
  CHECK(code([&] { ApplyMapPolytope(raw, GenCrossPolytope({2, false})); }) == ErrorCode::kNonCanonicalMap);
}

TEST_CASE("transformed trees keep size and infeasibility proofs") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const Polytope p = GenCrossPolytope({n, false});
    const std::vector<AffineMap> maps = {MakeFlip({n, {0}}), MakeEmbed({n, 1, 1, {}}), MakeDup({n, {0, n - 1}})};
    for (const AffineMap& f : maps) {
      const Polytope image = ApplyMapPolytope(f, p);
      const RunReport hat = RunBB(image, BranchStrategy::MostFractional(), std::nullopt, {});
      REQUIRE(hat.status == RunReport::Status::kProvedInfeasible);
      const BBTree t = TransformTree(hat.tree, f);
      CHECK(t.Size() == hat.tree.Size());
      CHECK(t.Dim() == n);
      CHECK(ProvesInfeasibility(t, p).proved);
      if (!hat.tree.is_leaf()) {
        const Disjunction& dh = hat.tree.disjunction();
        const Disjunction& d = t.disjunction();
        CHECK(d.pi() == f.TransposeApply(dh.pi()));
        Integer shift = 0;
        for (std::size_t i = 0; i < f.out_dim; ++i) shift += dh.pi()[i] * f.d[i];
        CHECK(d.pi0() == dh.pi0() - shift);
      }
    }
  }
}

TEST_CASE("transformed trees keep separation") {
  const Polytope p = GenPackingFamily({4, 2, false, false});
  const RationalVector x(4, Q(1, 2));
  REQUIRE(p.Contains(x));
  const AffineMap f = MakeFlip({4, {1, 3}});
  const Polytope image = ApplyMapPolytope(f, p);
  const BBTree hat = FullVariableTree(4, 4);
  const SeparationReport rh = Separates(hat, image, f.Apply(x));
  const SeparationReport r = Separates(TransformTree(hat, f), p, x);
  CHECK(rh.separates == r.separates);
}
