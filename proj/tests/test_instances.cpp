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
#include <set>

#include "bblab/enumerate.hpp"
#include "bblab/error.hpp"
#include "bblab/exact_lp.hpp"
#include "bblab/instances.hpp"
#include "bblab/transforms.hpp"
#include "doctest.h"

using namespace bblab;

namespace {

Rational Q(long p, long q = 1) { return MakeRational(p, q); }

std::set<std::string> RowSet(const std::vector<LinearConstraint>& rows) {
  std::set<std::string> out;
  for (const auto& row : rows) {
    const LinearConstraint c = CanonicalRow(row);
    out.insert(ToString(c.coeffs) + (c.rel == Relation::kEqual ? "=" : "<=") + ToString(c.rhs));
  }
  return out;
}

// Independent evaluation of the cross row LHS for J.
Rational CrossLhs(const RationalVector& x, std::uint64_t j) {
  Rational lhs = 0;
  for (std::size_t i = 0; i < x.size(); ++i) lhs += (j >> i & 1) ? x[i] : Rational(1 - x[i]);
  return lhs;
}

RationalVector RandomPoint(std::mt19937_64& rng, std::size_t n, long den) {
  std::uniform_int_distribution<long> d(0, den);
  RationalVector x(n);
  for (auto& v : x) v = MakeRational(d(rng), den);
  return x;
}

}  // namespace

TEST_CASE("cross polytope rows") {
  const Polytope p1 = GenCrossPolytope({1, false});
  REQUIRE(p1.rows.size() == 2);
  CHECK(p1.Contains({Q(1, 2)}));
  CHECK_FALSE(p1.Contains({Q(0)}));
  CHECK_FALSE(p1.Contains({Q(1)}));
  CHECK_FALSE(p1.Contains({Q(1, 3)}));

  const Polytope p3 = GenCrossPolytope({3, false});
  CHECK(p3.rows.size() == 8);
  CHECK(EnumIntegerPoints(p3).empty());
  CHECK(p3.Contains(HalfPoint(3)));
  CHECK_THROWS_AS(GenCrossPolytope({17, false}), Error);
  CHECK_NOTHROW(GenCrossPolytope({17, true}));
}

TEST_CASE("cross oracle returns the minimum-LHS row") {
  std::mt19937_64 rng(7);
  for (std::size_t n = 1; n <= 8; ++n) {
    const Polytope p = GenCrossPolytope({n, true});
    for (int trial = 0; trial < 20; ++trial) {
      const RationalVector x = RandomPoint(rng, n, 6);
      Rational best = CrossLhs(x, 0);
      for (std::uint64_t j = 1; j < (std::uint64_t{1} << n); ++j) best = std::min(best, CrossLhs(x, j));
      const auto row = p.oracle->Separate(x);
      CHECK(row.has_value() == (best < Q(1, 2)));
      if (row) {
        CHECK(row->Lhs(x) - row->rhs == best - Q(1, 2));
        CHECK(p.oracle->Owns(*row));
      }
    }
  }
  const Polytope p = GenCrossPolytope({5, true});
  CHECK(p.oracle->Separate(RationalVector(5, 0)).has_value());
  CHECK_FALSE(p.oracle->Separate(HalfPoint(5)).has_value());
}

TEST_CASE("cross explicit and oracle modes agree on membership") {
  std::mt19937_64 rng(3);
  const Polytope e = GenCrossPolytope({6, false});
  const Polytope o = GenCrossPolytope({6, true});
  for (int t = 0; t < 200; ++t) {
    const RationalVector x = RandomPoint(rng, 6, 4);
    CHECK(e.Contains(x) == o.Contains(x));
  }
  CHECK(RowSet(e.rows) == RowSet(o.oracle->Materialize()));
}

TEST_CASE("packing family") {
  const Polytope p = GenPackingFamily({4, 2, false, false});
  CHECK(p.rows.size() == 6);
  const auto points = EnumIntegerPoints(p);
  CHECK(points.size() == 5);
  for (const auto& x : points) CHECK(std::count(x.begin(), x.end(), Q(1)) <= 1);

  for (std::size_t n = 4; n <= 8; ++n) {
    for (std::size_t k = 2; 2 * k <= n; ++k) {
      const Polytope qk = GenPackingFamily({n, k, true, false});
      CHECK(qk.rows.size() == Binomial(n, k).get_ui() + 1);
      CHECK(qk.Contains(Constant(n, Q(static_cast<long>(k), static_cast<long>(n)))));
      CHECK(EnumIntegerPoints(qk).empty());
    }
  }
  CHECK_THROWS_AS(GenPackingFamily({5, 3, false, false}), Error);
  CHECK_THROWS_AS(GenPackingFamily({5, 1, false, false}), Error);
}

TEST_CASE("packing oracle picks the k largest coordinates") {
  const Polytope p = GenPackingFamily({5, 2, false, true});
  const auto row = p.oracle->Separate({Q(1, 10), Q(7, 10), Q(1, 2), Q(3, 5), Q(0)});
  REQUIRE(row.has_value());
  CHECK(row->coeffs == RationalVector{Q(0), Q(1), Q(0), Q(1), Q(0)});
  CHECK_FALSE(p.oracle->Separate({Q(1, 2), Q(1, 2), Q(1, 2), Q(1, 2), Q(1, 2)}).has_value());
  const Polytope e = GenPackingFamily({5, 2, false, false});
  CHECK(RowSet(e.rows) == RowSet(p.oracle->Materialize()));
}

TEST_CASE("set cover is the flip image of packing") {
  for (std::size_t n = 4; n <= 8; ++n) {
    for (std::size_t k = 2; 2 * k <= n; ++k) {
      const Polytope cover = GenSetCover(n, k);
      const Polytope packing = GenPackingFamily({n, k, false, false});
      std::vector<std::size_t> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      const Polytope image = ApplyMapPolytope(MakeFlip({n, all}), packing);
      CHECK(RowSet(cover.rows) == RowSet(image.rows));
    }
  }
  CHECK(GenSetCover(4, 2).Contains(RationalVector(4, 1)));
}

TEST_CASE("perturbed cross polytope") {
  PerturbedSpec spec;
  spec.n = 4;
  spec.seed = 11;
  const Polytope a = GenPerturbedCross(spec);
  const Polytope b = GenPerturbedCross(spec);
  CHECK(a.rows.size() == 16);
  CHECK(a.rows == b.rows);
  CHECK(a.provenance.at("variance") == "1/400");
  CHECK(a.provenance.at("rhs") == "8/25");
  for (std::uint64_t in = 0; in < 16; ++in) {
    const LinearConstraint& row = a.rows[in];
    // Moving the constants back: RHS of the original form is 2n/25.
    const long outside = 4 - std::popcount(in);
    CHECK(row.rhs + outside == Q(8, 25));
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK((Integer(1) << 20) % row.coeffs[i].get_den() == 0);
      CHECK(((in >> i & 1) ? row.coeffs[i] > 0 : row.coeffs[i] < 0));
    }
  }
  spec.seed = 12;
  CHECK(GenPerturbedCross(spec).rows != a.rows);
  spec.n = 17;
  CHECK_THROWS_AS(GenPerturbedCross(spec), Error);
}

TEST_CASE("gaussian samples have the requested spread") {
  PerturbedSpec spec;
  spec.seed = 5;
  double sum = 0, sum_sq = 0;
  const int count = 20000;
  for (int t = 0; t < count; ++t) {
    const double g = GaussianSample(spec, static_cast<std::uint64_t>(t), 0).get_d();
    sum += g;
    sum_sq += g * g;
  }
  const double mean = sum / count;
  const double var = sum_sq / count - mean * mean;
  CHECK(std::abs(mean) < 0.002);
  CHECK(var == doctest::Approx(1.0 / 400).epsilon(0.05));
}

TEST_CASE("tsp subtour relaxation") {
  const Polytope t4 = GenTspSubtour({4, false});
  CHECK(t4.dim == 6);
  CHECK(std::count_if(t4.rows.begin(), t4.rows.end(),
                      [](const LinearConstraint& r) { return r.rel == Relation::kEqual; }) == 4);
  CHECK(t4.rows.size() == 7);
  CHECK(GenTspSubtour({10, false}).rows.size() == 10 + 501);
  CHECK_THROWS_AS(GenTspSubtour({13, false}), Error);

  // Hamiltonian cycle 0-1-2-3-4-0 on n = 5.
  const std::size_t n = 5;
  RationalVector cycle(TspEdgeCount(n), 0);
  for (std::size_t v = 0; v < n; ++v) cycle[TspEdgeIndex(n, v, (v + 1) % n)] = 1;
  CHECK(IsHamiltonianCycle(n, cycle));
  CHECK(GenTspSubtour({n, false}).Contains(cycle));

  // Two triangles at 2/3 violate W = {0,1,2}.
  const Polytope t6 = GenTspSubtour({6, true});
  RationalVector x(TspEdgeCount(6), 0);
  for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}) {
    x[TspEdgeIndex(6, u, v)] = Q(2, 3);
  }
  const auto cut = t6.oracle->Separate(x);
  REQUIRE(cut.has_value());
  CHECK(cut->Lhs(x) == 0);
  CHECK_FALSE(IsHamiltonianCycle(6, x));
}

TEST_CASE("tsp integer points are exactly Hamiltonian cycles") {
  for (std::size_t n = 4; n <= 6; ++n) {
    const auto points = EnumIntegerPoints(GenTspSubtour({n, false}));
    // (n-1)!/2 tours.
    std::size_t tours = 1;
    for (std::size_t i = 3; i < n; ++i) tours *= i;
    CHECK(points.size() == tours);
    for (const auto& x : points) CHECK(IsHamiltonianCycle(n, x));
  }
}

TEST_CASE("oracle descriptions round trip") {
  for (const Polytope& p : {GenCrossPolytope({5, true}), GenPackingFamily({6, 3, false, true}),
                            GenTspSubtour({6, true})}) {
    const auto rebuilt = MakeOracle(p.oracle->Describe());
    CHECK(RowSet(rebuilt->Materialize()) == RowSet(p.oracle->Materialize()));
  }
  CHECK_THROWS_AS(MakeOracle({{"family", "nope"}, {"n", "3"}}), Error);
}

TEST_CASE("facet check") {
  CHECK(FacetCheckCardinality(4, 2).facet);
  CHECK(FacetCheckCardinality(4, 2).rank == 4);
  CHECK(FacetCheckCardinality(6, 3).points == 15);
  CHECK(FacetCheckCardinality(6, 3).rank == 6);
  const FacetResult restricted = FacetCheckCardinality(4, 2, std::vector<std::size_t>{0, 1});
  CHECK_FALSE(restricted.facet);
  CHECK(restricted.rank == 2);
  CHECK_THROWS_AS(FacetCheckCardinality(4, 3), Error);
}

TEST_CASE("criticality bound") {
  const Polytope q = GenPackingFamily({4, 2, true, false});
  std::vector<std::size_t> all(q.rows.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const CriticalityResult r = CriticalityBound(q, all);
  REQUIRE(r.verified);
  CHECK(r.bound == Q(5, 2));
  // The cover row is last; removing it admits 0.
  CHECK(r.witnesses.back() == RationalVector(4, 0));
  // Removing the row for S admits χ(S) (possibly among other points).
  for (std::size_t i = 0; i + 1 < q.rows.size(); ++i) {
    const Polytope relaxed = q.WithoutRow(i);
    const RationalVector chi = q.rows[i].coeffs;
    CHECK(relaxed.Contains(chi));
    CHECK(relaxed.Contains(r.witnesses[i]));
  }
  for (std::size_t n = 4; n <= 8; ++n) {
    for (std::size_t k = 2; 2 * k <= n; ++k) {
      const Polytope qk = GenPackingFamily({n, k, true, false});
      std::vector<std::size_t> rows(qk.rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
      const auto res = CriticalityBound(qk, rows);
      CHECK(res.verified);
      CHECK(res.bound == MakeRational(2 * (Binomial(n, k) + 1), Integer(static_cast<long>(n))) - 1);
    }
  }
  // Extra redundant row: removing it keeps Q integer-infeasible.
  Polytope padded = q;
  padded.rows.push_back(VariableBound(4, 0, Relation::kLessEqual, 1));
  const auto bad = CriticalityBound(padded, {padded.rows.size() - 1});
  CHECK_FALSE(bad.verified);
  CHECK(bad.violated_row == padded.rows.size() - 1);

  try {
    CriticalityBound(GenPackingFamily({4, 2, false, false}), {0});
    FAIL("expected PIsFeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPIsFeasible);
  }
}

TEST_CASE("restricted polytope") {
  const Polytope pa = GenPackingFamily({4, 2, false, false});
  const RestrictedPolytope g = GenRestrictedPolytope(pa, RationalVector(4, 1), 1);
  CHECK(g.epsilon0 == 1);
  CHECK(RowSet(g.polytope.rows) == RowSet(GenPackingFamily({4, 2, true, false}).rows));

  Polytope box;
  box.dim = 1;
  try {
    GenRestrictedPolytope(box, {Q(1)}, 1);
    FAIL("expected InequalityValidForP");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInequalityValidForP);
  }
  try {
    GenRestrictedPolytope(pa, RationalVector(4, 1), 0);
    FAIL("expected InequalityInvalidForHull");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInequalityInvalidForHull);
  }

  // LP max of 1·x over P_PA(6,3) is 4 at (2/3)·1, so epsilon0 = 2; epsilon = 1 gives Q(6,3).
  const Polytope pa6 = GenPackingFamily({6, 3, false, false});
  const RestrictedPolytope g6 = GenRestrictedPolytope(pa6, RationalVector(6, 1), 2);
  CHECK(g6.epsilon0 == 2);
  const RestrictedPolytope q6 = GenRestrictedPolytope(pa6, RationalVector(6, 1), 2, Q(1));
  CHECK(RowSet(q6.polytope.rows) == RowSet(GenPackingFamily({6, 3, true, false}).rows));
  CHECK_THROWS_AS(GenRestrictedPolytope(pa6, RationalVector(6, 1), 2, Q(3)), Error);
}

TEST_CASE("high dimensional face") {
  const FaceSpec f = FindHighDimFace(RationalVector(4, 1), 1);
  CHECK(f.fixed == std::vector<int>{1, 1, -1, -1});
  CHECK(f.dimension == 2);
  CHECK(f.min_value == 2);

  const FaceSpec g = FindHighDimFace({Q(1), Q(-1)}, -1);
  CHECK(g.fixed == std::vector<int>{1, -1});
  CHECK(g.min_value == 0);
  CHECK_THROWS_AS(FindHighDimFace(RationalVector(3, 1), 3), Error);

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> coeff(-9, 9);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 7;
    RationalVector pi(n);
    for (auto& v : pi) v = MakeRational(coeff(rng), 1 + (t % 3));
    const Rational pi0 = Dot(pi, HalfPoint(n)) - MakeRational(1 + t % 4, 5);
    const FaceSpec face = FindHighDimFace(pi, pi0);
    CHECK(face.dimension >= n / 2);
    CHECK(face.min_value > pi0);
    // Independent check: every vertex of the face satisfies pi·x > pi0.
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i) {
      if (face.fixed[i] < 0) free.push_back(i);
    }
    for (std::uint32_t m = 0; m < (1u << free.size()); ++m) {
      RationalVector x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = face.fixed[i] < 0 ? 0 : face.fixed[i];
      for (std::size_t b = 0; b < free.size(); ++b) x[free[b]] = (m >> b) & 1;
      CHECK(Dot(pi, x) > pi0);
    }
  }
}

TEST_CASE("shattered sets") {
  std::vector<RationalVector> cube;
  for (std::uint32_t m = 0; m < 8; ++m) cube.push_back(MaskToPoint(m, 3));
  const ShatterResult full = FindShatteredSet(cube, 2);
  REQUIRE(full.found);
  CHECK(full.coords == std::vector<std::size_t>{0, 1});
  CHECK(full.half_point[0] == Q(1, 2));
  CHECK(full.half_point[1] == Q(1, 2));

  const ShatterResult one = FindShatteredSet({{Q(0), Q(0), Q(0)}, {Q(1), Q(1), Q(0)}}, 1);
  REQUIRE(one.found);
  CHECK(one.coords == std::vector<std::size_t>{0});
  CHECK_FALSE(FindShatteredSet({{Q(0), Q(0)}}, 1).found);

  // Sauer-Shelah guarantee, with the half point in conv(F).
  std::mt19937_64 rng(23);
  for (std::size_t k = 1; k <= 3; ++k) {
    Integer threshold = 0;
    for (std::size_t i = 0; i + 1 <= k; ++i) threshold += Binomial(5, i);
    for (int t = 0; t < 30; ++t) {
      std::vector<std::uint32_t> masks(32);
      for (std::uint32_t m = 0; m < 32; ++m) masks[m] = m;
      std::shuffle(masks.begin(), masks.end(), rng);
      const std::size_t size = threshold.get_ui() + 1 + rng() % (32 - threshold.get_ui());
      std::vector<RationalVector> f;
      for (std::size_t i = 0; i < size; ++i) f.push_back(MaskToPoint(masks[i], 5));
      const ShatterResult r = FindShatteredSet(f, k);
      REQUIRE(r.found);
      CHECK(!SeparatingHyperplane(r.half_point, f).separable);
      for (std::size_t c : r.coords) CHECK(r.half_point[c] == Q(1, 2));
    }
  }
}

TEST_CASE("entropy bound") {
  const EntropyResult r = EntropyBoundCheck(10, 4);
  CHECK(r.holds);
  CHECK(r.rhs == 176);
  CHECK(r.lhs_log2 == doctest::Approx(9.7095).epsilon(1e-4));
  CHECK(r.lhs.get_d() == doctest::Approx(837.25).epsilon(1e-3));
  const EntropyResult two = EntropyBoundCheck(2, 1);
  CHECK(two.holds);
  CHECK(two.lhs == 4);
  CHECK(two.rhs == 1);
  CHECK_THROWS_AS(EntropyBoundCheck(4, 4), Error);
  for (std::size_t n = 5; n <= 30; ++n) CHECK(EntropyBoundCheck(n, (4 * n + 9) / 10).holds);
}

TEST_CASE("half points") {
  CHECK(GenHalfPoints(5, 2, 1000).size() == 131);
  CHECK(HalfPointCount(5, 2) == 131);
  CHECK(GenHalfPoints(1, 1, 10) == std::vector<RationalVector>{{Q(1, 2)}});
  CHECK(GenHalfPoints(1, 0, 10).size() == 3);

  const auto sample = GenHalfPoints(8, 3, 50, 9);
  CHECK(sample.size() == 50);
  CHECK(sample == GenHalfPoints(8, 3, 50, 9));
  for (const auto& x : sample) CHECK(std::count(x.begin(), x.end(), Q(1, 2)) >= 3);
}

TEST_CASE("half point feasibility: exact check matches brute force") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    PerturbedSpec spec;
    spec.n = 6;
    spec.seed = seed;
    const Polytope p = GenPerturbedCross(spec);
    for (std::size_t s = 0; s <= 4; ++s) {
      const HalfCheck fast = HalfPointsFeasible(p, s);
      const HalfCheck slow = HalfPointsFeasibleBruteForce(p, s);
      CHECK(fast.all_feasible == slow.all_feasible);
      CHECK(fast.violated_row == slow.violated_row);
      CHECK(HalfPointsFeasible(p, s, Execution::kSerial).violated_row == fast.violated_row);
    }
  }
  const Polytope cross = GenCrossPolytope({6, false});
  CHECK(HalfPointsFeasible(cross, 1).all_feasible);
  CHECK_FALSE(HalfPointsFeasible(cross, 0).all_feasible);
}
