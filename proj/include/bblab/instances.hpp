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

#ifndef BBLAB_INSTANCES_HPP_
#define BBLAB_INSTANCES_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bblab/parallel.hpp"
#include "bblab/polytope.hpp"

namespace bblab {

// ---------------------------------------------------------------------------
// Generators

struct CrossSpec {
  std::size_t n = 0;
  bool oracle = false;  // explicit rows only for n <= 16
};

// Row for J (bit i of `j_mask` set iff i ∈ J):
//   sum_{i∈J} x_i + sum_{i∉J} (1 - x_i) >= 1/2.
LinearConstraint CrossRow(std::size_t n, std::uint64_t j_mask);
Polytope GenCrossPolytope(const CrossSpec& spec);

struct PackingSpec {
  std::size_t n = 0;
  std::size_t k = 0;        // 2 <= k <= n/2
  bool with_cover = false;  // adds 1·x >= k
  bool oracle = false;
};

Polytope GenPackingFamily(const PackingSpec& spec);
Polytope GenSetCover(std::size_t n, std::size_t k);

struct PerturbedSpec {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Rational sigma = Rational(1, 20);
  std::int64_t denom = std::int64_t{1} << 20;

  // 1.6n/20 = 2n/25.
  Rational Rhs() const { return MakeRational(2 * static_cast<std::int64_t>(n), 25); }
};

// N(0, sigma^2) sample for row `row_mask`, coordinate `coord`, rounded to the
// nearest multiple of 1/denom. Deterministic in (seed, row_mask, coord).
Rational GaussianSample(const PerturbedSpec& spec, std::uint64_t row_mask, std::size_t coord);
Polytope GenPerturbedCross(const PerturbedSpec& spec);

struct TspSpec {
  std::size_t n = 0;  // cities, n <= 12
  bool oracle = false;
};

std::size_t TspEdgeCount(std::size_t n);
std::size_t TspEdgeIndex(std::size_t n, std::size_t u, std::size_t v);
Polytope GenTspSubtour(const TspSpec& spec);
// Degree-2 0/1 edge vector forming one cycle through all cities.
bool IsHamiltonianCycle(std::size_t n, const RationalVector& x);

// Rebuilds an oracle from RowOracle::Describe() output.
std::shared_ptr<const RowOracle> MakeOracle(const std::map<std::string, std::string>& description);

// ---------------------------------------------------------------------------
// Checkers

struct FacetResult {
  bool facet = false;
  std::size_t rank = 0;
  std::size_t points = 0;
};

// Affine rank of {χ(T) : |T| = k - 1, T ⊆ universe}; universe defaults to [n].
FacetResult FacetCheckCardinality(std::size_t n, std::size_t k,
                                  const std::optional<std::vector<std::size_t>>& universe = std::nullopt);

struct CriticalityResult {
  bool verified = false;
  Rational bound;                        // 2|D|/n - 1 when verified
  std::vector<RationalVector> witnesses; // 0/1 point after removing each row of D
  std::optional<std::size_t> violated_row;
  std::string reason;
};

CriticalityResult CriticalityBound(const Polytope& p, const std::vector<std::size_t>& rows,
                                   Execution execution = Execution::kParallel);

struct RestrictedPolytope {
  Polytope polytope;
  Rational epsilon0;  // max_{x∈P} c·x - delta
  Rational epsilon;   // the value used
};

// P ∩ {c·x >= delta + epsilon}; epsilon defaults to epsilon0.
RestrictedPolytope GenRestrictedPolytope(const Polytope& p, const RationalVector& c, const Rational& delta,
                                         const std::optional<Rational>& epsilon = std::nullopt);

struct FaceSpec {
  std::vector<int> fixed;  // -1 free, else the fixed 0/1 value
  std::size_t dimension = 0;
  Rational min_value;      // min of pi·x over the face
};

FaceSpec FindHighDimFace(const RationalVector& pi, const Rational& pi0);

struct ShatterResult {
  bool found = false;
  std::vector<std::size_t> coords;
  RationalVector half_point;
};

ShatterResult FindShatteredSet(const std::vector<RationalVector>& family, std::size_t k);

struct EntropyResult {
  bool holds = false;
  Rational lhs;        // 2^{n·h(s/n)} = n^n / (s^s (n-s)^{n-s}), exact
  double lhs_log2 = 0; // for display
  Integer rhs;         // sum_{i <= s-1} C(n, i)
};

EntropyResult EntropyBoundCheck(std::size_t n, std::size_t s);

// |Half_s| = sum_{j >= s} C(n, j) 2^{n-j}.
Integer HalfPointCount(std::size_t n, std::size_t s);
std::vector<RationalVector> GenHalfPoints(std::size_t n, std::size_t s, std::uint64_t budget,
                                          std::uint64_t seed = 0);

struct HalfCheck {
  bool all_feasible = true;
  std::optional<std::size_t> violated_row;
};

// Every point of Half_s lies in P. Exact: each row is minimised (and/or
// maximised) over Half_s coordinatewise, so no enumeration is needed.
HalfCheck HalfPointsFeasible(const Polytope& p, std::size_t s, Execution execution = Execution::kParallel);
// Reference: enumerate Half_s and test membership.
HalfCheck HalfPointsFeasibleBruteForce(const Polytope& p, std::size_t s);

Integer Binomial(std::size_t n, std::size_t k);

}  // namespace bblab

#endif  // BBLAB_INSTANCES_HPP_
