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

#ifndef BBLAB_EXACT_LP_HPP_
#define BBLAB_EXACT_LP_HPP_

#include <optional>
#include <span>
#include <vector>

#include "bblab/parallel.hpp"
#include "bblab/polytope.hpp"
#include "bblab/rational.hpp"
#include "bblab/simplex.hpp"

namespace bblab {

// Where a certificate row comes from; `index` is the explicit row, the
// branching row, or the variable, depending on the origin.
enum class RowOrigin { kBase, kOracle, kBranching, kLowerBound, kUpperBound };

struct CertificateRow {
  RowOrigin origin = RowOrigin::kBase;
  std::size_t index = 0;
  LinearConstraint row;  // always in <= form
  Rational multiplier;   // > 0
};

// Nonnegative combination of <= rows that reads 0·x <= negative.
struct FarkasCertificate {
  std::vector<CertificateRow> rows;

  // Pure arithmetic check: multipliers >= 0, sum y·a = 0, sum y·b < 0.
  bool Verify(std::size_t dim) const;
};

// Checks that every certificate row really belongs to P ∩ {branching}:
// explicit rows, oracle-family rows, branching rows, or box bounds.
bool CertificateRowsBelong(const FarkasCertificate& certificate, const Polytope& p,
                           std::span<const LinearConstraint> branching);

struct LPOutcome {
  enum class Status { kFeasible, kInfeasible, kOptimal, kUnbounded };
  Status status = Status::kInfeasible;
  std::optional<RationalVector> point;
  std::optional<Rational> value;
  std::optional<FarkasCertificate> farkas;
  std::size_t cut_rounds = 0;

  bool empty() const { return status == Status::kInfeasible; }
};

// Feasibility of P ∩ {branching}. Large explicit row sets and oracle
// families are handled by lazy row generation.
LPOutcome LpFeasible(const Polytope& p, std::span<const LinearConstraint> branching = {});

LPOutcome LpOptimize(const Polytope& p, const RationalVector& objective, Sense sense,
                     std::span<const LinearConstraint> branching = {});

struct HullMembership {
  bool inside = false;
  bool empty_atom_list = false;
  RationalVector weights;                             // one per atom
  std::vector<std::optional<RationalVector>> witnesses;  // set where weight > 0
};

// Decides x* ∈ conv(∪ atoms) exactly. Every atom needs the box flag.
HullMembership InConvexHullOfUnion(const RationalVector& x_star, const std::vector<Polytope>& atoms,
                                   Execution execution = Execution::kParallel);

// Independent check of an Inside answer: weights form a convex combination
// of witnesses lying in their atoms and reproduce x*.
bool VerifyHullMembership(const RationalVector& x_star, const std::vector<Polytope>& atoms,
                          const HullMembership& membership);

struct Separation {
  bool separable = false;
  RationalVector pi;      // max |pi_i| = 1 when separable
  Rational pi0;
  RationalVector weights; // convex weights over the points when not separable
};

Separation SeparatingHyperplane(const RationalVector& x_star,
                                const std::vector<RationalVector>& hull_points);

// Number of affinely independent points among `points`.
std::size_t AffineRank(const std::vector<RationalVector>& points);

// Rank of a dense rational matrix by Gaussian elimination.
std::size_t MatrixRank(std::vector<RationalVector> rows);

// All vertices of P ∩ {branching} by brute force over tight row subsets,
// sorted lexicographically. dim <= 4.
std::vector<RationalVector> EnumerateVertices(const Polytope& p,
                                              std::span<const LinearConstraint> branching = {});

}  // namespace bblab

#endif  // BBLAB_EXACT_LP_HPP_
