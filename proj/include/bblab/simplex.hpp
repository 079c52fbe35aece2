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

#ifndef BBLAB_SIMPLEX_HPP_
#define BBLAB_SIMPLEX_HPP_

#include <optional>
#include <vector>

#include "bblab/rational.hpp"

namespace bblab {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct LinearConstraint {
  RationalVector coeffs;
  Relation rel = Relation::kLessEqual;
  Rational rhs;

  Rational Lhs(const RationalVector& x) const { return Dot(coeffs, x); }
  bool SatisfiedBy(const RationalVector& x) const;
  // How far x is from satisfying the row; zero when satisfied.
  Rational Violation(const RationalVector& x) const;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

enum class Sense { kMaximize, kMinimize };

// Dense LP over exact rationals:  opt c·x  s.t.  rows,  lower <= x <= upper.
// Missing bounds mean the variable is unbounded in that direction.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;
  std::vector<LinearConstraint> rows;
  RationalVector objective;  // empty: pure feasibility
  Sense sense = Sense::kMaximize;

  // Variables in [0, 1].
  static LinearProgram Box(std::size_t n);
  // Variables with no bounds at all.
  static LinearProgram Free(std::size_t n);
};

struct SimplexResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kInfeasible;
  RationalVector x;
  Rational value;

  // Farkas data when infeasible.  sum_i row_multipliers[i]*(a_i, b_i)
  //   + sum_j lower_multipliers[j]*(-e_j, -l_j)
  //   + sum_j upper_multipliers[j]*(e_j, u_j)  =  (0, negative).
  // Sign of row_multipliers[i]: >= 0 for <= rows, <= 0 for >= rows, free for
  // equalities.  Bound multipliers are >= 0.
  RationalVector row_multipliers;
  RationalVector lower_multipliers;
  RationalVector upper_multipliers;

  std::size_t pivots = 0;
};

// Two-phase primal simplex with Bland's rule. Farkas multipliers are read
// off the phase-1 reduced costs and re-verified before returning.
SimplexResult SolveLp(const LinearProgram& lp);

// Independent check of a Farkas combination in the form documented above.
bool VerifyFarkas(const LinearProgram& lp, const SimplexResult& result);

}  // namespace bblab

#endif  // BBLAB_SIMPLEX_HPP_
