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

#ifndef BBLAB_BB_CORE_HPP_
#define BBLAB_BB_CORE_HPP_

#include <memory>
#include <optional>
#include <vector>

#include "bblab/affine_map.hpp"
#include "bblab/bb_tree.hpp"
#include "bblab/exact_lp.hpp"
#include "bblab/parallel.hpp"
#include "bblab/polytope.hpp"

namespace bblab {

// base ∩ {x : branching}.
struct Atom {
  std::shared_ptr<const Polytope> base;
  std::vector<LinearConstraint> branching;

  Polytope AsPolytope() const { return base->WithRows(branching); }
};

// One atom per leaf, left to right.
std::vector<Atom> AtomsOf(const BBTree& tree, const Polytope& p);

struct LeafReport {
  enum class Status { kEmpty, kNonEmpty, kIntegralOptimum, kDominated, kOpen };
  Status status = Status::kEmpty;
  std::optional<FarkasCertificate> certificate;  // kEmpty
  std::optional<RationalVector> point;           // feasible or integral optimal point
  std::optional<Rational> value;                 // LP optimum over the atom
};

const char* LeafStatusName(LeafReport::Status status);

struct InfeasibilityReport {
  bool proved = false;
  std::vector<LeafReport> leaves;
  std::optional<std::size_t> witness_leaf;
  std::optional<RationalVector> witness_point;
};

InfeasibilityReport ProvesInfeasibility(const BBTree& tree, const Polytope& p,
                                        Execution execution = Execution::kParallel);

// LP-free replay of a Yes answer: each leaf certificate is arithmetically
// valid and built only from that leaf's rows.
bool VerifyInfeasibilityReport(const BBTree& tree, const Polytope& p, const InfeasibilityReport& report);

struct SolveReport {
  bool solved = false;
  std::vector<LeafReport> leaves;
  std::optional<std::size_t> open_leaf;
  std::optional<Rational> best_integral_value;
};

// Leaf conditions: (i) empty atom, (ii) an integral LP optimum exists,
// (iii) LP value at most the best value among leaves meeting (ii).
SolveReport Solves(const BBTree& tree, const Polytope& p, const RationalVector& objective,
                   Execution execution = Execution::kParallel);

struct SeparationReport {
  bool separates = false;
  HullMembership hull;
};

// Throws kPointNotInP unless x* ∈ P.
SeparationReport Separates(const BBTree& tree, const Polytope& p, const RationalVector& x_star,
                           Execution execution = Execution::kParallel);

// Rewrites every split (a, b) of tree_hat as (C^T a, b - a·d). Nodes whose
// C^T a vanishes become x_0 splits that keep the surviving subtree on the
// side that holds on [0,1]^n and the other subtree on an empty side.
BBTree TransformTree(const BBTree& tree_hat, const AffineMap& f);

}  // namespace bblab

#endif  // BBLAB_BB_CORE_HPP_
