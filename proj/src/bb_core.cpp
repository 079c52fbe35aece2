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

#include "bblab/bb_core.hpp"

#include <algorithm>

#include "bblab/enumerate.hpp"
#include "bblab/error.hpp"

namespace bblab {

namespace {

void CheckTreeDim(const BBTree& tree, const Polytope& p) {
  p.Validate();
  const std::size_t d = tree.Dim();
  if (d != 0 && d != p.dim) {
    throw Error(ErrorCode::kDimensionMismatch, "tree disjunctions differ from polytope dim");
  }
}

}  // namespace

const char* LeafStatusName(LeafReport::Status status) {
  switch (status) {
    case LeafReport::Status::kEmpty: return "empty";
    case LeafReport::Status::kNonEmpty: return "nonempty";
    case LeafReport::Status::kIntegralOptimum: return "integral-optimum";
    case LeafReport::Status::kDominated: return "dominated";
    case LeafReport::Status::kOpen: return "open";
  }
  return "unknown";
}

std::vector<Atom> AtomsOf(const BBTree& tree, const Polytope& p) {
  CheckTreeDim(tree, p);
  auto base = std::make_shared<const Polytope>(p);
  std::vector<Atom> atoms;
  for (auto& path : tree.LeafPaths()) atoms.push_back(Atom{base, std::move(path)});
  return atoms;
}

InfeasibilityReport ProvesInfeasibility(const BBTree& tree, const Polytope& p, Execution execution) {
  const std::vector<Atom> atoms = AtomsOf(tree, p);
  InfeasibilityReport report;
  report.leaves.resize(atoms.size());
  ForEachIndex(execution, atoms.size(), [&](std::size_t i) {
    LPOutcome lp = LpFeasible(*atoms[i].base, atoms[i].branching);
    LeafReport& leaf = report.leaves[i];
    if (lp.empty()) {
      leaf.status = LeafReport::Status::kEmpty;
      leaf.certificate = std::move(lp.farkas);
    } else {
      leaf.status = LeafReport::Status::kNonEmpty;
      leaf.point = std::move(lp.point);
    }
  });
  report.proved = true;
  for (std::size_t i = 0; i < report.leaves.size(); ++i) {
    if (report.leaves[i].status == LeafReport::Status::kNonEmpty) {
      report.proved = false;
      report.witness_leaf = i;
      report.witness_point = report.leaves[i].point;
      break;
    }
  }
  return report;
}

bool VerifyInfeasibilityReport(const BBTree& tree, const Polytope& p, const InfeasibilityReport& report) {
  const auto paths = tree.LeafPaths();
  if (!report.proved || report.leaves.size() != paths.size()) return false;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const LeafReport& leaf = report.leaves[i];
    if (leaf.status != LeafReport::Status::kEmpty || !leaf.certificate) return false;
    if (!leaf.certificate->Verify(p.dim)) return false;
    if (!CertificateRowsBelong(*leaf.certificate, p, paths[i])) return false;
  }
  return true;
}

SolveReport Solves(const BBTree& tree, const Polytope& p, const RationalVector& objective,
                   Execution execution) {
  if (objective.size() != p.dim) throw Error(ErrorCode::kDimensionMismatch, "objective length");
  if (!p.box) throw Error(ErrorCode::kPreconditionViolated, "solves() is defined for 0/1 problems");
  const std::vector<Atom> atoms = AtomsOf(tree, p);
  SolveReport report;
  report.leaves.resize(atoms.size());
  ForEachIndex(execution, atoms.size(), [&](std::size_t i) {
    const Atom& atom = atoms[i];
    LeafReport& leaf = report.leaves[i];
    LPOutcome lp = LpOptimize(*atom.base, objective, Sense::kMaximize, atom.branching);
    if (lp.empty()) {
      leaf.status = LeafReport::Status::kEmpty;
      leaf.certificate = std::move(lp.farkas);
      return;
    }
    leaf.value = lp.value;
    leaf.point = std::move(lp.point);
    const RationalVector& x = *leaf.point;
    leaf.status = std::all_of(x.begin(), x.end(), [](const Rational& v) { return IsIntegral(v); })
                      ? LeafReport::Status::kIntegralOptimum
                      : LeafReport::Status::kOpen;
  });
  auto raise_best = [&](const Rational& value) {
    if (!report.best_integral_value || value > *report.best_integral_value) {
      report.best_integral_value = value;
    }
  };
  for (const auto& leaf : report.leaves) {
    if (leaf.status == LeafReport::Status::kIntegralOptimum) raise_best(*leaf.value);
  }

  // Fractional leaves, highest LP value first. A fractional vertex does not
  // rule out an integral optimum elsewhere on the optimal face, so leaves not
  // already dominated get an exact 0/1 search over that face. Later leaves
  // have smaller values and cannot dominate earlier ones, so the outcome does
  // not depend on leaf order.
  std::vector<std::size_t> fractional;
  for (std::size_t i = 0; i < report.leaves.size(); ++i) {
    if (report.leaves[i].status == LeafReport::Status::kOpen) fractional.push_back(i);
  }
  std::stable_sort(fractional.begin(), fractional.end(), [&](std::size_t a, std::size_t b) {
    return *report.leaves[a].value > *report.leaves[b].value;
  });
  for (std::size_t i : fractional) {
    LeafReport& leaf = report.leaves[i];
    if (report.best_integral_value && *leaf.value <= *report.best_integral_value) {
      leaf.status = LeafReport::Status::kDominated;
      continue;
    }
    std::vector<LinearConstraint> face = atoms[i].branching;
    face.push_back({objective, Relation::kEqual, *leaf.value});
    if (auto integral = SearchZeroOnePoint(*atoms[i].base, face)) {
      leaf.status = LeafReport::Status::kIntegralOptimum;
      leaf.point = std::move(integral);
      raise_best(*leaf.value);
    }
  }
  report.solved = true;
  for (std::size_t i = 0; i < report.leaves.size(); ++i) {
    if (report.leaves[i].status == LeafReport::Status::kOpen) {
      report.solved = false;
      report.open_leaf = i;
      break;
    }
  }
  return report;
}

SeparationReport Separates(const BBTree& tree, const Polytope& p, const RationalVector& x_star,
                           Execution execution) {
  CheckTreeDim(tree, p);
  if (x_star.size() != p.dim || !p.Contains(x_star)) {
    throw Error(ErrorCode::kPointNotInP, "x* is not a point of P");
  }
  std::vector<Polytope> atoms;
  for (const Atom& atom : AtomsOf(tree, p)) atoms.push_back(atom.AsPolytope());
  SeparationReport report;
  report.hull = InConvexHullOfUnion(x_star, atoms, execution);
  report.separates = !report.hull.inside;
  return report;
}

BBTree TransformTree(const BBTree& tree_hat, const AffineMap& f) {
  if (tree_hat.is_leaf()) return BBTree::Leaf();
  const Disjunction& split = tree_hat.disjunction();
  if (split.dim() != f.out_dim) {
    throw Error(ErrorCode::kDimensionMismatch, "tree lives in a different dimension than the map output");
  }
  if (f.in_dim == 0) throw Error(ErrorCode::kDimensionMismatch, "map has no input coordinates");
  BBTree left = TransformTree(tree_hat.left(), f);
  BBTree right = TransformTree(tree_hat.right(), f);
  IntegerVector pi = f.TransposeApply(split.pi());
  Integer shift = 0;
  for (std::size_t i = 0; i < f.out_dim; ++i) shift += split.pi()[i] * f.d[i];
  const Integer pi0 = split.pi0() - shift;
  if (std::any_of(pi.begin(), pi.end(), [](const Integer& v) { return v != 0; })) {
    return BBTree::Branch(Disjunction(std::move(pi), pi0), std::move(left), std::move(right));
  }
  // 0 <= pi0 means the left side is identically true; otherwise pi0 <= -1
  // and the right side is.
  IntegerVector unit(f.in_dim, Integer(0));
  if (pi0 >= 0) {
    unit[0] = -1;  // -x_0 <= 0 (true on the box) ∨ -x_0 >= 1 (empty)
    return BBTree::Branch(Disjunction(std::move(unit), Integer(0)), std::move(left), std::move(right));
  }
  unit[0] = 1;  // x_0 <= -1 (empty) ∨ x_0 >= 0 (true on the box)
  return BBTree::Branch(Disjunction(std::move(unit), Integer(-1)), std::move(left), std::move(right));
}

}  // namespace bblab
