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

#include "bblab/bb_tree.hpp"

#include <algorithm>
#include <functional>

#include "bblab/error.hpp"

namespace bblab {

Disjunction::Disjunction(IntegerVector pi, Integer pi0) : pi_(std::move(pi)), pi0_(std::move(pi0)) {
  if (std::all_of(pi_.begin(), pi_.end(), [](const Integer& v) { return v == 0; })) {
    throw Error(ErrorCode::kIllegalDisjunction, "disjunction with an all-zero pi");
  }
}

Disjunction Disjunction::Variable(std::size_t n, std::size_t j, const Integer& floor_value) {
  IntegerVector pi(n, Integer(0));
  pi[j] = 1;
  return Disjunction(std::move(pi), floor_value);
}

LinearConstraint Disjunction::LeftRow() const {
  return {ToRational(pi_), Relation::kLessEqual, Rational(pi0_)};
}

LinearConstraint Disjunction::RightRow() const {
  return {ToRational(pi_), Relation::kGreaterEqual, Rational(pi0_ + 1)};
}

bool Disjunction::CutsOff(const RationalVector& x) const {
  const Rational v = Dot(pi_, x);
  return v > pi0_ && v < pi0_ + 1;
}

BBTree::BBTree() = default;

BBTree BBTree::Branch(Disjunction disjunction, BBTree left, BBTree right) {
  const std::size_t n = disjunction.dim();
  for (const BBTree* child : {&left, &right}) {
    const std::size_t d = child->Dim();
    if (d != 0 && d != n) throw Error(ErrorCode::kDimensionMismatch, "subtree dimension differs");
  }
  return BBTree(std::make_shared<const Node>(Node{std::move(disjunction), std::move(left), std::move(right)}));
}

const Disjunction& BBTree::disjunction() const {
  if (!node_) throw Error(ErrorCode::kPreconditionViolated, "leaf has no disjunction");
  return node_->disjunction;
}

const BBTree& BBTree::left() const {
  if (!node_) throw Error(ErrorCode::kPreconditionViolated, "leaf has no children");
  return node_->left;
}

const BBTree& BBTree::right() const {
  if (!node_) throw Error(ErrorCode::kPreconditionViolated, "leaf has no children");
  return node_->right;
}

std::size_t BBTree::LeafCount() const {
  return node_ ? node_->left.LeafCount() + node_->right.LeafCount() : 1;
}

std::size_t BBTree::Size() const { return 2 * LeafCount() - 1; }

std::size_t BBTree::Depth() const {
  return node_ ? 1 + std::max(node_->left.Depth(), node_->right.Depth()) : 0;
}

std::size_t BBTree::Dim() const { return node_ ? node_->disjunction.dim() : 0; }

std::vector<std::vector<LinearConstraint>> BBTree::LeafPaths() const {
  std::vector<std::vector<LinearConstraint>> out;
  std::vector<LinearConstraint> path;
  std::function<void(const BBTree&)> walk = [&](const BBTree& t) {
    if (t.is_leaf()) {
      out.push_back(path);
      return;
    }
    path.push_back(t.disjunction().LeftRow());
    walk(t.left());
    path.back() = t.disjunction().RightRow();
    walk(t.right());
    path.pop_back();
  };
  walk(*this);
  return out;
}

bool operator==(const BBTree& a, const BBTree& b) {
  if (a.is_leaf() || b.is_leaf()) return a.is_leaf() && b.is_leaf();
  if (a.node_ == b.node_) return true;
  return a.disjunction() == b.disjunction() && a.left() == b.left() && a.right() == b.right();
}

BBTree FullVariableTree(std::size_t n, std::size_t depth) {
  std::function<BBTree(std::size_t)> build = [&](std::size_t j) {
    if (j == depth) return BBTree::Leaf();
    BBTree sub = build(j + 1);
    return BBTree::Branch(Disjunction::Variable(n, j, 0), sub, sub);
  };
  if (depth > n) throw Error(ErrorCode::kPreconditionViolated, "depth exceeds dimension");
  return build(0);
}

}  // namespace bblab
