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

#ifndef BBLAB_BB_TREE_HPP_
#define BBLAB_BB_TREE_HPP_

#include <memory>
#include <vector>

#include "bblab/rational.hpp"
#include "bblab/simplex.hpp"

namespace bblab {

// Legal split  pi·x <= pi0  ∨  pi·x >= pi0 + 1  with integer data.
class Disjunction {
 public:
  // Throws kIllegalDisjunction when pi is all zero.
  Disjunction(IntegerVector pi, Integer pi0);

  static Disjunction Variable(std::size_t n, std::size_t j, const Integer& floor_value);

  const IntegerVector& pi() const { return pi_; }
  const Integer& pi0() const { return pi0_; }
  std::size_t dim() const { return pi_.size(); }

  LinearConstraint LeftRow() const;   // pi·x <= pi0
  LinearConstraint RightRow() const;  // pi·x >= pi0 + 1

  // True iff pi·x lies strictly between pi0 and pi0 + 1.
  bool CutsOff(const RationalVector& x) const;

  friend bool operator==(const Disjunction&, const Disjunction&) = default;

 private:
  IntegerVector pi_;
  Integer pi0_;
};

// Immutable full binary tree. Left children add LeftRow(), right children
// RightRow(). Subtrees are shared, so copies are cheap.
class BBTree {
 public:
  BBTree();  // a single leaf
  static BBTree Leaf() { return BBTree(); }
  static BBTree Branch(Disjunction disjunction, BBTree left, BBTree right);

  bool is_leaf() const { return node_ == nullptr; }
  const Disjunction& disjunction() const;
  const BBTree& left() const;
  const BBTree& right() const;

  std::size_t Size() const;
  std::size_t LeafCount() const;
  std::size_t Depth() const;
  // Common dimension of all disjunctions; 0 for a single leaf.
  std::size_t Dim() const;

  // Branching constraints C_v of every leaf, left to right.
  std::vector<std::vector<LinearConstraint>> LeafPaths() const;

  friend bool operator==(const BBTree& a, const BBTree& b);

 private:
  struct Node;
  explicit BBTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct BBTree::Node {
  Disjunction disjunction;
  BBTree left;
  BBTree right;
};

// Branches on x_0, ..., x_{depth-1} in order, x_j <= 0 ∨ x_j >= 1.
BBTree FullVariableTree(std::size_t n, std::size_t depth);

}  // namespace bblab

#endif  // BBLAB_BB_TREE_HPP_
