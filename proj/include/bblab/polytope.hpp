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

#ifndef BBLAB_POLYTOPE_HPP_
#define BBLAB_POLYTOPE_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bblab/rational.hpp"
#include "bblab/simplex.hpp"

namespace bblab {

// Scales a row by a positive factor to coprime integer coefficients and
// rewrites >= as <=. Equalities keep '=' with a positive leading coefficient.
LinearConstraint CanonicalRow(const LinearConstraint& row);

// The <= form(s) of a row: one for inequalities, two for equalities.
std::vector<LinearConstraint> LessEqualForms(const LinearConstraint& row);

// Lazy row family: answers "most violated row at x" for exponentially large
// constraint sets.
class RowOracle {
 public:
  virtual ~RowOracle() = default;

  virtual std::size_t dim() const = 0;
  // Number of rows in the family, saturated at UINT64_MAX.
  virtual std::uint64_t family_size() const = 0;
  // Family name plus parameters; enough to rebuild the oracle.
  virtual std::map<std::string, std::string> Describe() const = 0;

  virtual std::optional<LinearConstraint> Separate(const RationalVector& x) const = 0;
  // True iff `row` is a positive multiple of a family member.
  virtual bool Owns(const LinearConstraint& row) const = 0;
  virtual std::vector<LinearConstraint> Materialize() const = 0;
};

struct Polytope {
  std::size_t dim = 0;
  std::vector<LinearConstraint> rows;
  // When set, 0 <= x <= 1 is part of the description.
  bool box = true;
  std::shared_ptr<const RowOracle> oracle;
  // Generator metadata (family, parameters, seed, rounding denominator).
  std::map<std::string, std::string> provenance;

  // Throws kDimensionMismatch on malformed rows or oracle.
  void Validate() const;

  bool InBox(const RationalVector& x) const;
  bool Contains(const RationalVector& x) const;

  // Most violated explicit row or oracle row at x; box bounds excluded.
  std::optional<LinearConstraint> MostViolated(const RationalVector& x) const;

  // Explicit rows plus materialized oracle rows.
  std::vector<LinearConstraint> AllRows() const;

  std::uint64_t FamilySize() const;

  Polytope WithRows(std::span<const LinearConstraint> extra) const;
  Polytope WithoutRow(std::size_t index) const;
};

// x_j <= value or x_j >= value.
LinearConstraint VariableBound(std::size_t n, std::size_t j, Relation rel, const Rational& value);

}  // namespace bblab

#endif  // BBLAB_POLYTOPE_HPP_
