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

#include "bblab/polytope.hpp"

#include <limits>

#include "bblab/error.hpp"

namespace bblab {

LinearConstraint CanonicalRow(const LinearConstraint& row) {
  LinearConstraint out = row;
  if (out.rel == Relation::kGreaterEqual) {
    for (auto& c : out.coeffs) c = -c;
    out.rhs = -out.rhs;
    out.rel = Relation::kLessEqual;
  }
  Integer lcm_den = out.rhs.get_den();
  for (const auto& c : out.coeffs) lcm_den = lcm(lcm_den, Integer(c.get_den()));
  Integer content = 0;
  for (auto& c : out.coeffs) {
    c *= lcm_den;
    content = gcd(content, Integer(c.get_num()));
  }
  out.rhs *= lcm_den;
  content = gcd(content, Integer(out.rhs.get_num()));
  if (content != 0 && content != 1) {
    for (auto& c : out.coeffs) c /= content;
    out.rhs /= content;
  }
  if (out.rel == Relation::kEqual) {
    for (const auto& c : out.coeffs) {
      if (c == 0) continue;
      if (c < 0) {
        for (auto& v : out.coeffs) v = -v;
        out.rhs = -out.rhs;
      }
      break;
    }
  }
  return out;
}

std::vector<LinearConstraint> LessEqualForms(const LinearConstraint& row) {
  LinearConstraint le = row;
  LinearConstraint ge = row;
  for (auto& c : ge.coeffs) c = -c;
  ge.rhs = -ge.rhs;
  le.rel = ge.rel = Relation::kLessEqual;
  switch (row.rel) {
    case Relation::kLessEqual: return {le};
    case Relation::kGreaterEqual: return {ge};
    case Relation::kEqual: return {le, ge};
  }
  return {};
}

void Polytope::Validate() const {
  if (dim == 0) throw Error(ErrorCode::kDimensionMismatch, "polytope dimension must be positive");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].coeffs.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "row " + std::to_string(i) + " has length " +
                      std::to_string(rows[i].coeffs.size()) + ", expected " +
                      std::to_string(dim));
    }
  }
  if (oracle && oracle->dim() != dim) {
    throw Error(ErrorCode::kDimensionMismatch, "oracle dimension differs from polytope");
  }
}

bool Polytope::InBox(const RationalVector& x) const {
  for (const auto& v : x) {
    if (v < 0 || v > 1) return false;
  }
  return true;
}

bool Polytope::Contains(const RationalVector& x) const {
  if (x.size() != dim) throw Error(ErrorCode::kDimensionMismatch, "point length differs from dim");
  if (box && !InBox(x)) return false;
  for (const auto& row : rows) {
    if (!row.SatisfiedBy(x)) return false;
  }
  return !(oracle && oracle->Separate(x));
}

std::optional<LinearConstraint> Polytope::MostViolated(const RationalVector& x) const {
  std::optional<LinearConstraint> best;
  Rational worst = 0;
  for (const auto& row : rows) {
    Rational v = row.Violation(x);
    if (v > worst) {
      worst = std::move(v);
      best = row;
    }
  }
  if (oracle) {
    if (auto row = oracle->Separate(x)) {
      Rational v = row->Violation(x);
      if (v > worst) best = std::move(row);
    }
  }
  return best;
}

std::vector<LinearConstraint> Polytope::AllRows() const {
  std::vector<LinearConstraint> out = rows;
  if (oracle) {
    auto more = oracle->Materialize();
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

std::uint64_t Polytope::FamilySize() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t size = rows.size();
  if (oracle) {
    const std::uint64_t extra = oracle->family_size();
    size = extra > kMax - size ? kMax : size + extra;
  }
  return size;
}

Polytope Polytope::WithRows(std::span<const LinearConstraint> extra) const {
  Polytope out = *this;
  out.rows.insert(out.rows.end(), extra.begin(), extra.end());
  return out;
}

Polytope Polytope::WithoutRow(std::size_t index) const {
  if (index >= rows.size()) throw Error(ErrorCode::kIndexOutOfRange, "row index out of range");
  Polytope out = *this;
  out.rows.erase(out.rows.begin() + static_cast<std::ptrdiff_t>(index));
  return out;
}

LinearConstraint VariableBound(std::size_t n, std::size_t j, Relation rel, const Rational& value) {
  LinearConstraint row;
  row.coeffs.assign(n, Rational(0));
  row.coeffs[j] = 1;
  row.rel = rel;
  row.rhs = value;
  return row;
}

}  // namespace bblab
