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

#include "bblab/simplex.hpp"

#include <limits>

#include "bblab/error.hpp"

namespace bblab {

bool LinearConstraint::SatisfiedBy(const RationalVector& x) const {
  return Violation(x) == 0;
}

Rational LinearConstraint::Violation(const RationalVector& x) const {
  const Rational lhs = Lhs(x);
  switch (rel) {
    case Relation::kLessEqual: return lhs > rhs ? Rational(lhs - rhs) : Rational(0);
    case Relation::kGreaterEqual: return lhs < rhs ? Rational(rhs - lhs) : Rational(0);
    case Relation::kEqual: return abs(lhs - rhs);
  }
  return 0;
}

LinearProgram LinearProgram::Box(std::size_t n) {
  LinearProgram lp;
  lp.num_vars = n;
  lp.lower.assign(n, Rational(0));
  lp.upper.assign(n, Rational(1));
  return lp;
}

LinearProgram LinearProgram::Free(std::size_t n) {
  LinearProgram lp;
  lp.num_vars = n;
  lp.lower.assign(n, std::nullopt);
  lp.upper.assign(n, std::nullopt);
  return lp;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// x_j expressed through nonnegative columns.
struct VariableMap {
  enum class Kind { kShift, kFlip, kSplit } kind = Kind::kShift;
  std::size_t column = 0;  // kSplit uses column and column + 1
  Rational offset;         // l for kShift, u for kFlip
  std::size_t upper_row = kNone;
};

// Dense tableau; row m holds the reduced costs and -objective.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows + 1, RationalVector(cols + 1)),
        basis_(rows, kNone) {}

  Rational& at(std::size_t i, std::size_t j) { return cells_[i][j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return cells_[i][j]; }
  Rational& rhs(std::size_t i) { return cells_[i][cols_]; }
  const Rational& rhs(std::size_t i) const { return cells_[i][cols_]; }
  Rational& reduced(std::size_t j) { return cells_[rows_][j]; }
  const Rational& reduced(std::size_t j) const { return cells_[rows_][j]; }
  const Rational& neg_objective() const { return cells_[rows_][cols_]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  void SetCosts(const RationalVector& cost) {
    for (std::size_t j = 0; j <= cols_; ++j) {
      cells_[rows_][j] = j < cols_ ? cost[j] : Rational(0);
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (cells_[i][j] != 0) cells_[rows_][j] -= cb * cells_[i][j];
      }
    }
  }

  void Pivot(std::size_t r, std::size_t e) {
    RationalVector& prow = cells_[r];
    const Rational inv = 1 / prow[e];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (prow[j] != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r || cells_[i][e] == 0) continue;
      const Rational factor = cells_[i][e];
      for (std::size_t j : nz) cells_[i][j] -= factor * prow[j];
    }
    basis_[r] = e;
  }

  // Bland's rule. Returns false when optimal; sets unbounded when the
  // entering column has no positive entry.
  bool Step(const std::vector<bool>& allowed, bool& unbounded) {
    std::size_t enter = kNone;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (allowed[j] && reduced(j) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == kNone) return false;
    std::size_t leave = kNone;
    Rational best;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (at(i, enter) <= 0) continue;
      Rational ratio = rhs(i) / at(i, enter);
      if (leave == kNone || ratio < best ||
          (ratio == best && basis_[i] < basis_[leave])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    if (leave == kNone) {
      unbounded = true;
      return false;
    }
    Pivot(leave, enter);
    return true;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<RationalVector> cells_;
  std::vector<std::size_t> basis_;
};

}  // namespace

SimplexResult SolveLp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  if (lp.lower.size() != n || lp.upper.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "bound vectors do not match num_vars");
  }
  if (!lp.objective.empty() && lp.objective.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "objective length differs from num_vars");
  }
  for (const auto& row : lp.rows) {
    if (row.coeffs.size() != n) {
      throw Error(ErrorCode::kDimensionMismatch, "row length differs from num_vars");
    }
  }

  // Column layout for the structural part.
  std::vector<VariableMap> vars(n);
  std::size_t num_struct = 0;
  std::size_t num_upper_rows = 0;
  for (std::size_t j = 0; j < n; ++j) {
    VariableMap& v = vars[j];
    v.column = num_struct;
    if (lp.lower[j]) {
      v.kind = VariableMap::Kind::kShift;
      v.offset = *lp.lower[j];
      if (lp.upper[j]) {
        v.upper_row = lp.rows.size() + num_upper_rows++;
      }
      num_struct += 1;
    } else if (lp.upper[j]) {
      v.kind = VariableMap::Kind::kFlip;
      v.offset = *lp.upper[j];
      num_struct += 1;
    } else {
      v.kind = VariableMap::Kind::kSplit;
      num_struct += 2;
    }
  }

  // Rows over the structural columns: rel, coefficients, rhs.
  const std::size_t m = lp.rows.size() + num_upper_rows;
  std::vector<RationalVector> coef(m, RationalVector(num_struct));
  RationalVector rhs(m);
  std::vector<Relation> rel(m);
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    rel[i] = row.rel;
    rhs[i] = row.rhs;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = row.coeffs[j];
      if (a == 0) continue;
      const VariableMap& v = vars[j];
      switch (v.kind) {
        case VariableMap::Kind::kShift:
          coef[i][v.column] = a;
          rhs[i] -= a * v.offset;
          break;
        case VariableMap::Kind::kFlip:
          coef[i][v.column] = -a;
          rhs[i] -= a * v.offset;
          break;
        case VariableMap::Kind::kSplit:
          coef[i][v.column] = a;
          coef[i][v.column + 1] = -a;
          break;
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const VariableMap& v = vars[j];
    if (v.upper_row == kNone) continue;
    rel[v.upper_row] = Relation::kLessEqual;
    coef[v.upper_row][v.column] = 1;
    rhs[v.upper_row] = *lp.upper[j] - *lp.lower[j];
  }

  // Slack columns, sign flips, and the initial identity column per row.
  std::vector<std::size_t> slack_col(m, kNone);
  std::size_t cols = num_struct;
  for (std::size_t i = 0; i < m; ++i) {
    if (rel[i] != Relation::kEqual) slack_col[i] = cols++;
  }
  std::vector<int> sign(m, 1);
  std::vector<std::size_t> identity_col(m, kNone);
  const std::size_t first_artificial = cols;
  for (std::size_t i = 0; i < m; ++i) {
    if (rhs[i] < 0) sign[i] = -1;
    const int slack_sign = rel[i] == Relation::kLessEqual ? 1 : -1;
    if (slack_col[i] != kNone && slack_sign * sign[i] == 1) {
      identity_col[i] = slack_col[i];
    } else {
      identity_col[i] = cols++;
    }
  }

  Tableau tab(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < num_struct; ++j) {
      if (coef[i][j] != 0) tab.at(i, j) = sign[i] * coef[i][j];
    }
    if (slack_col[i] != kNone) {
      tab.at(i, slack_col[i]) = (rel[i] == Relation::kLessEqual ? 1 : -1) * sign[i];
    }
    tab.at(i, identity_col[i]) = 1;
    tab.rhs(i) = sign[i] * rhs[i];
    tab.basis()[i] = identity_col[i];
  }

  SimplexResult result;
  std::vector<bool> allowed(cols, true);

  // Phase 1.
  RationalVector phase1_cost(cols);
  for (std::size_t j = first_artificial; j < cols; ++j) phase1_cost[j] = 1;
  tab.SetCosts(phase1_cost);
  bool unbounded = false;
  while (tab.Step(allowed, unbounded)) ++result.pivots;
  if (unbounded) throw Error(ErrorCode::kInternalError, "phase 1 reported unbounded");

  if (tab.neg_objective() != 0) {
    // Infeasible: duals y_i = c_id - d_id on each row's identity column.
    result.status = SimplexResult::Status::kInfeasible;
    result.row_multipliers.assign(lp.rows.size(), Rational(0));
    result.lower_multipliers.assign(n, Rational(0));
    result.upper_multipliers.assign(n, Rational(0));
    RationalVector lambda(m);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t id = identity_col[i];
      const Rational y = phase1_cost[id] - tab.reduced(id);
      lambda[i] = -sign[i] * y;
    }
    for (std::size_t i = 0; i < lp.rows.size(); ++i) result.row_multipliers[i] = lambda[i];
    for (std::size_t j = 0; j < n; ++j) {
      const VariableMap& v = vars[j];
      const Rational& t = tab.reduced(v.column);
      switch (v.kind) {
        case VariableMap::Kind::kShift:
          result.lower_multipliers[j] = t;
          if (v.upper_row != kNone) result.upper_multipliers[j] = lambda[v.upper_row];
          break;
        case VariableMap::Kind::kFlip:
          result.upper_multipliers[j] = t;
          break;
        case VariableMap::Kind::kSplit:
          break;
      }
    }
    if (!VerifyFarkas(lp, result)) {
      throw Error(ErrorCode::kInternalError, "phase-1 Farkas certificate failed verification");
    }
    return result;
  }

  // Drive remaining artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis()[i] < first_artificial) continue;
    for (std::size_t j = 0; j < first_artificial; ++j) {
      if (tab.at(i, j) != 0) {
        tab.Pivot(i, j);
        ++result.pivots;
        break;
      }
    }
  }
  for (std::size_t j = first_artificial; j < cols; ++j) allowed[j] = false;

  // Phase 2.
  RationalVector phase2_cost(cols);
  Rational constant = 0;
  if (!lp.objective.empty()) {
    const int dir = lp.sense == Sense::kMaximize ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& c = lp.objective[j];
      if (c == 0) continue;
      const VariableMap& v = vars[j];
      switch (v.kind) {
        case VariableMap::Kind::kShift:
          phase2_cost[v.column] = dir * c;
          constant += c * v.offset;
          break;
        case VariableMap::Kind::kFlip:
          phase2_cost[v.column] = -dir * c;
          constant += c * v.offset;
          break;
        case VariableMap::Kind::kSplit:
          phase2_cost[v.column] = dir * c;
          phase2_cost[v.column + 1] = -dir * c;
          break;
      }
    }
    tab.SetCosts(phase2_cost);
    unbounded = false;
    while (tab.Step(allowed, unbounded)) ++result.pivots;
    if (unbounded) {
      result.status = SimplexResult::Status::kUnbounded;
      return result;
    }
  }

  RationalVector z(cols);
  for (std::size_t i = 0; i < m; ++i) z[tab.basis()[i]] = tab.rhs(i);
  result.x.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    const VariableMap& v = vars[j];
    switch (v.kind) {
      case VariableMap::Kind::kShift: result.x[j] = v.offset + z[v.column]; break;
      case VariableMap::Kind::kFlip: result.x[j] = v.offset - z[v.column]; break;
      case VariableMap::Kind::kSplit: result.x[j] = z[v.column] - z[v.column + 1]; break;
    }
  }
  result.status = SimplexResult::Status::kOptimal;
  result.value = lp.objective.empty() ? Rational(0) : Dot(lp.objective, result.x);
  return result;
}

bool VerifyFarkas(const LinearProgram& lp, const SimplexResult& result) {
  const std::size_t n = lp.num_vars;
  if (result.row_multipliers.size() != lp.rows.size() ||
      result.lower_multipliers.size() != n || result.upper_multipliers.size() != n) {
    return false;
  }
  RationalVector combo(n);
  Rational rhs = 0;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const Rational& y = result.row_multipliers[i];
    if (y == 0) continue;
    const auto& row = lp.rows[i];
    if (row.rel == Relation::kLessEqual && y < 0) return false;
    if (row.rel == Relation::kGreaterEqual && y > 0) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (row.coeffs[j] != 0) combo[j] += y * row.coeffs[j];
    }
    rhs += y * row.rhs;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const Rational& lo = result.lower_multipliers[j];
    const Rational& up = result.upper_multipliers[j];
    if (lo < 0 || up < 0) return false;
    if (lo != 0) {
      if (!lp.lower[j]) return false;
      combo[j] -= lo;
      rhs -= lo * *lp.lower[j];
    }
    if (up != 0) {
      if (!lp.upper[j]) return false;
      combo[j] += up;
      rhs += up * *lp.upper[j];
    }
  }
  for (const auto& c : combo) {
    if (c != 0) return false;
  }
  return rhs < 0;
}

}  // namespace bblab
