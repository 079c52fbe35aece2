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

#include "bblab/enumerate.hpp"

#include <limits>

#include "bblab/error.hpp"
#include "bblab/exact_lp.hpp"

namespace bblab {

namespace {

constexpr std::uint64_t kBlock = 1u << 12;

// Rows scaled to coprime integers. Rows whose worst-case partial sums fit in
// int64 are evaluated on the fast path; the rest stay in GMP.
struct ScaledRow {
  Relation rel = Relation::kLessEqual;
  bool small = true;
  std::vector<std::int64_t> coeffs;
  std::int64_t rhs = 0;
  std::vector<Integer> big_coeffs;
  Integer big_rhs;
};

ScaledRow Scale(const LinearConstraint& row) {
  const LinearConstraint canon = CanonicalRow(row);
  ScaledRow out;
  out.rel = canon.rel;
  Integer total = abs(canon.rhs.get_num());
  for (const auto& c : canon.coeffs) total += abs(c.get_num());
  out.small = total < Integer(std::numeric_limits<std::int64_t>::max() / 4);
  for (const auto& c : canon.coeffs) {
    out.big_coeffs.push_back(c.get_num());
    if (out.small) out.coeffs.push_back(c.get_num().get_si());
  }
  out.big_rhs = canon.rhs.get_num();
  if (out.small) out.rhs = canon.rhs.get_num().get_si();
  return out;
}

bool Satisfies(const ScaledRow& row, std::uint32_t mask) {
  if (row.small) {
    std::int64_t lhs = 0;
    for (std::uint32_t m = mask; m; m &= m - 1) lhs += row.coeffs[static_cast<std::size_t>(__builtin_ctz(m))];
    return row.rel == Relation::kEqual ? lhs == row.rhs : lhs <= row.rhs;
  }
  Integer lhs = 0;
  for (std::uint32_t m = mask; m; m &= m - 1) lhs += row.big_coeffs[static_cast<std::size_t>(__builtin_ctz(m))];
  return row.rel == Relation::kEqual ? lhs == row.big_rhs : lhs <= row.big_rhs;
}

struct CubeFilter {
  std::size_t n = 0;
  std::vector<ScaledRow> rows;
  const RowOracle* oracle = nullptr;

  bool Accepts(std::uint32_t mask) const {
    for (const auto& row : rows) {
      if (!Satisfies(row, mask)) return false;
    }
    return !(oracle && oracle->Separate(MaskToPoint(mask, n)));
  }
};

CubeFilter MakeFilter(const Polytope& p, std::span<const LinearConstraint> extra) {
  p.Validate();
  if (!p.box) throw Error(ErrorCode::kPreconditionViolated, "0/1 enumeration needs the box flag");
  if (p.dim > kMaxEnumerationDim) {
    throw Error(ErrorCode::kTooLarge, "0/1 enumeration is limited to dim <= 24");
  }
  CubeFilter filter;
  filter.n = p.dim;
  for (const auto& row : p.rows) filter.rows.push_back(Scale(row));
  for (const auto& row : extra) {
    if (row.coeffs.size() != p.dim) throw Error(ErrorCode::kDimensionMismatch, "extra row length");
    filter.rows.push_back(Scale(row));
  }
  filter.oracle = p.oracle.get();
  return filter;
}

}  // namespace

RationalVector MaskToPoint(std::uint32_t mask, std::size_t n) {
  RationalVector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = (mask >> j) & 1u;
  return x;
}

std::uint32_t PointToMask(const RationalVector& point) {
  std::uint32_t mask = 0;
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (point[j] == 1) {
      mask |= 1u << j;
    } else if (point[j] != 0) {
      throw Error(ErrorCode::kPreconditionViolated, "point is not 0/1");
    }
  }
  return mask;
}

std::vector<std::uint32_t> ZeroOneMasks(const Polytope& p, std::span<const LinearConstraint> extra,
                                        Execution execution) {
  const CubeFilter filter = MakeFilter(p, extra);
  const std::uint64_t total = std::uint64_t{1} << p.dim;
  const std::size_t blocks = static_cast<std::size_t>((total + kBlock - 1) / kBlock);
  std::vector<std::vector<std::uint32_t>> found(blocks);
  ForEachIndex(execution, blocks, [&](std::size_t b) {
    const std::uint64_t begin = b * kBlock;
    const std::uint64_t end = std::min(total, begin + kBlock);
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      if (filter.Accepts(static_cast<std::uint32_t>(mask))) {
        found[b].push_back(static_cast<std::uint32_t>(mask));
      }
    }
  });
  std::vector<std::uint32_t> out;
  for (auto& block : found) out.insert(out.end(), block.begin(), block.end());
  return out;
}

std::vector<RationalVector> EnumIntegerPoints(const Polytope& p, Execution execution) {
  std::vector<RationalVector> out;
  for (std::uint32_t mask : ZeroOneMasks(p, {}, execution)) out.push_back(MaskToPoint(mask, p.dim));
  return out;
}

std::optional<RationalVector> FirstZeroOnePoint(const Polytope& p,
                                                std::span<const LinearConstraint> extra) {
  const CubeFilter filter = MakeFilter(p, extra);
  const std::uint64_t total = std::uint64_t{1} << p.dim;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (filter.Accepts(static_cast<std::uint32_t>(mask))) {
      return MaskToPoint(static_cast<std::uint32_t>(mask), p.dim);
    }
  }
  return std::nullopt;
}

namespace {

std::optional<RationalVector> Dfs(const Polytope& p, std::vector<LinearConstraint>& rows) {
  const LPOutcome lp = LpFeasible(p, rows);
  if (lp.empty()) return std::nullopt;
  const RationalVector& x = *lp.point;
  std::size_t frac = x.size();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!IsIntegral(x[j])) {
      frac = j;
      break;
    }
  }
  if (frac == x.size()) return x;
  for (int value : {0, 1}) {
    rows.push_back(VariableBound(p.dim, frac, Relation::kEqual, value));
    auto found = Dfs(p, rows);
    rows.pop_back();
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace

std::optional<RationalVector> SearchZeroOnePoint(const Polytope& p,
                                                 std::span<const LinearConstraint> extra) {
  if (!p.box) throw Error(ErrorCode::kPreconditionViolated, "0/1 search needs the box flag");
  std::vector<LinearConstraint> rows(extra.begin(), extra.end());
  return Dfs(p, rows);
}

}  // namespace bblab
