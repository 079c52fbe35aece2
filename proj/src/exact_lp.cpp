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

#include "bblab/exact_lp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "bblab/error.hpp"

namespace bblab {

namespace {

// Explicit row sets up to this size go into the first LP in full.
constexpr std::size_t kEagerRows = 64;
// Explicit rows added per lazy round.
constexpr std::size_t kRowsPerRound = 8;

bool SameCanonical(const LinearConstraint& a, const LinearConstraint& b) {
  return CanonicalRow(a) == CanonicalRow(b);
}

bool MatchesAnyForm(const LinearConstraint& le_row, const LinearConstraint& source) {
  for (const auto& form : LessEqualForms(source)) {
    if (SameCanonical(form, le_row)) return true;
  }
  return false;
}

struct RowTag {
  RowOrigin origin;
  std::size_t index;
};

std::uint64_t RoundCap(const Polytope& p) {
  const std::uint64_t size = p.FamilySize();
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  return size > (kMax - 2) / 2 ? kMax : 2 * size + 2;
}

void CheckDims(const Polytope& p, std::span<const LinearConstraint> branching) {
  p.Validate();
  for (const auto& row : branching) {
    if (row.coeffs.size() != p.dim) {
      throw Error(ErrorCode::kDimensionMismatch, "branching row length differs from polytope dim");
    }
  }
}

FarkasCertificate BuildCertificate(const LinearProgram& lp, const std::vector<RowTag>& tags,
                                   const SimplexResult& result) {
  FarkasCertificate cert;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const Rational& y = result.row_multipliers[i];
    if (y == 0) continue;
    LinearConstraint le = lp.rows[i];
    le.rel = Relation::kLessEqual;
    Rational mult = y;
    if (y < 0) {
      for (auto& c : le.coeffs) c = -c;
      le.rhs = -le.rhs;
      mult = -y;
    }
    cert.rows.push_back({tags[i].origin, tags[i].index, std::move(le), std::move(mult)});
  }
  const std::size_t n = lp.num_vars;
  for (std::size_t j = 0; j < n; ++j) {
    if (result.lower_multipliers[j] != 0) {
      LinearConstraint row = VariableBound(n, j, Relation::kLessEqual, -*lp.lower[j]);
      row.coeffs[j] = -1;
      cert.rows.push_back({RowOrigin::kLowerBound, j, std::move(row), result.lower_multipliers[j]});
    }
    if (result.upper_multipliers[j] != 0) {
      cert.rows.push_back({RowOrigin::kUpperBound, j,
                           VariableBound(n, j, Relation::kLessEqual, *lp.upper[j]),
                           result.upper_multipliers[j]});
    }
  }
  return cert;
}

// Shared lazy row-generation driver for feasibility and optimisation.
LPOutcome SolveLazy(const Polytope& p, std::span<const LinearConstraint> branching,
                    const RationalVector* objective, Sense sense) {
  CheckDims(p, branching);
  const std::size_t n = p.dim;
  std::vector<bool> active(p.rows.size(), p.rows.size() <= kEagerRows);
  std::vector<LinearConstraint> oracle_rows;
  const std::uint64_t cap = RoundCap(p);

  for (std::uint64_t round = 0;; ++round) {
    if (round > cap) {
      throw Error(ErrorCode::kInternalError, "lazy row generation exceeded its round cap");
    }
    LinearProgram lp = p.box ? LinearProgram::Box(n) : LinearProgram::Free(n);
    std::vector<RowTag> tags;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      if (!active[i]) continue;
      lp.rows.push_back(p.rows[i]);
      tags.push_back({RowOrigin::kBase, i});
    }
    for (std::size_t i = 0; i < oracle_rows.size(); ++i) {
      lp.rows.push_back(oracle_rows[i]);
      tags.push_back({RowOrigin::kOracle, i});
    }
    for (std::size_t i = 0; i < branching.size(); ++i) {
      lp.rows.push_back(branching[i]);
      tags.push_back({RowOrigin::kBranching, i});
    }
    if (objective) {
      lp.objective = *objective;
      lp.sense = sense;
    }
    const SimplexResult res = SolveLp(lp);

    LPOutcome out;
    out.cut_rounds = static_cast<std::size_t>(round);
    if (res.status == SimplexResult::Status::kInfeasible) {
      out.status = LPOutcome::Status::kInfeasible;
      out.farkas = BuildCertificate(lp, tags, res);
      return out;
    }
    if (res.status == SimplexResult::Status::kUnbounded) {
      if (p.box) throw Error(ErrorCode::kInternalError, "unbounded LP over a box polytope");
      const bool all_active = std::all_of(active.begin(), active.end(), [](bool b) { return b; });
      if (all_active && !p.oracle) {
        out.status = LPOutcome::Status::kUnbounded;
        return out;
      }
      std::fill(active.begin(), active.end(), true);
      continue;
    }

    // Separation round.
    const RationalVector& x = res.x;
    std::vector<std::pair<Rational, std::size_t>> violated;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      if (active[i]) continue;
      Rational v = p.rows[i].Violation(x);
      if (v > 0) violated.emplace_back(std::move(v), i);
    }
    std::sort(violated.begin(), violated.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    bool added = false;
    for (std::size_t k = 0; k < violated.size() && k < kRowsPerRound; ++k) {
      active[violated[k].second] = true;
      added = true;
    }
    if (p.oracle) {
      if (auto row = p.oracle->Separate(x)) {
        for (const auto& existing : oracle_rows) {
          if (existing == *row) {
            throw Error(ErrorCode::kInternalError, "oracle returned a row that is already active");
          }
        }
        oracle_rows.push_back(std::move(*row));
        added = true;
      }
    }
    if (added) continue;

    out.point = x;
    if (objective) {
      out.status = LPOutcome::Status::kOptimal;
      out.value = res.value;
    } else {
      out.status = LPOutcome::Status::kFeasible;
    }
    return out;
  }
}

}  // namespace

bool FarkasCertificate::Verify(std::size_t dim) const {
  if (rows.empty()) return false;
  RationalVector combo(dim);
  Rational rhs = 0;
  for (const auto& r : rows) {
    if (r.multiplier < 0 || r.row.rel != Relation::kLessEqual || r.row.coeffs.size() != dim) {
      return false;
    }
    for (std::size_t j = 0; j < dim; ++j) {
      if (r.row.coeffs[j] != 0) combo[j] += r.multiplier * r.row.coeffs[j];
    }
    rhs += r.multiplier * r.row.rhs;
  }
  for (const auto& c : combo) {
    if (c != 0) return false;
  }
  return rhs < 0;
}

bool CertificateRowsBelong(const FarkasCertificate& certificate, const Polytope& p,
                           std::span<const LinearConstraint> branching) {
  const std::size_t n = p.dim;
  for (const auto& r : certificate.rows) {
    switch (r.origin) {
      case RowOrigin::kBase:
        if (r.index >= p.rows.size() || !MatchesAnyForm(r.row, p.rows[r.index])) return false;
        break;
      case RowOrigin::kOracle:
        if (!p.oracle || !p.oracle->Owns(r.row)) return false;
        break;
      case RowOrigin::kBranching:
        if (r.index >= branching.size() || !MatchesAnyForm(r.row, branching[r.index])) return false;
        break;
      case RowOrigin::kLowerBound: {
        if (!p.box || r.index >= n) return false;
        LinearConstraint expect = VariableBound(n, r.index, Relation::kLessEqual, 0);
        expect.coeffs[r.index] = -1;
        if (!SameCanonical(expect, r.row)) return false;
        break;
      }
      case RowOrigin::kUpperBound:
        if (!p.box || r.index >= n ||
            !SameCanonical(VariableBound(n, r.index, Relation::kLessEqual, 1), r.row)) {
          return false;
        }
        break;
    }
  }
  return true;
}

LPOutcome LpFeasible(const Polytope& p, std::span<const LinearConstraint> branching) {
  return SolveLazy(p, branching, nullptr, Sense::kMaximize);
}

LPOutcome LpOptimize(const Polytope& p, const RationalVector& objective, Sense sense,
                     std::span<const LinearConstraint> branching) {
  if (objective.size() != p.dim) {
    throw Error(ErrorCode::kDimensionMismatch, "objective length differs from polytope dim");
  }
  return SolveLazy(p, branching, &objective, sense);
}

HullMembership InConvexHullOfUnion(const RationalVector& x_star, const std::vector<Polytope>& atoms,
                                   Execution execution) {
  HullMembership out;
  if (atoms.empty()) {
    out.empty_atom_list = true;
    return out;
  }
  const std::size_t n = x_star.size();
  for (const auto& atom : atoms) {
    atom.Validate();
    if (atom.dim != n) throw Error(ErrorCode::kDimensionMismatch, "atom dimension differs from x*");
    if (!atom.box) throw Error(ErrorCode::kPreconditionViolated, "hull membership needs bounded atoms");
  }
  out.weights.assign(atoms.size(), Rational(0));
  out.witnesses.assign(atoms.size(), std::nullopt);

  // x* inside one atom already.
  std::vector<char> contains(atoms.size(), 0);
  ForEachIndex(execution, atoms.size(), [&](std::size_t i) { contains[i] = atoms[i].Contains(x_star); });
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (contains[i]) {
      out.inside = true;
      out.weights[i] = 1;
      out.witnesses[i] = x_star;
      return out;
    }
  }

  std::vector<char> nonempty(atoms.size(), 0);
  ForEachIndex(execution, atoms.size(), [&](std::size_t i) { nonempty[i] = !LpFeasible(atoms[i]).empty(); });
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (nonempty[i]) live.push_back(i);
  }
  if (live.empty()) return out;

  // Homogenised disjunctive LP: per live atom v, variables z_v (n) and λ_v.
  const std::size_t stride = n + 1;
  const std::size_t num_vars = live.size() * stride;
  std::vector<std::vector<bool>> active(live.size());
  std::vector<std::vector<LinearConstraint>> generated(live.size());
  for (std::size_t a = 0; a < live.size(); ++a) {
    const Polytope& atom = atoms[live[a]];
    active[a].assign(atom.rows.size(), atom.rows.size() <= kEagerRows);
  }
  std::uint64_t cap = 2;
  for (std::size_t idx : live) {
    const std::uint64_t c = RoundCap(atoms[idx]);
    cap = c > std::numeric_limits<std::uint64_t>::max() - cap ? std::numeric_limits<std::uint64_t>::max() : cap + c;
  }

  auto homogenise = [&](std::size_t a, const LinearConstraint& row) {
    LinearConstraint h;
    h.coeffs.assign(num_vars, Rational(0));
    for (std::size_t j = 0; j < n; ++j) h.coeffs[a * stride + j] = row.coeffs[j];
    h.coeffs[a * stride + n] = -row.rhs;
    h.rel = row.rel;
    h.rhs = 0;
    return h;
  };

  for (std::uint64_t round = 0;; ++round) {
    if (round > cap) throw Error(ErrorCode::kInternalError, "hull LP exceeded its round cap");
    LinearProgram lp;
    lp.num_vars = num_vars;
    lp.lower.assign(num_vars, Rational(0));
    lp.upper.assign(num_vars, std::nullopt);
    for (std::size_t a = 0; a < live.size(); ++a) {
      const Polytope& atom = atoms[live[a]];
      for (std::size_t i = 0; i < atom.rows.size(); ++i) {
        if (active[a][i]) lp.rows.push_back(homogenise(a, atom.rows[i]));
      }
      for (const auto& row : generated[a]) lp.rows.push_back(homogenise(a, row));
      for (std::size_t j = 0; j < n; ++j) {
        LinearConstraint ub;
        ub.coeffs.assign(num_vars, Rational(0));
        ub.coeffs[a * stride + j] = 1;
        ub.coeffs[a * stride + n] = -1;
        ub.rel = Relation::kLessEqual;
        ub.rhs = 0;
        lp.rows.push_back(std::move(ub));
      }
    }
    LinearConstraint sum_lambda;
    sum_lambda.coeffs.assign(num_vars, Rational(0));
    for (std::size_t a = 0; a < live.size(); ++a) sum_lambda.coeffs[a * stride + n] = 1;
    sum_lambda.rel = Relation::kEqual;
    sum_lambda.rhs = 1;
    lp.rows.push_back(std::move(sum_lambda));
    for (std::size_t j = 0; j < n; ++j) {
      LinearConstraint coord;
      coord.coeffs.assign(num_vars, Rational(0));
      for (std::size_t a = 0; a < live.size(); ++a) coord.coeffs[a * stride + j] = 1;
      coord.rel = Relation::kEqual;
      coord.rhs = x_star[j];
      lp.rows.push_back(std::move(coord));
    }

    const SimplexResult res = SolveLp(lp);
    if (res.status == SimplexResult::Status::kInfeasible) return out;
    if (res.status == SimplexResult::Status::kUnbounded) {
      throw Error(ErrorCode::kInternalError, "hull feasibility LP reported unbounded");
    }

    bool added = false;
    std::vector<std::optional<RationalVector>> witness(live.size());
    for (std::size_t a = 0; a < live.size(); ++a) {
      const Rational& lambda = res.x[a * stride + n];
      if (lambda == 0) continue;
      RationalVector w(n);
      for (std::size_t j = 0; j < n; ++j) w[j] = res.x[a * stride + j] / lambda;
      const Polytope& atom = atoms[live[a]];
      std::vector<std::pair<Rational, std::size_t>> violated;
      for (std::size_t i = 0; i < atom.rows.size(); ++i) {
        if (active[a][i]) continue;
        Rational v = atom.rows[i].Violation(w);
        if (v > 0) violated.emplace_back(std::move(v), i);
      }
      std::sort(violated.begin(), violated.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first > y.first : x.second < y.second;
      });
      for (std::size_t k = 0; k < violated.size() && k < kRowsPerRound; ++k) {
        active[a][violated[k].second] = true;
        added = true;
      }
      if (atom.oracle) {
        if (auto row = atom.oracle->Separate(w)) {
          generated[a].push_back(std::move(*row));
          added = true;
        }
      }
      witness[a] = std::move(w);
    }
    if (added) continue;

    out.inside = true;
    for (std::size_t a = 0; a < live.size(); ++a) {
      out.weights[live[a]] = res.x[a * stride + n];
      out.witnesses[live[a]] = std::move(witness[a]);
    }
    return out;
  }
}

bool VerifyHullMembership(const RationalVector& x_star, const std::vector<Polytope>& atoms,
                          const HullMembership& membership) {
  if (!membership.inside) return false;
  if (membership.weights.size() != atoms.size() || membership.witnesses.size() != atoms.size()) {
    return false;
  }
  Rational total = 0;
  RationalVector combo(x_star.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Rational& w = membership.weights[i];
    if (w < 0) return false;
    if (w == 0) continue;
    if (!membership.witnesses[i] || !atoms[i].Contains(*membership.witnesses[i])) return false;
    total += w;
    for (std::size_t j = 0; j < x_star.size(); ++j) combo[j] += w * (*membership.witnesses[i])[j];
  }
  return total == 1 && combo == x_star;
}

Separation SeparatingHyperplane(const RationalVector& x_star,
                                const std::vector<RationalVector>& hull_points) {
  const std::size_t n = x_star.size();
  for (const auto& p : hull_points) {
    if (p.size() != n) throw Error(ErrorCode::kDimensionMismatch, "hull point length differs from x*");
  }
  // Variables: pi (n, in [-1, 1]), pi0 (free), margin t (<= 1). Maximise t.
  LinearProgram lp;
  lp.num_vars = n + 2;
  lp.lower.assign(n + 2, Rational(-1));
  lp.upper.assign(n + 2, Rational(1));
  lp.lower[n] = std::nullopt;
  lp.upper[n] = std::nullopt;
  lp.lower[n + 1] = std::nullopt;
  for (const auto& p : hull_points) {
    LinearConstraint row;
    row.coeffs.assign(n + 2, Rational(0));
    for (std::size_t j = 0; j < n; ++j) row.coeffs[j] = p[j];
    row.coeffs[n] = -1;
    row.rel = Relation::kLessEqual;
    row.rhs = 0;
    lp.rows.push_back(std::move(row));
  }
  LinearConstraint margin;
  margin.coeffs.assign(n + 2, Rational(0));
  for (std::size_t j = 0; j < n; ++j) margin.coeffs[j] = x_star[j];
  margin.coeffs[n] = -1;
  margin.coeffs[n + 1] = -1;
  margin.rel = Relation::kGreaterEqual;
  margin.rhs = 0;
  lp.rows.push_back(std::move(margin));
  lp.objective.assign(n + 2, Rational(0));
  lp.objective[n + 1] = 1;
  lp.sense = Sense::kMaximize;

  const SimplexResult res = SolveLp(lp);
  if (res.status != SimplexResult::Status::kOptimal) {
    throw Error(ErrorCode::kInternalError, "separation LP did not reach an optimum");
  }
  Separation out;
  if (res.value > 0) {
    Rational scale = 0;
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, Rational(abs(res.x[j])));
    out.separable = true;
    out.pi.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.pi[j] = res.x[j] / scale;
    out.pi0 = res.x[n] / scale;
    return out;
  }

  // x* in the hull: convex weights.
  const std::size_t k = hull_points.size();
  LinearProgram hull;
  hull.num_vars = k;
  hull.lower.assign(k, Rational(0));
  hull.upper.assign(k, std::nullopt);
  LinearConstraint sum;
  sum.coeffs.assign(k, Rational(1));
  sum.rel = Relation::kEqual;
  sum.rhs = 1;
  hull.rows.push_back(std::move(sum));
  for (std::size_t j = 0; j < n; ++j) {
    LinearConstraint row;
    row.coeffs.resize(k);
    for (std::size_t i = 0; i < k; ++i) row.coeffs[i] = hull_points[i][j];
    row.rel = Relation::kEqual;
    row.rhs = x_star[j];
    hull.rows.push_back(std::move(row));
  }
  const SimplexResult weights = SolveLp(hull);
  if (weights.status != SimplexResult::Status::kOptimal) {
    throw Error(ErrorCode::kInternalError, "no separator and no convex weights");
  }
  out.weights = weights.x;
  return out;
}

std::size_t MatrixRank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::size_t AffineRank(const std::vector<RationalVector>& points) {
  if (points.empty()) throw Error(ErrorCode::kEmptyList, "affine rank of an empty point list");
  const std::size_t n = points.front().size();
  std::vector<RationalVector> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != n) throw Error(ErrorCode::kDimensionMismatch, "points differ in length");
    RationalVector d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return MatrixRank(std::move(diffs)) + 1;
}

namespace {

// Unique solution of a square system, if any.
std::optional<RationalVector> SolveSquare(std::vector<RationalVector> a, RationalVector b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[c], a[pivot]);
    std::swap(b[c], b[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

}  // namespace

std::vector<RationalVector> EnumerateVertices(const Polytope& p,
                                              std::span<const LinearConstraint> branching) {
  CheckDims(p, branching);
  const std::size_t n = p.dim;
  if (n > 4) throw Error(ErrorCode::kTooLarge, "vertex enumeration is limited to dim <= 4");
  std::vector<LinearConstraint> rows = p.AllRows();
  rows.insert(rows.end(), branching.begin(), branching.end());
  if (p.box) {
    for (std::size_t j = 0; j < n; ++j) {
      rows.push_back(VariableBound(n, j, Relation::kGreaterEqual, 0));
      rows.push_back(VariableBound(n, j, Relation::kLessEqual, 1));
    }
  }
  const std::size_t m = rows.size();
  std::vector<RationalVector> vertices;
  if (m < n) return vertices;
  std::vector<std::size_t> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::vector<RationalVector> a;
    RationalVector b;
    for (std::size_t idx : pick) {
      a.push_back(rows[idx].coeffs);
      b.push_back(rows[idx].rhs);
    }
    if (auto x = SolveSquare(std::move(a), std::move(b))) {
      bool ok = !p.box || p.InBox(*x);
      for (std::size_t i = 0; ok && i < m; ++i) ok = rows[i].SatisfiedBy(*x);
      if (ok) vertices.push_back(std::move(*x));
    }
    // Next n-combination of [0, m).
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

}  // namespace bblab
