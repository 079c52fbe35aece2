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

#include "bblab/instances.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "bblab/enumerate.hpp"
#include "bblab/error.hpp"
#include "bblab/exact_lp.hpp"

namespace bblab {
namespace {

constexpr std::size_t kMaxExplicitCross = 16;
constexpr std::size_t kMaxTspCities = 12;

std::uint64_t SplitMix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform in (0, 1), never 0.
double CounterUniform(std::uint64_t seed, std::uint64_t row, std::uint64_t coord, std::uint64_t stream) {
  std::uint64_t h = SplitMix(seed);
  h = SplitMix(h ^ row);
  h = SplitMix(h ^ (coord << 1 | stream));
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<std::uint64_t> SubsetsOfSize(std::size_t n, std::size_t k) {
  std::vector<std::uint64_t> out;
  if (k > n) return out;
  if (k == 0) return {0};
  std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (mask < limit) {
    out.push_back(mask);
    const std::uint64_t c = mask & -mask;
    const std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return out;
}

std::size_t ParseSize(const std::map<std::string, std::string>& d, const std::string& key) {
  auto it = d.find(key);
  if (it == d.end()) throw Error(ErrorCode::kParseError, "oracle description lacks '" + key + "'");
  try {
    return static_cast<std::size_t>(std::stoull(it->second));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, "bad integer for '" + key + "'");
  }
}

// ---------------------------------------------------------------------------

class CrossOracle : public RowOracle {
 public:
  explicit CrossOracle(std::size_t n) : n_(n) {}

  std::size_t dim() const override { return n_; }
  std::uint64_t family_size() const override {
    return n_ >= 64 ? UINT64_MAX : std::uint64_t{1} << n_;
  }
  std::map<std::string, std::string> Describe() const override {
    return {{"family", "cross"}, {"n", std::to_string(n_)}};
  }

  std::optional<LinearConstraint> Separate(const RationalVector& x) const override {
    // The LHS is minimised coordinatewise by J = {i : x_i <= 1/2}.
    if (n_ > 63) throw Error(ErrorCode::kTooLarge, "cross oracle supports n <= 63");
    const Rational half(1, 2);
    std::uint64_t j = 0;
    Rational lhs = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i] <= half) {
        j |= std::uint64_t{1} << i;
        lhs += x[i];
      } else {
        lhs += 1 - x[i];
      }
    }
    if (lhs >= half) return std::nullopt;
    return CrossRow(n_, j);
  }

  bool Owns(const LinearConstraint& row) const override {
    if (row.coeffs.size() != n_ || row.rel == Relation::kEqual || n_ > 63) return false;
    const LinearConstraint c = CanonicalRow(row);
    std::uint64_t j = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (c.coeffs[i] < 0) j |= std::uint64_t{1} << i;
    }
    return c == CanonicalRow(CrossRow(n_, j));
  }

  std::vector<LinearConstraint> Materialize() const override {
    if (n_ > kMaxExplicitCross) throw Error(ErrorCode::kTooLargeForExplicit, "cross family too large");
    std::vector<LinearConstraint> rows;
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << n_); ++j) rows.push_back(CrossRow(n_, j));
    return rows;
  }

 private:
  std::size_t n_;
};

LinearConstraint PackingRow(std::size_t n, std::uint64_t s_mask, std::size_t k) {
  LinearConstraint row;
  row.coeffs.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (s_mask >> i & 1) row.coeffs[i] = 1;
  }
  row.rel = Relation::kLessEqual;
  row.rhs = static_cast<long>(k) - 1;
  return row;
}

class PackingOracle : public RowOracle {
 public:
  PackingOracle(std::size_t n, std::size_t k) : n_(n), k_(k) {}

  std::size_t dim() const override { return n_; }
  std::uint64_t family_size() const override {
    const Integer b = Binomial(n_, k_);
    return b.fits_ulong_p() ? b.get_ui() : UINT64_MAX;
  }
  std::map<std::string, std::string> Describe() const override {
    return {{"family", "packing"}, {"n", std::to_string(n_)}, {"k", std::to_string(k_)}};
  }

  std::optional<LinearConstraint> Separate(const RationalVector& x) const override {
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
    std::uint64_t s = 0;
    Rational lhs = 0;
    for (std::size_t t = 0; t < k_; ++t) {
      s |= std::uint64_t{1} << order[t];
      lhs += x[order[t]];
    }
    if (lhs <= static_cast<long>(k_) - 1) return std::nullopt;
    return PackingRow(n_, s, k_);
  }

  bool Owns(const LinearConstraint& row) const override {
    if (row.coeffs.size() != n_ || row.rel == Relation::kEqual) return false;
    const LinearConstraint c = CanonicalRow(row);
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (c.coeffs[i] > 0) s |= std::uint64_t{1} << i;
    }
    return static_cast<std::size_t>(std::popcount(s)) == k_ && c == CanonicalRow(PackingRow(n_, s, k_));
  }

  std::vector<LinearConstraint> Materialize() const override {
    if (n_ > 63) throw Error(ErrorCode::kTooLargeForExplicit, "packing family too large");
    std::vector<LinearConstraint> rows;
    for (std::uint64_t s : SubsetsOfSize(n_, k_)) rows.push_back(PackingRow(n_, s, k_));
    return rows;
  }

 private:
  std::size_t n_;
  std::size_t k_;
};

std::vector<std::pair<std::size_t, std::size_t>> TspEdges(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return edges;
}

// x(δ(W)) >= 2 for W given by bit mask over cities.
LinearConstraint SubtourRow(std::size_t n, std::uint64_t w) {
  LinearConstraint row;
  row.coeffs.assign(TspEdgeCount(n), 0);
  std::size_t e = 0;
  for (auto [u, v] : TspEdges(n)) {
    if (((w >> u) & 1) != ((w >> v) & 1)) row.coeffs[e] = 1;
    ++e;
  }
  row.rel = Relation::kGreaterEqual;
  row.rhs = 2;
  return row;
}

// City 0 in W, 2 <= |W| <= n - 2.
std::vector<std::uint64_t> SubtourSets(std::size_t n) {
  std::vector<std::uint64_t> sets;
  if (n < 4) return sets;
  for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (n - 1)); ++rest) {
    const std::uint64_t w = rest << 1 | 1;
    const int size = std::popcount(w);
    if (size >= 2 && static_cast<std::size_t>(size) <= n - 2) sets.push_back(w);
  }
  return sets;
}

class SubtourOracle : public RowOracle {
 public:
  explicit SubtourOracle(std::size_t n) : n_(n), sets_(SubtourSets(n)) {}

  std::size_t dim() const override { return TspEdgeCount(n_); }
  std::uint64_t family_size() const override { return sets_.size(); }
  std::map<std::string, std::string> Describe() const override {
    return {{"family", "tsp_subtour"}, {"n", std::to_string(n_)}};
  }

  std::optional<LinearConstraint> Separate(const RationalVector& x) const override {
    const auto edges = TspEdges(n_);
    std::optional<std::uint64_t> best;
    Rational best_cut = 2;
    for (std::uint64_t w : sets_) {
      Rational cut = 0;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (((w >> edges[e].first) & 1) != ((w >> edges[e].second) & 1)) cut += x[e];
      }
      if (cut < best_cut) {
        best_cut = cut;
        best = w;
      }
    }
    if (!best) return std::nullopt;
    return SubtourRow(n_, *best);
  }

  bool Owns(const LinearConstraint& row) const override {
    if (row.coeffs.size() != dim() || row.rel == Relation::kEqual) return false;
    const LinearConstraint c = CanonicalRow(row);
    return std::any_of(sets_.begin(), sets_.end(),
                       [&](std::uint64_t w) { return c == CanonicalRow(SubtourRow(n_, w)); });
  }

  std::vector<LinearConstraint> Materialize() const override {
    std::vector<LinearConstraint> rows;
    for (std::uint64_t w : sets_) rows.push_back(SubtourRow(n_, w));
    return rows;
  }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> sets_;
};

void CheckPackingSpec(std::size_t n, std::size_t k) {
  if (k < 2 || 2 * k > n || n > 63) {
    throw Error(ErrorCode::kSpecViolation, "packing family needs 2 <= k <= n/2");
  }
}

// Minimum (or maximum) of a·x over Half_s.
Rational HalfExtreme(const RationalVector& a, std::size_t s, bool maximize) {
  Rational base = 0;
  std::vector<Rational> penalty;
  penalty.reserve(a.size());
  for (const Rational& v : a) {
    if (maximize ? v > 0 : v < 0) base += v;
    penalty.push_back(abs(v) / 2);
  }
  std::sort(penalty.begin(), penalty.end());
  for (std::size_t t = 0; t < s; ++t) base += maximize ? Rational(-penalty[t]) : penalty[t];
  return base;
}

bool RowHoldsOnHalf(const LinearConstraint& row, std::size_t s) {
  switch (row.rel) {
    case Relation::kGreaterEqual:
      return HalfExtreme(row.coeffs, s, false) >= row.rhs;
    case Relation::kLessEqual:
      return HalfExtreme(row.coeffs, s, true) <= row.rhs;
    case Relation::kEqual:
      return HalfExtreme(row.coeffs, s, false) == row.rhs && HalfExtreme(row.coeffs, s, true) == row.rhs;
  }
  return false;
}

}  // namespace

Integer Binomial(std::size_t n, std::size_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

LinearConstraint CrossRow(std::size_t n, std::uint64_t j_mask) {
  LinearConstraint row;
  row.coeffs.assign(n, 0);
  long outside = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j_mask >> i & 1) {
      row.coeffs[i] = 1;
    } else {
      row.coeffs[i] = -1;
      ++outside;
    }
  }
  row.rel = Relation::kGreaterEqual;
  row.rhs = Rational(1, 2) - outside;
  return row;
}

Polytope GenCrossPolytope(const CrossSpec& spec) {
  if (spec.n == 0) throw Error(ErrorCode::kSpecViolation, "cross polytope needs n >= 1");
  Polytope p;
  p.dim = spec.n;
  auto oracle = std::make_shared<CrossOracle>(spec.n);
  if (spec.oracle) {
    p.oracle = oracle;
  } else {
    if (spec.n > kMaxExplicitCross) {
      throw Error(ErrorCode::kTooLargeForExplicit, "explicit cross polytope needs n <= 16");
    }
    p.rows = oracle->Materialize();
  }
  p.provenance = {{"family", "cross"}, {"n", std::to_string(spec.n)},
                  {"mode", spec.oracle ? "oracle" : "explicit"}};
  return p;
}

Polytope GenPackingFamily(const PackingSpec& spec) {
  CheckPackingSpec(spec.n, spec.k);
  Polytope p;
  p.dim = spec.n;
  auto oracle = std::make_shared<PackingOracle>(spec.n, spec.k);
  if (spec.oracle) {
    p.oracle = oracle;
  } else {
    p.rows = oracle->Materialize();
  }
  if (spec.with_cover) {
    LinearConstraint cover;
    cover.coeffs.assign(spec.n, 1);
    cover.rel = Relation::kGreaterEqual;
    cover.rhs = static_cast<long>(spec.k);
    p.rows.push_back(std::move(cover));
  }
  p.provenance = {{"family", spec.with_cover ? "packing_cover" : "packing"},
                  {"n", std::to_string(spec.n)},
                  {"k", std::to_string(spec.k)},
                  {"mode", spec.oracle ? "oracle" : "explicit"}};
  return p;
}

Polytope GenSetCover(std::size_t n, std::size_t k) {
  CheckPackingSpec(n, k);
  Polytope p;
  p.dim = n;
  for (std::uint64_t s : SubsetsOfSize(n, k)) {
    LinearConstraint row;
    row.coeffs.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (s >> i & 1) row.coeffs[i] = 1;
    }
    row.rel = Relation::kGreaterEqual;
    row.rhs = 1;
    p.rows.push_back(std::move(row));
  }
  p.provenance = {{"family", "set_cover"}, {"n", std::to_string(n)}, {"k", std::to_string(k)}};
  return p;
}

Rational GaussianSample(const PerturbedSpec& spec, std::uint64_t row_mask, std::size_t coord) {
  const double u1 = CounterUniform(spec.seed, row_mask, coord, 0);
  const double u2 = CounterUniform(spec.seed, row_mask, coord, 1);
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  const double scaled = z * spec.sigma.get_d() * static_cast<double>(spec.denom);
  return MakeRational(static_cast<std::int64_t>(std::llround(scaled)), spec.denom);
}

Polytope GenPerturbedCross(const PerturbedSpec& spec) {
  if (spec.n == 0) throw Error(ErrorCode::kSpecViolation, "perturbed cross polytope needs n >= 1");
  if (spec.n > kMaxExplicitCross) throw Error(ErrorCode::kTooLarge, "perturbed cross polytope needs n <= 16");
  if (spec.denom <= 0 || spec.sigma < 0) throw Error(ErrorCode::kSpecViolation, "bad noise parameters");
  Polytope p;
  p.dim = spec.n;
  const long n = static_cast<long>(spec.n);
  const std::uint64_t count = std::uint64_t{1} << spec.n;
  p.rows.resize(count);
  ForEachIndex(Execution::kParallel, count, [&](std::size_t idx) {
    const std::uint64_t in = idx;
    LinearConstraint row;
    row.coeffs.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
      const Rational coeff = 1 + GaussianSample(spec, in, i);
      row.coeffs[i] = (in >> i & 1) ? coeff : Rational(-coeff);
    }
    row.rel = Relation::kGreaterEqual;
    row.rhs = spec.Rhs() - (n - std::popcount(in));
    p.rows[idx] = std::move(row);
  });
  p.provenance = {{"family", "perturbed_cross"},
                  {"n", std::to_string(spec.n)},
                  {"seed", std::to_string(spec.seed)},
                  {"sigma", ToString(spec.sigma)},
                  {"variance", ToString(Rational(spec.sigma * spec.sigma))},
                  {"denom", std::to_string(spec.denom)},
                  {"rhs", ToString(spec.Rhs())}};
  return p;
}

std::size_t TspEdgeCount(std::size_t n) { return n * (n - 1) / 2; }

std::size_t TspEdgeIndex(std::size_t n, std::size_t u, std::size_t v) {
  if (u == v || u >= n || v >= n) throw Error(ErrorCode::kIndexOutOfRange, "bad TSP edge");
  if (u > v) std::swap(u, v);
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

Polytope GenTspSubtour(const TspSpec& spec) {
  if (spec.n < 3) throw Error(ErrorCode::kSpecViolation, "TSP needs at least 3 cities");
  if (spec.n > kMaxTspCities) throw Error(ErrorCode::kTooLarge, "TSP subtour relaxation needs n <= 12");
  Polytope p;
  p.dim = TspEdgeCount(spec.n);
  for (std::size_t v = 0; v < spec.n; ++v) {
    LinearConstraint row;
    row.coeffs.assign(p.dim, 0);
    for (std::size_t u = 0; u < spec.n; ++u) {
      if (u != v) row.coeffs[TspEdgeIndex(spec.n, u, v)] = 1;
    }
    row.rel = Relation::kEqual;
    row.rhs = 2;
    p.rows.push_back(std::move(row));
  }
  auto oracle = std::make_shared<SubtourOracle>(spec.n);
  if (spec.oracle) {
    p.oracle = oracle;
  } else {
    for (auto& row : oracle->Materialize()) p.rows.push_back(std::move(row));
  }
  p.provenance = {{"family", "tsp_subtour"}, {"n", std::to_string(spec.n)},
                  {"mode", spec.oracle ? "oracle" : "explicit"}};
  return p;
}

bool IsHamiltonianCycle(std::size_t n, const RationalVector& x) {
  if (n < 3 || x.size() != TspEdgeCount(n)) return false;
  std::vector<std::vector<std::size_t>> adj(n);
  std::size_t e = 0;
  for (auto [u, v] : TspEdges(n)) {
    if (x[e] == 1) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    } else if (x[e] != 0) {
      return false;
    }
    ++e;
  }
  for (const auto& a : adj) {
    if (a.size() != 2) return false;
  }
  std::size_t prev = 0, cur = adj[0][0], length = 1;
  while (cur != 0) {
    const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = next;
    ++length;
  }
  return length == n;
}

std::shared_ptr<const RowOracle> MakeOracle(const std::map<std::string, std::string>& description) {
  if (description.count("mapped_by")) {
    throw Error(ErrorCode::kParseError, "mapped oracles cannot be rebuilt from a description");
  }
  auto it = description.find("family");
  if (it == description.end()) throw Error(ErrorCode::kParseError, "oracle description lacks 'family'");
  const std::size_t n = ParseSize(description, "n");
  if (it->second == "cross") {
    if (n == 0) throw Error(ErrorCode::kParseError, "cross oracle needs n >= 1");
    return std::make_shared<CrossOracle>(n);
  }
  if (it->second == "packing") {
    const std::size_t k = ParseSize(description, "k");
    try {
      CheckPackingSpec(n, k);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError, e.what());
    }
    return std::make_shared<PackingOracle>(n, k);
  }
  if (it->second == "tsp_subtour") {
    if (n < 3 || n > kMaxTspCities) throw Error(ErrorCode::kParseError, "TSP oracle needs 3 <= n <= 12");
    return std::make_shared<SubtourOracle>(n);
  }
  throw Error(ErrorCode::kParseError, "unknown oracle family '" + it->second + "'");
}

// ---------------------------------------------------------------------------

FacetResult FacetCheckCardinality(std::size_t n, std::size_t k,
                                  const std::optional<std::vector<std::size_t>>& universe) {
  if (k < 2 || 2 * k > n || n > 63) throw Error(ErrorCode::kSpecViolation, "facet check needs 2 <= k <= n/2");
  std::vector<std::size_t> ground;
  if (universe) {
    ground = *universe;
    std::sort(ground.begin(), ground.end());
    ground.erase(std::unique(ground.begin(), ground.end()), ground.end());
    for (std::size_t i : ground) {
      if (i >= n) throw Error(ErrorCode::kIndexOutOfRange, "universe index out of range");
    }
  } else {
    ground.resize(n);
    std::iota(ground.begin(), ground.end(), 0);
  }
  std::vector<RationalVector> points;
  for (std::uint64_t t : SubsetsOfSize(ground.size(), k - 1)) {
    RationalVector x(n, 0);
    for (std::size_t b = 0; b < ground.size(); ++b) {
      if (t >> b & 1) x[ground[b]] = 1;
    }
    points.push_back(std::move(x));
  }
  FacetResult result;
  result.points = points.size();
  result.rank = points.empty() ? 0 : AffineRank(points);
  result.facet = result.rank == n;
  return result;
}

CriticalityResult CriticalityBound(const Polytope& p, const std::vector<std::size_t>& rows,
                                   Execution execution) {
  p.Validate();
  if (p.oracle) throw Error(ErrorCode::kPreconditionViolated, "criticality needs explicit rows");
  for (std::size_t r : rows) {
    if (r >= p.rows.size()) throw Error(ErrorCode::kIndexOutOfRange, "row index out of range");
  }
  if (FirstZeroOnePoint(p)) throw Error(ErrorCode::kPIsFeasible, "P has a 0/1 point");
  if (LpFeasible(p).empty()) throw Error(ErrorCode::kPIsEmpty, "P is empty");

  std::vector<std::optional<RationalVector>> found(rows.size());
  ForEachIndex(execution, rows.size(), [&](std::size_t t) {
    found[t] = FirstZeroOnePoint(p.WithoutRow(rows[t]));
  });
  CriticalityResult result;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (!found[t]) {
      result.violated_row = rows[t];
      result.reason = "removing row " + std::to_string(rows[t]) + " leaves P integer-infeasible";
      return result;
    }
    result.witnesses.push_back(*found[t]);
  }
  std::set<std::size_t> distinct(rows.begin(), rows.end());
  result.verified = true;
  result.bound = MakeRational(2 * static_cast<std::int64_t>(distinct.size()), static_cast<std::int64_t>(p.dim)) - 1;
  return result;
}

RestrictedPolytope GenRestrictedPolytope(const Polytope& p, const RationalVector& c, const Rational& delta,
                                         const std::optional<Rational>& epsilon) {
  p.Validate();
  if (c.size() != p.dim) throw Error(ErrorCode::kDimensionMismatch, "objective dimension differs");
  for (const RationalVector& x : EnumIntegerPoints(p)) {
    if (Dot(c, x) > delta) {
      throw Error(ErrorCode::kInequalityInvalidForHull, "c·x <= delta cuts off the 0/1 point " + ToString(x));
    }
  }
  const LPOutcome lp = LpOptimize(p, c, Sense::kMaximize);
  if (lp.empty()) throw Error(ErrorCode::kPIsEmpty, "P is empty");
  if (lp.status == LPOutcome::Status::kUnbounded) throw Error(ErrorCode::kInternalError, "unbounded LP over P");
  RestrictedPolytope out;
  out.epsilon0 = *lp.value - delta;
  if (out.epsilon0 <= 0) throw Error(ErrorCode::kInequalityValidForP, "c·x <= delta is valid for P");
  out.epsilon = epsilon.value_or(out.epsilon0);
  if (out.epsilon <= 0 || out.epsilon > out.epsilon0) {
    throw Error(ErrorCode::kPreconditionViolated, "epsilon must lie in (0, epsilon0]");
  }
  LinearConstraint cut;
  cut.coeffs = c;
  cut.rel = Relation::kGreaterEqual;
  cut.rhs = delta + out.epsilon;
  out.polytope = p.WithRows(std::span<const LinearConstraint>(&cut, 1));
  out.polytope.provenance["restricted_by"] = ToString(c) + " >= " + ToString(cut.rhs);
  return out;
}

FaceSpec FindHighDimFace(const RationalVector& pi, const Rational& pi0) {
  const std::size_t n = pi.size();
  if (!(Dot(pi, HalfPoint(n)) > pi0)) {
    throw Error(ErrorCode::kPreconditionViolated, "pi·(1/2)1 must exceed pi0");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return abs(pi[a]) > abs(pi[b]); });
  FaceSpec face;
  face.fixed.assign(n, -1);
  const std::size_t fix = (n + 1) / 2;
  for (std::size_t t = 0; t < fix; ++t) {
    const std::size_t i = order[t];
    face.fixed[i] = pi[i] < 0 ? 0 : 1;
  }
  face.dimension = n - fix;

  Polytope box;
  box.dim = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (face.fixed[i] >= 0) box.rows.push_back(VariableBound(n, i, Relation::kEqual, face.fixed[i]));
  }
  const LPOutcome lp = LpOptimize(box, pi, Sense::kMinimize);
  if (lp.status != LPOutcome::Status::kOptimal) throw Error(ErrorCode::kInternalError, "face LP failed");
  face.min_value = *lp.value;
  if (!(face.min_value > pi0)) throw Error(ErrorCode::kInternalError, "face leaves the open halfspace");
  return face;
}

ShatterResult FindShatteredSet(const std::vector<RationalVector>& family, std::size_t k) {
  ShatterResult result;
  if (family.empty()) return result;
  const std::size_t n = family.front().size();
  if (n > kMaxEnumerationDim) throw Error(ErrorCode::kTooLarge, "shattering search needs n <= 24");
  if (k > n) throw Error(ErrorCode::kPreconditionViolated, "k exceeds the dimension");
  std::vector<std::uint32_t> masks;
  for (const RationalVector& x : family) {
    if (x.size() != n) throw Error(ErrorCode::kDimensionMismatch, "points differ in dimension");
    masks.push_back(PointToMask(x));
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  if (masks.size() < (std::size_t{1} << k)) return result;

  for (std::uint64_t j : SubsetsOfSize(n, k)) {
    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < n; ++i) {
      if (j >> i & 1) coords.push_back(i);
    }
    // One representative per pattern on J.
    std::vector<std::optional<std::uint32_t>> rep(std::size_t{1} << k);
    std::size_t seen = 0;
    for (std::uint32_t m : masks) {
      std::size_t pattern = 0;
      for (std::size_t b = 0; b < k; ++b) pattern |= static_cast<std::size_t>(m >> coords[b] & 1) << b;
      if (!rep[pattern]) {
        rep[pattern] = m;
        ++seen;
      }
    }
    if (seen != rep.size()) continue;
    result.found = true;
    result.coords = coords;
    result.half_point.assign(n, 0);
    const Rational weight(1, static_cast<long>(rep.size()));
    for (const auto& m : rep) {
      const RationalVector x = MaskToPoint(*m, n);
      for (std::size_t i = 0; i < n; ++i) result.half_point[i] += weight * x[i];
    }
    return result;
  }
  return result;
}

EntropyResult EntropyBoundCheck(std::size_t n, std::size_t s) {
  if (s < 1 || 2 * s > n) throw Error(ErrorCode::kSpecViolation, "entropy check needs 1 <= s <= n/2");
  EntropyResult result;
  Integer num, s_pow, r_pow;
  mpz_ui_pow_ui(num.get_mpz_t(), n, n);
  mpz_ui_pow_ui(s_pow.get_mpz_t(), s, s);
  mpz_ui_pow_ui(r_pow.get_mpz_t(), n - s, n - s);
  result.lhs = Rational(num, Integer(s_pow * r_pow));
  result.lhs.canonicalize();
  const double p = static_cast<double>(s) / static_cast<double>(n);
  result.lhs_log2 = -static_cast<double>(n) * (p * std::log2(p) + (1 - p) * std::log2(1 - p));
  result.rhs = 0;
  for (std::size_t i = 0; i + 1 <= s; ++i) result.rhs += Binomial(n, i);
  result.holds = result.lhs > Rational(result.rhs);
  return result;
}

Integer HalfPointCount(std::size_t n, std::size_t s) {
  Integer total = 0;
  for (std::size_t j = s; j <= n; ++j) {
    Integer pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, n - j);
    total += Binomial(n, j) * pow2;
  }
  return total;
}

std::vector<RationalVector> GenHalfPoints(std::size_t n, std::size_t s, std::uint64_t budget,
                                          std::uint64_t seed) {
  if (s > n) throw Error(ErrorCode::kSpecViolation, "half points need s <= n");
  const Rational half(1, 2);
  std::vector<RationalVector> out;
  const Integer count = HalfPointCount(n, s);
  if (count <= Integer(static_cast<unsigned long>(budget))) {
    // Base-3 counter, coordinate 0 least significant; digit 1 means 1/2, 2 means 1.
    std::vector<int> digit(n, 0);
    while (true) {
      const auto halves = static_cast<std::size_t>(std::count(digit.begin(), digit.end(), 1));
      if (halves >= s) {
        RationalVector x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = digit[i] == 0 ? Rational(0) : digit[i] == 1 ? half : Rational(1);
        out.push_back(std::move(x));
      }
      std::size_t i = 0;
      while (i < n && digit[i] == 2) digit[i++] = 0;
      if (i == n) break;
      ++digit[i];
    }
    return out;
  }
  // Uniform sample: draw the number of halves j with weight C(n,j) 2^{n-j}.
  std::vector<double> weights;
  for (std::size_t j = 0; j <= n; ++j) {
    weights.push_back(j < s ? 0.0 : Binomial(n, j).get_d() * std::ldexp(1.0, static_cast<int>(n - j)));
  }
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick_j(weights.begin(), weights.end());
  std::vector<std::size_t> perm(n);
  for (std::uint64_t t = 0; t < budget; ++t) {
    const std::size_t j = pick_j(rng);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    RationalVector x(n);
    for (std::size_t q = 0; q < n; ++q) x[perm[q]] = q < j ? half : Rational(static_cast<long>(rng() & 1));
    out.push_back(std::move(x));
  }
  return out;
}

HalfCheck HalfPointsFeasible(const Polytope& p, std::size_t s, Execution execution) {
  p.Validate();
  if (s > p.dim) throw Error(ErrorCode::kSpecViolation, "half points need s <= n");
  const std::vector<LinearConstraint> rows = p.AllRows();
  std::vector<char> ok(rows.size(), 1);
  ForEachIndex(execution, rows.size(), [&](std::size_t r) { ok[r] = RowHoldsOnHalf(rows[r], s); });
  HalfCheck check;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!ok[r]) {
      check.all_feasible = false;
      check.violated_row = r;
      break;
    }
  }
  return check;
}

HalfCheck HalfPointsFeasibleBruteForce(const Polytope& p, std::size_t s) {
  p.Validate();
  const std::vector<LinearConstraint> rows = p.AllRows();
  HalfCheck check;
  for (const RationalVector& x : GenHalfPoints(p.dim, s, UINT64_MAX)) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!rows[r].SatisfiedBy(x)) {
        if (!check.violated_row || r < *check.violated_row) check.violated_row = r;
        check.all_feasible = false;
      }
    }
  }
  return check;
}

}  // namespace bblab
