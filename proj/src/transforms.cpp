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

#include "bblab/transforms.hpp"

#include <algorithm>

#include "bblab/error.hpp"

namespace bblab {

std::size_t MapStep::OutputDim() const {
  switch (kind) {
    case Kind::kFlip: return n;
    case Kind::kEmbed: return n + zeros + ones;
    case Kind::kDup: return n + indices.size();
  }
  return n;
}

std::string KindName(MapStep::Kind kind) {
  switch (kind) {
    case MapStep::Kind::kFlip: return "flip";
    case MapStep::Kind::kEmbed: return "embed";
    case MapStep::Kind::kDup: return "dup";
  }
  return "unknown";
}

AffineMap AffineMap::Identity(std::size_t n) {
  AffineMap f;
  f.in_dim = f.out_dim = n;
  f.C.assign(n, IntegerVector(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) f.C[i][i] = 1;
  f.d.assign(n, Integer(0));
  f.canonical = true;
  return f;
}

AffineMap AffineMap::FromMatrix(std::vector<IntegerVector> c, IntegerVector d) {
  AffineMap f;
  f.out_dim = c.size();
  f.in_dim = c.empty() ? 0 : c.front().size();
  for (const auto& row : c) {
    if (row.size() != f.in_dim) throw Error(ErrorCode::kDimensionMismatch, "ragged map matrix");
  }
  if (d.size() != f.out_dim) throw Error(ErrorCode::kDimensionMismatch, "offset length differs from rows");
  f.C = std::move(c);
  f.d = std::move(d);
  return f;
}

RationalVector AffineMap::Apply(const RationalVector& x) const {
  if (x.size() != in_dim) throw Error(ErrorCode::kDimensionMismatch, "point length differs from map input");
  RationalVector y(out_dim);
  for (std::size_t i = 0; i < out_dim; ++i) y[i] = Dot(C[i], x) + Rational(d[i]);
  return y;
}

IntegerVector AffineMap::TransposeApply(const IntegerVector& a) const {
  if (a.size() != out_dim) throw Error(ErrorCode::kDimensionMismatch, "vector length differs from map output");
  IntegerVector out(in_dim, Integer(0));
  for (std::size_t i = 0; i < out_dim; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < in_dim; ++j) {
      if (C[i][j] != 0) out[j] += C[i][j] * a[i];
    }
  }
  return out;
}

std::string AffineMap::kind() const {
  if (!canonical) return "general";
  if (steps.empty()) return "identity";
  if (steps.size() == 1) return KindName(steps.front().kind);
  return "compose";
}

namespace {

AffineMap Canonical(MapStep step, std::vector<IntegerVector> c, IntegerVector d) {
  AffineMap f = AffineMap::FromMatrix(std::move(c), std::move(d));
  f.in_dim = step.n;
  f.steps.push_back(std::move(step));
  f.canonical = true;
  return f;
}

}  // namespace

AffineMap MakeFlip(const FlipSpec& spec) {
  std::vector<std::size_t> flipped = spec.flipped;
  std::sort(flipped.begin(), flipped.end());
  flipped.erase(std::unique(flipped.begin(), flipped.end()), flipped.end());
  if (!flipped.empty() && flipped.back() >= spec.n) {
    throw Error(ErrorCode::kSpecViolation, "flip set is not a subset of [n]");
  }
  if (flipped.empty()) return AffineMap::Identity(spec.n);
  AffineMap id = AffineMap::Identity(spec.n);
  for (std::size_t i : flipped) {
    id.C[i][i] = -1;
    id.d[i] = 1;
  }
  MapStep step;
  step.kind = MapStep::Kind::kFlip;
  step.n = spec.n;
  step.indices = std::move(flipped);
  return Canonical(std::move(step), std::move(id.C), std::move(id.d));
}

AffineMap MakeEmbed(const EmbedSpec& spec) {
  const std::size_t out = spec.n + spec.zeros + spec.ones;
  std::vector<std::size_t> positions = spec.positions;
  if (positions.empty()) {
    positions.resize(out);
    for (std::size_t i = 0; i < out; ++i) positions[i] = i;
  }
  if (positions.size() != out) throw Error(ErrorCode::kInvalidPermutation, "positions has the wrong length");
  std::vector<bool> seen(out, false);
  for (std::size_t p : positions) {
    if (p >= out || seen[p]) throw Error(ErrorCode::kInvalidPermutation, "positions is not a bijection");
    seen[p] = true;
  }
  if (spec.zeros + spec.ones == 0) return AffineMap::Identity(spec.n);
  std::vector<IntegerVector> c(out, IntegerVector(spec.n, Integer(0)));
  IntegerVector d(out, Integer(0));
  for (std::size_t i = 0; i < out; ++i) {
    if (i < spec.n) {
      c[positions[i]][i] = 1;
    } else if (i >= spec.n + spec.zeros) {
      d[positions[i]] = 1;
    }
  }
  MapStep step;
  step.kind = MapStep::Kind::kEmbed;
  step.n = spec.n;
  step.zeros = spec.zeros;
  step.ones = spec.ones;
  step.positions = std::move(positions);
  return Canonical(std::move(step), std::move(c), std::move(d));
}

AffineMap MakeDup(const DupSpec& spec) {
  for (std::size_t j : spec.tuple) {
    if (j >= spec.n) throw Error(ErrorCode::kIndexOutOfRange, "duplication index outside [n]");
  }
  if (spec.tuple.empty()) return AffineMap::Identity(spec.n);
  const std::size_t out = spec.n + spec.tuple.size();
  std::vector<IntegerVector> c(out, IntegerVector(spec.n, Integer(0)));
  for (std::size_t i = 0; i < spec.n; ++i) c[i][i] = 1;
  for (std::size_t t = 0; t < spec.tuple.size(); ++t) c[spec.n + t][spec.tuple[t]] = 1;
  MapStep step;
  step.kind = MapStep::Kind::kDup;
  step.n = spec.n;
  step.indices = spec.tuple;
  return Canonical(std::move(step), std::move(c), IntegerVector(out, Integer(0)));
}

AffineMap MakeFromStep(const MapStep& step) {
  switch (step.kind) {
    case MapStep::Kind::kFlip: return MakeFlip({step.n, step.indices});
    case MapStep::Kind::kEmbed: return MakeEmbed({step.n, step.zeros, step.ones, step.positions});
    case MapStep::Kind::kDup: return MakeDup({step.n, step.indices});
  }
  throw Error(ErrorCode::kNonCanonicalMap, "unknown step kind");
}

AffineMap Compose(const AffineMap& outer, const AffineMap& inner) {
  if (outer.in_dim != inner.out_dim) {
    throw Error(ErrorCode::kDimensionMismatch, "inner output dimension differs from outer input");
  }
  AffineMap f;
  f.in_dim = inner.in_dim;
  f.out_dim = outer.out_dim;
  f.C.assign(f.out_dim, IntegerVector(f.in_dim, Integer(0)));
  f.d = outer.d;
  for (std::size_t i = 0; i < f.out_dim; ++i) {
    for (std::size_t k = 0; k < outer.in_dim; ++k) {
      const Integer& a = outer.C[i][k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < f.in_dim; ++j) {
        if (inner.C[k][j] != 0) f.C[i][j] += a * inner.C[k][j];
      }
      f.d[i] += a * inner.d[k];
    }
  }
  f.canonical = outer.canonical && inner.canonical;
  if (f.canonical) {
    f.steps = inner.steps;
    f.steps.insert(f.steps.end(), outer.steps.begin(), outer.steps.end());
  }
  return f;
}

namespace {

LinearConstraint MapRow(const MapStep& step, const LinearConstraint& row) {
  LinearConstraint out;
  out.rel = row.rel;
  out.rhs = row.rhs;
  switch (step.kind) {
    case MapStep::Kind::kFlip:
      out.coeffs = row.coeffs;
      for (std::size_t i : step.indices) {
        out.rhs -= row.coeffs[i];
        out.coeffs[i] = -row.coeffs[i];
      }
      break;
    case MapStep::Kind::kEmbed:
      out.coeffs.assign(step.OutputDim(), Rational(0));
      for (std::size_t i = 0; i < step.n; ++i) out.coeffs[step.positions[i]] = row.coeffs[i];
      break;
    case MapStep::Kind::kDup:
      out.coeffs = row.coeffs;
      out.coeffs.resize(step.OutputDim(), Rational(0));
      break;
  }
  return out;
}

// Inverse of MapRow on rows it can produce; nullopt otherwise.
std::optional<LinearConstraint> UnmapRow(const MapStep& step, const LinearConstraint& row) {
  LinearConstraint out;
  out.rel = row.rel;
  out.rhs = row.rhs;
  switch (step.kind) {
    case MapStep::Kind::kFlip:
      out.coeffs = row.coeffs;
      for (std::size_t i : step.indices) {
        out.coeffs[i] = -row.coeffs[i];
        out.rhs += out.coeffs[i];
      }
      return out;
    case MapStep::Kind::kEmbed: {
      out.coeffs.assign(step.n, Rational(0));
      std::vector<bool> used(step.OutputDim(), false);
      for (std::size_t i = 0; i < step.n; ++i) {
        out.coeffs[i] = row.coeffs[step.positions[i]];
        used[step.positions[i]] = true;
      }
      for (std::size_t i = 0; i < used.size(); ++i) {
        if (!used[i] && row.coeffs[i] != 0) return std::nullopt;
      }
      return out;
    }
    case MapStep::Kind::kDup:
      for (std::size_t i = step.n; i < row.coeffs.size(); ++i) {
        if (row.coeffs[i] != 0) return std::nullopt;
      }
      out.coeffs.assign(row.coeffs.begin(), row.coeffs.begin() + static_cast<std::ptrdiff_t>(step.n));
      return out;
  }
  return std::nullopt;
}

RationalVector Preimage(const MapStep& step, const RationalVector& y) {
  RationalVector x(step.n);
  for (std::size_t i = 0; i < step.n; ++i) {
    x[i] = step.kind == MapStep::Kind::kEmbed ? y[step.positions[i]] : y[i];
  }
  if (step.kind == MapStep::Kind::kFlip) {
    for (std::size_t i : step.indices) x[i] = 1 - x[i];
  }
  return x;
}

class MappedOracle : public RowOracle {
 public:
  MappedOracle(std::shared_ptr<const RowOracle> inner, MapStep step)
      : inner_(std::move(inner)), step_(std::move(step)) {}

  std::size_t dim() const override { return step_.OutputDim(); }
  std::uint64_t family_size() const override { return inner_->family_size(); }
  std::map<std::string, std::string> Describe() const override {
    auto d = inner_->Describe();
    d["mapped_by"] = KindName(step_.kind) + (d.count("mapped_by") ? "," + d["mapped_by"] : "");
    return d;
  }
  std::optional<LinearConstraint> Separate(const RationalVector& y) const override {
    auto row = inner_->Separate(Preimage(step_, y));
    if (!row) return std::nullopt;
    return MapRow(step_, *row);
  }
  bool Owns(const LinearConstraint& row) const override {
    auto back = UnmapRow(step_, row);
    return back && inner_->Owns(*back);
  }
  std::vector<LinearConstraint> Materialize() const override {
    std::vector<LinearConstraint> out;
    for (const auto& row : inner_->Materialize()) out.push_back(MapRow(step_, row));
    return out;
  }

 private:
  std::shared_ptr<const RowOracle> inner_;
  MapStep step_;
};

Polytope ApplyStep(const MapStep& step, const Polytope& p) {
  if (p.dim != step.n) throw Error(ErrorCode::kDimensionMismatch, "map input differs from polytope dim");
  Polytope q;
  q.dim = step.OutputDim();
  q.box = p.box;
  for (const auto& row : p.rows) q.rows.push_back(MapRow(step, row));
  if (p.oracle) q.oracle = std::make_shared<MappedOracle>(p.oracle, step);
  if (step.kind == MapStep::Kind::kEmbed) {
    for (std::size_t t = 0; t < step.zeros + step.ones; ++t) {
      const std::size_t coord = step.positions[step.n + t];
      q.rows.push_back(VariableBound(q.dim, coord, Relation::kEqual, t < step.zeros ? 0 : 1));
    }
  } else if (step.kind == MapStep::Kind::kDup) {
    for (std::size_t t = 0; t < step.indices.size(); ++t) {
      LinearConstraint tie;
      tie.coeffs.assign(q.dim, Rational(0));
      tie.coeffs[step.n + t] = 1;
      tie.coeffs[step.indices[t]] -= 1;
      tie.rel = Relation::kEqual;
      tie.rhs = 0;
      q.rows.push_back(std::move(tie));
    }
  }
  return q;
}

}  // namespace

Polytope ApplyMapPolytope(const AffineMap& f, const Polytope& p) {
  if (!f.canonical) {
    throw Error(ErrorCode::kNonCanonicalMap, "image polytopes need a flip/embed/dup decomposition");
  }
  p.Validate();
  if (p.dim != f.in_dim) throw Error(ErrorCode::kDimensionMismatch, "map input differs from polytope dim");
  Polytope q = p;
  q.provenance.clear();
  for (const auto& step : f.steps) q = ApplyStep(step, q);
  q.provenance = p.provenance;
  if (!f.steps.empty()) q.provenance["image_of"] = f.kind();
  return q;
}

}  // namespace bblab
