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

#include "bblab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "bblab/error.hpp"
#include "bblab/instances.hpp"
#include "bblab/transforms.hpp"

namespace bblab {
namespace {

[[noreturn]] void Fail(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) Fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t SizeFrom(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    Fail(std::string("expected a nonnegative integer for ") + what);
  }
  return j.get<std::size_t>();
}

std::string RelationName(Relation rel) {
  switch (rel) {
    case Relation::kLessEqual:
      return "<=";
    case Relation::kGreaterEqual:
      return ">=";
    case Relation::kEqual:
      return "=";
  }
  return "?";
}

Relation RelationFrom(const Json& j) {
  if (!j.is_string()) Fail("relation must be a string");
  const std::string s = j.get<std::string>();
  if (s == "<=") return Relation::kLessEqual;
  if (s == ">=") return Relation::kGreaterEqual;
  if (s == "=" || s == "==") return Relation::kEqual;
  Fail("unknown relation '" + s + "'");
}

Integer IntegerFromJson(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (!j.is_string()) Fail("integer must be a string or number");
  try {
    return ParseInteger(j.get<std::string>());
  } catch (const Error&) {
    Fail("bad integer '" + j.get<std::string>() + "'");
  }
}

Json IntegerVectorToJson(const IntegerVector& v) {
  Json out = Json::array();
  for (const Integer& x : v) out.push_back(ToString(x));
  return out;
}

IntegerVector IntegerVectorFromJson(const Json& j) {
  if (!j.is_array()) Fail("expected an array of integers");
  IntegerVector out;
  for (const Json& x : j) out.push_back(IntegerFromJson(x));
  return out;
}

std::vector<std::size_t> IndicesFromJson(const Json& j) {
  if (!j.is_array()) Fail("expected an index array");
  std::vector<std::size_t> out;
  for (const Json& x : j) out.push_back(SizeFrom(x, "index"));
  return out;
}

const char* OriginName(RowOrigin origin) {
  switch (origin) {
    case RowOrigin::kBase:
      return "base";
    case RowOrigin::kOracle:
      return "oracle";
    case RowOrigin::kBranching:
      return "branching";
    case RowOrigin::kLowerBound:
      return "lower_bound";
    case RowOrigin::kUpperBound:
      return "upper_bound";
  }
  return "?";
}

RowOrigin OriginFrom(const std::string& s) {
  if (s == "base") return RowOrigin::kBase;
  if (s == "oracle") return RowOrigin::kOracle;
  if (s == "branching") return RowOrigin::kBranching;
  if (s == "lower_bound") return RowOrigin::kLowerBound;
  if (s == "upper_bound") return RowOrigin::kUpperBound;
  Fail("unknown row origin '" + s + "'");
}

LeafReport::Status LeafStatusFrom(const std::string& s) {
  for (auto status : {LeafReport::Status::kEmpty, LeafReport::Status::kNonEmpty,
                      LeafReport::Status::kIntegralOptimum, LeafReport::Status::kDominated,
                      LeafReport::Status::kOpen}) {
    if (s == LeafStatusName(status)) return status;
  }
  Fail("unknown leaf status '" + s + "'");
}

BBTree TreeFrom(const Json& j, std::size_t& dim, std::size_t depth) {
  if (depth > 4096) Fail("tree too deep");
  if (!j.is_object()) Fail("tree node must be an object");
  if (j.contains("leaf")) {
    if (!j.at("leaf").is_boolean() || !j.at("leaf").get<bool>()) Fail("'leaf' must be true");
    return BBTree::Leaf();
  }
  IntegerVector pi = IntegerVectorFromJson(Field(j, "pi"));
  if (dim == 0) dim = pi.size();
  if (pi.size() != dim) Fail("disjunction length differs from the dimension");
  Integer pi0 = IntegerFromJson(Field(j, "pi0"));
  BBTree left = TreeFrom(Field(j, "left"), dim, depth + 1);
  BBTree right = TreeFrom(Field(j, "right"), dim, depth + 1);
  try {
    return BBTree::Branch(Disjunction(std::move(pi), std::move(pi0)), std::move(left), std::move(right));
  } catch (const Error& e) {
    Fail(e.what());
  }
}

Json StepToJson(const MapStep& step) {
  Json j{{"kind", KindName(step.kind)}, {"n", step.n}};
  switch (step.kind) {
    case MapStep::Kind::kFlip:
      j["flipped"] = step.indices;
      break;
    case MapStep::Kind::kDup:
      j["tuple"] = step.indices;
      break;
    case MapStep::Kind::kEmbed:
      j["zeros"] = step.zeros;
      j["ones"] = step.ones;
      j["positions"] = step.positions;
      break;
  }
  return j;
}

MapStep StepFromJson(const Json& j) {
  MapStep step;
  const std::string kind = Field(j, "kind").get<std::string>();
  step.n = SizeFrom(Field(j, "n"), "n");
  if (kind == "flip") {
    step.kind = MapStep::Kind::kFlip;
    step.indices = IndicesFromJson(Field(j, "flipped"));
  } else if (kind == "dup") {
    step.kind = MapStep::Kind::kDup;
    step.indices = IndicesFromJson(Field(j, "tuple"));
  } else if (kind == "embed") {
    step.kind = MapStep::Kind::kEmbed;
    step.zeros = SizeFrom(Field(j, "zeros"), "zeros");
    step.ones = SizeFrom(Field(j, "ones"), "ones");
    step.positions = IndicesFromJson(Field(j, "positions"));
  } else {
    Fail("unknown map step '" + kind + "'");
  }
  return step;
}

}  // namespace

Json RationalToJson(const Rational& value) { return ToString(value); }

Rational RationalFromJson(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) Fail("rational must be a string \"p/q\"");
  try {
    return ParseRational(j.get<std::string>());
  } catch (const Error&) {
    Fail("bad rational '" + j.get<std::string>() + "'");
  }
}

Json PointToJson(const RationalVector& x) {
  Json out = Json::array();
  for (const Rational& v : x) out.push_back(ToString(v));
  return out;
}

RationalVector PointFromJson(const Json& j) {
  if (!j.is_array()) Fail("point must be an array");
  RationalVector out;
  for (const Json& v : j) out.push_back(RationalFromJson(v));
  return out;
}

Json RowToJson(const LinearConstraint& row) {
  return {{"coeffs", PointToJson(row.coeffs)}, {"rel", RelationName(row.rel)}, {"rhs", ToString(row.rhs)}};
}

LinearConstraint RowFromJson(const Json& j) {
  LinearConstraint row;
  row.coeffs = PointFromJson(Field(j, "coeffs"));
  row.rel = RelationFrom(Field(j, "rel"));
  row.rhs = RationalFromJson(Field(j, "rhs"));
  return row;
}

Json PolytopeToJson(const Polytope& p) {
  Json j{{"dim", p.dim}, {"box", p.box}};
  Json rows = Json::array();
  for (const auto& row : p.rows) rows.push_back(RowToJson(row));
  if (p.oracle) {
    const auto description = p.oracle->Describe();
    if (description.count("mapped_by")) {
      for (const auto& row : p.oracle->Materialize()) rows.push_back(RowToJson(row));
    } else {
      j["oracle"] = description;
    }
  }
  j["rows"] = std::move(rows);
  if (!p.provenance.empty()) j["provenance"] = p.provenance;
  return j;
}

Polytope PolytopeFromJson(const Json& j) {
  Polytope p;
  p.dim = SizeFrom(Field(j, "dim"), "dim");
  if (j.contains("box")) {
    if (!j.at("box").is_boolean()) Fail("'box' must be a boolean");
    p.box = j.at("box").get<bool>();
  }
  const Json& rows = Field(j, "rows");
  if (!rows.is_array()) Fail("'rows' must be an array");
  for (const Json& row : rows) p.rows.push_back(RowFromJson(row));
  try {
    if (j.contains("oracle")) {
      p.oracle = MakeOracle(j.at("oracle").get<std::map<std::string, std::string>>());
    }
    if (j.contains("provenance")) {
      for (const auto& [key, value] : j.at("provenance").items()) {
        p.provenance[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(e.what());
  }
  try {
    p.Validate();
  } catch (const Error& e) {
    Fail(e.what());
  }
  return p;
}

Json TreeToJson(const BBTree& tree) {
  if (tree.is_leaf()) return {{"leaf", true}};
  return {{"pi", IntegerVectorToJson(tree.disjunction().pi())},
          {"pi0", ToString(tree.disjunction().pi0())},
          {"left", TreeToJson(tree.left())},
          {"right", TreeToJson(tree.right())}};
}

BBTree TreeFromJson(const Json& j, std::size_t dim) { return TreeFrom(j, dim, 0); }

Json MapToJson(const AffineMap& f) {
  Json c = Json::array();
  for (const IntegerVector& row : f.C) c.push_back(IntegerVectorToJson(row));
  Json j{{"C", c}, {"d", IntegerVectorToJson(f.d)}, {"kind", f.kind()}, {"in_dim", f.in_dim}};
  if (f.canonical) {
    Json steps = Json::array();
    for (const MapStep& step : f.steps) steps.push_back(StepToJson(step));
    j["spec"] = {{"steps", steps}};
  }
  return j;
}

AffineMap MapFromJson(const Json& j) {
  try {
    if (j.contains("spec") && j.at("spec").contains("steps")) {
      const Json& steps = j.at("spec").at("steps");
      if (!steps.is_array()) Fail("'steps' must be an array");
      std::optional<AffineMap> f;
      for (const Json& s : steps) {
        AffineMap g = MakeFromStep(StepFromJson(s));
        f = f ? Compose(g, *f) : g;
      }
      if (!f) f = AffineMap::Identity(SizeFrom(Field(j, "in_dim"), "in_dim"));
      if (j.contains("C") && f->C != [&] {
            std::vector<IntegerVector> c;
            for (const Json& row : j.at("C")) c.push_back(IntegerVectorFromJson(row));
            return c;
          }()) {
        Fail("map matrix disagrees with its step list");
      }
      return *f;
    }
    std::vector<IntegerVector> c;
    for (const Json& row : Field(j, "C")) c.push_back(IntegerVectorFromJson(row));
    return AffineMap::FromMatrix(std::move(c), IntegerVectorFromJson(Field(j, "d")));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    Fail(e.what());
  } catch (const nlohmann::json::exception& e) {
    Fail(e.what());
  }
}

Json CertificateToJson(const FarkasCertificate& certificate) {
  Json rows = Json::array();
  for (const CertificateRow& r : certificate.rows) {
    rows.push_back({{"origin", OriginName(r.origin)},
                    {"index", r.index},
                    {"row", RowToJson(r.row)},
                    {"multiplier", ToString(r.multiplier)}});
  }
  return {{"rows", rows}};
}

FarkasCertificate CertificateFromJson(const Json& j) {
  FarkasCertificate certificate;
  const Json& rows = Field(j, "rows");
  if (!rows.is_array()) Fail("'rows' must be an array");
  for (const Json& r : rows) {
    CertificateRow row;
    row.origin = OriginFrom(Field(r, "origin").get<std::string>());
    row.index = SizeFrom(Field(r, "index"), "index");
    row.row = RowFromJson(Field(r, "row"));
    row.multiplier = RationalFromJson(Field(r, "multiplier"));
    certificate.rows.push_back(std::move(row));
  }
  return certificate;
}

Json LeafReportToJson(const LeafReport& leaf) {
  Json j{{"status", LeafStatusName(leaf.status)}};
  if (leaf.certificate) j["certificate"] = CertificateToJson(*leaf.certificate);
  if (leaf.point) j["point"] = PointToJson(*leaf.point);
  if (leaf.value) j["value"] = ToString(*leaf.value);
  return j;
}

LeafReport LeafReportFromJson(const Json& j) {
  LeafReport leaf;
  leaf.status = LeafStatusFrom(Field(j, "status").get<std::string>());
  if (j.contains("certificate")) leaf.certificate = CertificateFromJson(j.at("certificate"));
  if (j.contains("point")) leaf.point = PointFromJson(j.at("point"));
  if (j.contains("value")) leaf.value = RationalFromJson(j.at("value"));
  return leaf;
}

Json InfeasibilityReportToJson(const InfeasibilityReport& report) {
  Json leaves = Json::array();
  for (const LeafReport& leaf : report.leaves) leaves.push_back(LeafReportToJson(leaf));
  Json j{{"check", "proves_infeasibility"}, {"proved", report.proved}, {"leaves", leaves}};
  if (report.witness_leaf) j["witness_leaf"] = *report.witness_leaf;
  if (report.witness_point) j["witness_point"] = PointToJson(*report.witness_point);
  return j;
}

InfeasibilityReport InfeasibilityReportFromJson(const Json& j) {
  InfeasibilityReport report;
  const Json& proved = Field(j, "proved");
  if (!proved.is_boolean()) Fail("'proved' must be a boolean");
  report.proved = proved.get<bool>();
  for (const Json& leaf : Field(j, "leaves")) report.leaves.push_back(LeafReportFromJson(leaf));
  if (j.contains("witness_leaf")) report.witness_leaf = SizeFrom(j.at("witness_leaf"), "witness_leaf");
  if (j.contains("witness_point")) report.witness_point = PointFromJson(j.at("witness_point"));
  return report;
}

Json SolveReportToJson(const SolveReport& report) {
  Json leaves = Json::array();
  for (const LeafReport& leaf : report.leaves) leaves.push_back(LeafReportToJson(leaf));
  Json j{{"check", "solves"}, {"solved", report.solved}, {"leaves", leaves}};
  if (report.open_leaf) j["open_leaf"] = *report.open_leaf;
  if (report.best_integral_value) j["best_integral_value"] = ToString(*report.best_integral_value);
  return j;
}

Json SeparationReportToJson(const SeparationReport& report) {
  Json j{{"check", "separates"}, {"separates", report.separates}};
  if (!report.hull.weights.empty()) j["weights"] = PointToJson(report.hull.weights);
  Json witnesses = Json::array();
  for (const auto& w : report.hull.witnesses) witnesses.push_back(w ? PointToJson(*w) : Json());
  j["witnesses"] = witnesses;
  return j;
}

Json RunReportToJson(const RunReport& report) {
  Json j{{"status", RunStatusName(report.status)},
         {"nodes", report.nodes},
         {"leaves", report.leaves},
         {"lp_solves", report.lp_solves}};
  if (report.value) j["value"] = ToString(*report.value);
  if (report.point) j["point"] = PointToJson(*report.point);
  return j;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    Fail(path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kConfigError, "cannot write '" + path + "'");
  out << j.dump(1) << '\n';
}

}  // namespace bblab
