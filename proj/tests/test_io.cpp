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


#include <atomic>
#include <filesystem>

#include "bblab/bb_core.hpp"
#include "bblab/error.hpp"
#include "bblab/experiment.hpp"
#include "bblab/instances.hpp"
#include "bblab/json_io.hpp"
#include "bblab/search.hpp"
#include "bblab/transforms.hpp"
#include "doctest.h"

using namespace bblab;

namespace {

Rational Q(long p, long q = 1) { return MakeRational(p, q); }

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternalError;
}

ExperimentConfig CrossConfig() {
  ExperimentConfig c;
  c.family = "cross";
  c.ns = {2, 3, 4, 5, 6, 7, 8};
  c.strategies = {"most-fractional"};
  return c;
}

}  // namespace

TEST_CASE("rationals and rows round-trip through JSON") {
  for (const Rational& q : {Q(0), Q(-7, 3), Q(5), Q(1, 1048576)}) {
    CHECK(RationalFromJson(RationalToJson(q)) == q);
  }
  CHECK(RationalFromJson(Json(3)) == 3);
  CHECK(RationalFromJson(Json("4/6")) == Q(2, 3));
  const LinearConstraint row{{Q(1, 2), Q(-3)}, Relation::kGreaterEqual, Q(7, 5)};
  CHECK(RowFromJson(RowToJson(row)) == row);
  CHECK(CodeOf([] { RationalFromJson(Json("x/2")); }) == ErrorCode::kParseError);
  CHECK(CodeOf([] { RationalFromJson(Json(0.5)); }) == ErrorCode::kParseError);
  CHECK(CodeOf([] { RowFromJson(Json::parse(R"({"coeffs":[1],"rel":"<>","rhs":0})")); }) == ErrorCode::kParseError);
}

TEST_CASE("polytopes round-trip, oracles included") {
  const Polytope explicit_p = GenPackingFamily({5, 2, true, false});
  const Polytope back = PolytopeFromJson(PolytopeToJson(explicit_p));
  CHECK(back.dim == explicit_p.dim);
  CHECK(back.rows == explicit_p.rows);
  CHECK(back.box == explicit_p.box);
  CHECK(back.provenance == explicit_p.provenance);

  const Polytope lazy = GenCrossPolytope({12, true});
  const Polytope lazy_back = PolytopeFromJson(PolytopeToJson(lazy));
  REQUIRE(lazy_back.oracle);
  CHECK(lazy_back.oracle->Describe() == lazy.oracle->Describe());
  CHECK(lazy_back.FamilySize() == lazy.FamilySize());
  const RationalVector half(12, Q(1, 2));
  CHECK(lazy_back.Contains(half) == lazy.Contains(half));

  CHECK(CodeOf([] { PolytopeFromJson(Json::parse(R"({"dim":2,"rows":[{"coeffs":[1],"rel":"<=","rhs":1}]})")); }) ==
        ErrorCode::kParseError);
  CHECK(CodeOf([] { PolytopeFromJson(Json::parse(R"({"rows":[]})")); }) == ErrorCode::kParseError);
}

TEST_CASE("trees, maps and reports round-trip") {
  const Polytope p = GenCrossPolytope({4, false});
  const RunReport run = RunBB(p, BranchStrategy::RandomGeneral(2, 3), std::nullopt, {});
  REQUIRE(run.status == RunReport::Status::kProvedInfeasible);
  const BBTree back = TreeFromJson(TreeToJson(run.tree));
  CHECK(back == run.tree);
  CHECK(TreeFromJson(TreeToJson(BBTree::Leaf())) == BBTree::Leaf());
  CHECK(CodeOf([] { TreeFromJson(Json::parse(R"({"pi":[0,0],"pi0":0,"left":{"leaf":true},"right":{"leaf":true}})")); }) ==
        ErrorCode::kParseError);
  CHECK(CodeOf([] { TreeFromJson(Json::parse(R"({"pi":[1,0],"pi0":0,"left":{"leaf":true}})")); }) ==
        ErrorCode::kParseError);

  const AffineMap f = Compose(MakeDup({5, {0}}), MakeEmbed({4, 1, 0, {}}));
  const AffineMap f_back = MapFromJson(MapToJson(f));
  CHECK(f_back == f);
  CHECK(f_back.canonical);
  CHECK(f_back.steps == f.steps);

  const InfeasibilityReport report = ProvesInfeasibility(run.tree, p);
  REQUIRE(report.proved);
  const InfeasibilityReport report_back = InfeasibilityReportFromJson(InfeasibilityReportToJson(report));
  CHECK(VerifyInfeasibilityReport(run.tree, p, report_back));
  const FarkasCertificate cert = *report.leaves[0].certificate;
  const FarkasCertificate cert_back = CertificateFromJson(CertificateToJson(cert));
  REQUIRE(cert_back.rows.size() == cert.rows.size());
  for (std::size_t i = 0; i < cert.rows.size(); ++i) {
    CHECK(cert_back.rows[i].row == cert.rows[i].row);
    CHECK(cert_back.rows[i].multiplier == cert.rows[i].multiplier);
    CHECK(cert_back.rows[i].origin == cert.rows[i].origin);
  }
  const Json rj = RunReportToJson(run);
  CHECK(rj.at("nodes").get<std::size_t>() == run.nodes);
}

TEST_CASE("JSON files round-trip on disk") {
  const auto dir = std::filesystem::temp_directory_path() / "bblab_test_io";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "p.json").string();
  const Polytope p = GenSetCover(5, 2);
  WriteJsonFile(path, PolytopeToJson(p));
  CHECK(PolytopeFromJson(ReadJsonFile(path)).rows == p.rows);
  CHECK(CodeOf([&] { ReadJsonFile((dir / "missing.json").string()); }) == ErrorCode::kParseError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("experiment config parsing and validation") {
  const ExperimentConfig c = ExperimentConfig::FromJson(Json::parse(
      R"({"family":"packing_cover","n":{"from":4,"to":6},"k":[2],"strategies":["most-fractional"],"m":3})"));
  CHECK(c.ns == std::vector<std::size_t>{4, 5, 6});
  CHECK(c.ks == std::vector<std::size_t>{2});
  CHECK(c.m == 3);
  CHECK_NOTHROW(c.Validate());

  auto invalid = [](ExperimentConfig cfg) { return CodeOf([&] { cfg.Validate(); }); };
  ExperimentConfig bad = CrossConfig();
  bad.strategies.clear();
  CHECK(invalid(bad) == ErrorCode::kConfigError);
  bad = CrossConfig();
  bad.strategies = {"random-general"};
  CHECK(invalid(bad) == ErrorCode::kConfigError);
  bad.seeds = {1};
  CHECK_NOTHROW(bad.Validate());
  bad = CrossConfig();
  bad.family = "knapsack";
  CHECK(invalid(bad) == ErrorCode::kConfigError);
  bad = CrossConfig();
  bad.family = "packing";
  CHECK(invalid(bad) == ErrorCode::kConfigError);
  bad = CrossConfig();
  bad.m = 0;
  CHECK(invalid(bad) == ErrorCode::kConfigError);
  bad = CrossConfig();
  bad.ns.clear();
  CHECK(invalid(bad) == ErrorCode::kConfigError);
  CHECK(CodeOf([] { ExperimentConfig::FromJson(Json::parse(R"({"n":[3]})")); }) == ErrorCode::kConfigError);
}

TEST_CASE("cross experiment: most-fractional builds complete trees") {
  const ExperimentResult r = RunExperiment(CrossConfig());
  REQUIRE(r.rows.size() == 7);
  CHECK_FALSE(r.interrupted);
  for (const ExperimentRow& row : r.rows) {
    const std::size_t full = (std::size_t{1} << (row.n + 1)) - 1;
    CHECK(row.nodes == full);
    CHECK(row.status == "ProvedInfeasible");
    CHECK(row.bound == std::to_string(full));
  }
  const std::string csv = ExperimentCsv(r, false);
  CHECK(csv == ExperimentCsv(RunExperiment(CrossConfig()), false));
  CHECK(csv.rfind("family,n,k,strategy,seed,nodes,leaves,status,bound\n", 0) == 0);
  CHECK(csv.find("cross,8,0,most-fractional,0,511,256,ProvedInfeasible,511\n") != std::string::npos);
}

TEST_CASE("packing_cover trees respect the node lower bound") {
  ExperimentConfig c;
  c.family = "packing_cover";
  c.ns = {4, 5, 6};
  c.ks = {2, 3};
  c.strategies = {"most-fractional", "random-general"};
  c.seeds = {1, 2};
  const ExperimentResult r = RunExperiment(c);
  std::size_t checked = 0;
  for (const ExperimentRow& row : r.rows) {
    if (row.status.rfind("Error", 0) == 0) continue;
    REQUIRE(row.status == "ProvedInfeasible");
    const Rational bound = Q(2) * (Rational(Binomial(row.n, row.k)) + 1) / Q(row.n) - 1;
    CHECK(ParseRational(row.bound) == bound);
    CHECK(Rational(static_cast<long>(row.nodes)) >= bound);
    ++checked;
  }
  CHECK(checked >= 16);
  // Seeded rows are reproducible.
  CHECK(ExperimentCsv(r, false) == ExperimentCsv(RunExperiment(c), false));
}

TEST_CASE("interrupted experiments keep a trailer") {
  std::atomic<bool> stop{true};
  const ExperimentResult r = RunExperiment(CrossConfig(), &stop);
  CHECK(r.interrupted);
  CHECK(r.rows.size() < r.planned);
  const std::string csv = ExperimentCsv(r, false);
  CHECK(csv.find("# interrupted: " + std::to_string(r.rows.size()) + " of 7 rows completed") != std::string::npos);
}
