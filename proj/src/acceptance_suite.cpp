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

#include "bblab/acceptance_suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>

#include "bblab/bb_core.hpp"
#include "bblab/enumerate.hpp"
#include "bblab/error.hpp"
#include "bblab/exact_lp.hpp"
#include "bblab/experiment.hpp"
#include "bblab/instances.hpp"
#include "bblab/json_io.hpp"
#include "bblab/search.hpp"
#include "bblab/transforms.hpp"

namespace bblab {
namespace {

// A tree emitted by some criterion, kept in serialized form for replay.
struct Artifact {
  enum class Kind { kInfeasible, kSolve, kSeparate };
  Kind kind = Kind::kInfeasible;
  std::string label;
  Json polytope;
  Json tree;
  Json report;  // kInfeasible: the certificate report
  RationalVector vector;  // objective or x*
  Rational value;
};

struct Context {
  const SuiteOptions& options;
  std::vector<Artifact> artifacts;

  Polytope Cross(std::size_t n) const {
    Polytope p = GenCrossPolytope({n, false});
    if (options.drop_cross_row) p.rows.erase(p.rows.begin());
    return p;
  }

  void AddInfeasible(std::string label, const Polytope& p, const BBTree& tree, const InfeasibilityReport& r) {
    artifacts.push_back({Artifact::Kind::kInfeasible, std::move(label), PolytopeToJson(p), TreeToJson(tree),
                         InfeasibilityReportToJson(r), {}, 0});
  }
};

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  // Records the first failure message only.
  void Require(bool condition, const std::string& message) {
    if (condition || !passed) return;
    passed = false;
    detail.str("");
    detail << message;
  }
};

std::vector<std::size_t> AllRows(const Polytope& p) {
  std::vector<std::size_t> rows(p.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return rows;
}

Outcome CrossTightness(Context& ctx) {
  Outcome o;
  for (std::size_t n = 1; n <= 10 && o.passed; ++n) {
    const Polytope p = ctx.Cross(n);
    const BBTree tree = FullVariableTree(n, n);
    const InfeasibilityReport r = ProvesInfeasibility(tree, p);
    const std::size_t expected = (std::size_t{2} << n) - 1;
    o.Require(r.proved, "n=" + std::to_string(n) + ": full variable tree does not prove infeasibility");
    o.Require(tree.Size() == expected, "n=" + std::to_string(n) + ": size " + std::to_string(tree.Size()));
    if (r.proved) ctx.AddInfeasible("cross full tree n=" + std::to_string(n), p, tree, r);
  }
  if (o.passed) o.detail << "n=1..10 proved with 2^{n+1}-1 nodes (2047 at n=10)";
  return o;
}

Outcome CrossMinTree(Context& ctx) {
  Outcome o;
  try {
    const MinTreeResult one = MinTreeSize(ctx.Cross(1), 2, 8);
    const MinTreeResult two = MinTreeSize(ctx.Cross(2), 2, 8);
    o.Require(one.exact && one.leaves == 2, "P1: expected Exact(2), got " +
                                                std::string(one.exact ? "Exact(" : "MoreThan(") +
                                                std::to_string(one.leaves) + ")");
    o.Require(two.exact && two.leaves == 4, "P2: expected Exact(4), got " +
                                                std::string(two.exact ? "Exact(" : "MoreThan(") +
                                                std::to_string(two.leaves) + ")");
    const Polytope p2 = ctx.Cross(2);
    const std::vector<BBTree> trees = EnumerateTrees(p2, 2, 3);
    std::size_t proving = 0;
    for (const BBTree& t : trees) proving += ProvesInfeasibility(t, p2, Execution::kSerial).proved ? 1 : 0;
    o.Require(proving == 0, std::to_string(proving) + " trees with <= 3 leaves prove P2 infeasible");
    if (o.passed) {
      o.detail << "P1 Exact(2), P2 Exact(4); " << trees.size() << " trees with <=3 leaves, none proves P2"
               << " (bounded coefficients |pi| <= 2 only)";
    }
  } catch (const Error& e) {
    o.Require(false, e.what());
  }
  return o;
}

Outcome HalfSeparation(Context& ctx) {
  Outcome o;
  try {
    const Polytope p2 = ctx.Cross(2);
    const RationalVector x = HalfPoint(2);
    const ResistanceResult r = SeparationResistance(p2, x, 2, 3);
    if (r.tree) {
      Artifact a{Artifact::Kind::kSeparate, "P2 separating tree for (1/2)1", PolytopeToJson(p2),
                 TreeToJson(*r.tree), {}, x, 0};
      ctx.artifacts.push_back(std::move(a));
    }
    o.Require(!r.found, "expected MoreThan(3), got MinLeavesToSeparate(" + std::to_string(r.leaves) + ") after " +
                            std::to_string(r.trees_checked) + " trees");
    if (o.passed) o.detail << "MoreThan(3) over " << r.trees_checked << " trees";
  } catch (const Error& e) {
    o.Require(false, e.what());
  }
  return o;
}

Outcome PackingCriticality(Context& ctx) {
  Outcome o;
  std::ostringstream sizes;
  for (std::size_t n : {4, 6, 8}) {
    for (std::size_t k = 2; 2 * k <= n; ++k) {
      const std::string tag = "Q(" + std::to_string(n) + "," + std::to_string(k) + ")";
      const Polytope q = GenPackingFamily({n, k, true, false});
      o.Require(EnumIntegerPoints(q).empty(), tag + " has a 0/1 point");
      o.Require(q.Contains(Constant(n, MakeRational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n)))),
                tag + ": (k/n)1 not in Q");
      const CriticalityResult crit = CriticalityBound(q, AllRows(q));
      const Rational bound = MakeRational(2 * (Binomial(n, k) + 1), Integer(static_cast<long>(n))) - 1;
      o.Require(crit.verified && crit.bound == bound, tag + ": criticality bound not verified");
      std::vector<BranchStrategy> strategies{BranchStrategy::MostFractional()};
      if (n <= 6) strategies.push_back(BranchStrategy::RandomGeneral(2, 1));
      for (const BranchStrategy& s : strategies) {
        const RunReport run = RunBB(q, s, std::nullopt, {});
        o.Require(run.status == RunReport::Status::kProvedInfeasible, tag + " " + s.Name() + ": not proved");
        o.Require(Rational(static_cast<long>(run.nodes)) >= bound,
                  tag + " " + s.Name() + ": " + std::to_string(run.nodes) + " nodes below bound " + ToString(bound));
        const InfeasibilityReport r = ProvesInfeasibility(run.tree, q);
        o.Require(r.proved, tag + " " + s.Name() + ": engine tree fails the checker");
        if (r.proved) ctx.AddInfeasible(tag + " " + s.Name(), q, run.tree, r);
        sizes << ' ' << tag << '/' << s.Name() << '=' << run.nodes;
      }
    }
  }
  if (o.passed) o.detail << "bounds verified; engine nodes:" << sizes.str();
  return o;
}

Outcome Facets(Context&) {
  Outcome o;
  std::size_t cases = 0;
  for (std::size_t n = 4; n <= 10; ++n) {
    for (std::size_t k = 2; 2 * k <= n; ++k) {
      const FacetResult f = FacetCheckCardinality(n, k);
      o.Require(f.facet && f.rank == n, "n=" + std::to_string(n) + ",k=" + std::to_string(k) + ": rank " +
                                            std::to_string(f.rank));
      ++cases;
    }
  }
  if (o.passed) o.detail << cases << " (n,k) pairs return Facet(n)";
  return o;
}

Outcome SetCover(Context&) {
  Outcome o;
  std::size_t cases = 0;
  auto key = [](const LinearConstraint& row) {
    const LinearConstraint c = CanonicalRow(row);
    return ToString(c.coeffs) + "<=" + ToString(c.rhs);
  };
  for (std::size_t n = 4; n <= 10; ++n) {
    for (std::size_t k = 2; 2 * k <= n; ++k) {
      const std::string tag = "n=" + std::to_string(n) + ",k=" + std::to_string(k);
      const Polytope packing = GenPackingFamily({n, k, false, false});
      const Polytope cover = GenSetCover(n, k);
      std::vector<std::size_t> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      const Polytope image = ApplyMapPolytope(MakeFlip({n, all}), packing);
      std::vector<std::string> a, b;
      for (const auto& row : cover.rows) a.push_back(key(row));
      for (const auto& row : image.rows) b.push_back(key(row));
      o.Require(a == b, tag + ": rows differ from the flip image");
      std::vector<std::uint32_t> flipped;
      for (std::uint32_t m : ZeroOneMasks(packing)) flipped.push_back(~m & ((1u << n) - 1));
      std::sort(flipped.begin(), flipped.end());
      o.Require(flipped == ZeroOneMasks(cover), tag + ": 0/1 points do not biject under the flip");
      ++cases;
    }
  }
  if (o.passed) o.detail << cases << " (n,k) pairs match row-for-row";
  return o;
}

AffineMap RandomMap(std::mt19937_64& rng, std::size_t n) {
  AffineMap f = AffineMap::Identity(n);
  const int steps = 1 + static_cast<int>(rng() % 3);
  for (int s = 0; s < steps; ++s) {
    const std::size_t m = f.out_dim;
    AffineMap g;
    switch (rng() % 3) {
      case 0: {
        FlipSpec spec{m, {}};
        for (std::size_t i = 0; i < m; ++i) {
          if (rng() % 2) spec.flipped.push_back(i);
        }
        g = MakeFlip(spec);
        break;
      }
      case 1: {
        EmbedSpec spec{m, rng() % 2, rng() % 2, {}};
        spec.positions.resize(m + spec.zeros + spec.ones);
        for (std::size_t i = 0; i < spec.positions.size(); ++i) spec.positions[i] = i;
        std::shuffle(spec.positions.begin(), spec.positions.end(), rng);
        g = MakeEmbed(spec);
        break;
      }
      default: {
        DupSpec spec{m, {}};
        const std::size_t copies = 1 + rng() % 2;
        for (std::size_t c = 0; c < copies; ++c) spec.tuple.push_back(rng() % m);
        g = MakeDup(spec);
        break;
      }
    }
    f = Compose(g, f);
  }
  return f;
}

BBTree RandomTree(std::mt19937_64& rng, const std::vector<RationalVector>& samples, std::size_t dim,
                  std::size_t depth) {
  if (depth == 0 || rng() % 4 == 0) return BBTree::Leaf();
  IntegerVector pi(dim);
  bool nonzero = false;
  while (!nonzero) {
    for (auto& v : pi) {
      v = static_cast<long>(rng() % 7) - 3;
      nonzero = nonzero || v != 0;
    }
  }
  const RationalVector& y = samples[rng() % samples.size()];
  const Integer pi0 = Floor(Dot(pi, y)) - static_cast<long>(rng() % 2);
  BBTree left = RandomTree(rng, samples, dim, depth - 1);
  BBTree right = RandomTree(rng, samples, dim, depth - 1);
  return BBTree::Branch(Disjunction(pi, pi0), std::move(left), std::move(right));
}

Outcome Simulation(Context&) {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::size_t vertices = 0, nonempty = 0;
  for (int t = 0; t < 50 && o.passed; ++t) {
    const std::size_t n = 3;
    Polytope p;
    p.dim = n;
    RationalVector center(n);
    for (auto& v : center) v = MakeRational(static_cast<std::int64_t>(rng() % 5), 4);
    for (int r = 0; r < 2; ++r) {
      LinearConstraint row;
      row.coeffs.resize(n);
      for (auto& v : row.coeffs) v = static_cast<long>(rng() % 7) - 3;
      row.rel = Relation::kLessEqual;
      row.rhs = Dot(row.coeffs, center) + MakeRational(static_cast<std::int64_t>(rng() % 4), 4);
      p.rows.push_back(row);
    }
    const AffineMap f = RandomMap(rng, n);
    const Polytope q = ApplyMapPolytope(f, p);
    std::vector<RationalVector> samples;
    for (const RationalVector& v : EnumerateVertices(p)) samples.push_back(f.Apply(v));
    if (samples.empty()) samples.push_back(f.Apply(center));
    const BBTree tree_hat = RandomTree(rng, samples, f.out_dim, 4);
    const BBTree tree = TransformTree(tree_hat, f);
    const auto paths = tree.LeafPaths();
    const auto paths_hat = tree_hat.LeafPaths();
    o.Require(paths.size() == paths_hat.size(), "transformed tree changed shape");
    if (!o.passed) break;
    for (std::size_t leaf = 0; leaf < paths.size(); ++leaf) {
      const auto vs = EnumerateVertices(p, paths[leaf]);
      if (!vs.empty()) ++nonempty;
      for (const RationalVector& v : vs) {
        const RationalVector y = f.Apply(v);
        bool inside = q.Contains(y);
        for (const auto& row : paths_hat[leaf]) inside = inside && row.SatisfiedBy(y);
        o.Require(inside, "trial " + std::to_string(t) + ", leaf " + std::to_string(leaf) + ": f(" + ToString(v) +
                              ") leaves the image atom");
        ++vertices;
      }
    }
  }
  if (o.passed) o.detail << "50 trees, " << nonempty << " nonempty leaf atoms, " << vertices << " vertices mapped";
  return o;
}

Outcome Perturbed(Context&) {
  Outcome o;
  const std::size_t n = 12;
  const std::size_t s = (4 * n + 9) / 10;
  const Rational rhs = MakeRational(2 * static_cast<std::int64_t>(n), 25);
  std::size_t good = 0;
  std::ostringstream bad;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PerturbedSpec spec;
    spec.n = n;
    spec.seed = seed;
    const Polytope p = GenPerturbedCross(spec);
    bool rhs_ok = spec.Rhs() == rhs && p.provenance.at("rhs") == ToString(rhs);
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      const long outside = static_cast<long>(n) - std::popcount(i);
      rhs_ok = rhs_ok && p.rows[i].rhs + outside == rhs;
    }
    o.Require(rhs_ok, "seed " + std::to_string(seed) + ": right-hand side differs from 2n/25");
    const bool infeasible = ZeroOneMasks(p).empty();
    const bool half = HalfPointsFeasible(p, s).all_feasible;
    if (infeasible && half) {
      ++good;
    } else {
      bad << ' ' << seed << (infeasible ? "" : "(0/1 point)") << (half ? "" : "(half point cut)");
    }
  }
  o.Require(good >= 18, std::to_string(good) + "/20 seeds satisfy both events; failing:" + bad.str());
  if (o.passed) {
    o.detail << good << "/20 seeds integer-infeasible with Half_" << s << " inside";
    if (!bad.str().empty()) o.detail << "; failing:" << bad.str();
  }
  return o;
}

Outcome Shattering(Context&) {
  Outcome o;
  std::mt19937_64 rng(77);
  std::size_t families = 0;
  for (std::size_t k = 1; k <= 3; ++k) {
    std::size_t threshold = 0;
    for (std::size_t i = 0; i + 1 <= k; ++i) threshold += Binomial(5, i).get_ui();
    for (int t = 0; t < 200; ++t) {
      std::vector<std::uint32_t> masks(32);
      for (std::uint32_t m = 0; m < 32; ++m) masks[m] = m;
      std::shuffle(masks.begin(), masks.end(), rng);
      const std::size_t size = threshold + 1 + rng() % (32 - threshold);
      std::vector<RationalVector> f;
      for (std::size_t i = 0; i < size; ++i) f.push_back(MaskToPoint(masks[i], 5));
      const ShatterResult r = FindShatteredSet(f, k);
      bool ok = r.found && r.coords.size() == k;
      if (ok) {
        for (std::size_t c : r.coords) ok = ok && r.half_point[c] == MakeRational(1, 2);
        ok = ok && !SeparatingHyperplane(r.half_point, f).separable;
      }
      o.Require(ok, "k=" + std::to_string(k) + ", |F|=" + std::to_string(size) + ": no shattered set");
      ++families;
    }
  }
  std::size_t pairs = 0;
  for (std::size_t n = 5; n <= 30; ++n) {
    const std::size_t s = (4 * n + 9) / 10;
    o.Require(EntropyBoundCheck(n, s).holds, "entropy bound fails at n=" + std::to_string(n));
    ++pairs;
  }
  if (o.passed) o.detail << families << " families shattered, entropy bound holds for " << pairs << " (n,s)";
  return o;
}

Outcome Tsp(Context& ctx) {
  Outcome o;
  for (std::size_t n : {6, 8, 10}) {
    const std::string tag = "n=" + std::to_string(n);
    const InstanceRequest request{"tsp_subtour", n, 0, n, false};
    const Polytope p = BuildInstance(request);
    const RationalVector c = *InstanceObjective(request);
    const RunReport run = RunBB(p, BranchStrategy::MostFractional(), c, {});
    o.Require(run.status == RunReport::Status::kSolved, tag + ": not solved");
    if (run.status != RunReport::Status::kSolved) continue;
    o.Require(IsHamiltonianCycle(n, *run.point) && p.Contains(*run.point), tag + ": incumbent is not a tour");
    const SolveReport check = Solves(run.tree, p, c);
    o.Require(check.solved && check.best_integral_value == run.value, tag + ": tree fails the solves check");
    ctx.artifacts.push_back({Artifact::Kind::kSolve, "TSP " + tag, PolytopeToJson(p), TreeToJson(run.tree), {}, c,
                             *run.value});
    o.detail << ' ' << tag << ": " << run.nodes << " nodes, tour length " << ToString(Rational(-*run.value)) << ';';
  }
  if (o.passed) {
    const std::string sizes = o.detail.str();
    o.detail.str("");
    o.detail << "solved with Hamiltonian incumbents;" << sizes << " lower bound not asserted";
  }
  return o;
}

Outcome Replay(Context& ctx) {
  Outcome o;
  std::size_t checked = 0, certificates = 0;
  for (const Artifact& a : ctx.artifacts) {
    try {
      const Polytope p = PolytopeFromJson(Json::parse(a.polytope.dump()));
      const BBTree tree = TreeFromJson(Json::parse(a.tree.dump()), p.dim);
      switch (a.kind) {
        case Artifact::Kind::kInfeasible: {
          const InfeasibilityReport stored = InfeasibilityReportFromJson(Json::parse(a.report.dump()));
          o.Require(VerifyInfeasibilityReport(tree, p, stored), a.label + ": stored certificates do not verify");
          o.Require(ProvesInfeasibility(tree, p).proved, a.label + ": checker rejects the replayed tree");
          certificates += stored.leaves.size();
          break;
        }
        case Artifact::Kind::kSolve: {
          const SolveReport r = Solves(tree, p, a.vector);
          o.Require(r.solved && r.best_integral_value == a.value, a.label + ": solves() mismatch on replay");
          break;
        }
        case Artifact::Kind::kSeparate:
          o.Require(Separates(tree, p, a.vector).separates, a.label + ": separates() mismatch on replay");
          break;
      }
    } catch (const Error& e) {
      o.Require(false, a.label + ": " + e.what());
    }
    ++checked;
  }
  o.Require(checked > 0, "no trees were emitted");
  if (o.passed) o.detail << checked << " trees and " << certificates << " leaf certificates replayed, 0 mismatches";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)(Context&);
};

constexpr Criterion kCriteria[] = {
    {1, "cross-polytope tightness", CrossTightness},
    {2, "cross-polytope minimum trees", CrossMinTree},
    {3, "separation hardness of (1/2)1", HalfSeparation},
    {4, "packing/cover criticality", PackingCriticality},
    {5, "facet check", Facets},
    {6, "set-cover reduction", SetCover},
    {7, "simulation lemma", Simulation},
    {8, "perturbed cross-polytope", Perturbed},
    {9, "shattering and counting", Shattering},
    {10, "TSP desk scale", Tsp},
    {11, "certificate replay", Replay},
};

}  // namespace

bool SuiteReport::AllPassed() const {
  return !criteria.empty() &&
         std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
}

SuiteReport RunAcceptanceSuite(const SuiteOptions& options, const std::function<void(const CriterionResult&)>& on_result) {
  Context ctx{options, {}};
  SuiteReport report;
  for (const Criterion& c : kCriteria) {
    if (!options.only.empty() && !options.only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result{c.id, c.name, false, "", 0};
    try {
      Outcome o = c.run(ctx);
      result.passed = o.passed;
      result.detail = o.detail.str();
    } catch (const std::exception& e) {
      result.detail = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(result);
    report.criteria.push_back(std::move(result));
  }
  return report;
}

std::string FormatCriterion(const CriterionResult& r) {
  char time[32];
  std::snprintf(time, sizeof time, "%.1f s", r.seconds);
  std::ostringstream out;
  out << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.name << " (" << time << ")";
  if (!r.detail.empty()) out << " - " << r.detail;
  return out.str();
}

}  // namespace bblab
