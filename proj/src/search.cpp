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

#include "bblab/search.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>

#include "bblab/bb_core.hpp"
#include "bblab/enumerate.hpp"
#include "bblab/error.hpp"
#include "bblab/exact_lp.hpp"

namespace bblab {
namespace {

constexpr int kRandomAttempts = 64;

std::uint64_t Mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::optional<Disjunction> MostFractionalSplit(const RationalVector& x) {
  const Rational half(1, 2);
  std::optional<std::size_t> best;
  Rational best_gap;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (IsIntegral(x[j])) continue;
    const Rational gap = abs(Rational(x[j] - Floor(x[j])) - half);
    if (!best || gap < best_gap) {
      best = j;
      best_gap = gap;
    }
  }
  if (!best) return std::nullopt;
  return Disjunction::Variable(x.size(), *best, Floor(x[*best]));
}

struct OpenNode {
  std::size_t id;
  Rational value;
};

struct OpenOrder {
  bool operator()(const OpenNode& a, const OpenNode& b) const {
    if (a.value != b.value) return a.value < b.value;
    return a.id > b.id;
  }
};

struct EngineNode {
  std::vector<LinearConstraint> branching;
  std::vector<bool> path;
  std::size_t depth = 0;
  LPOutcome lp;
  std::optional<Disjunction> disjunction;
  std::size_t left = 0;
  std::size_t right = 0;
};

class Engine {
 public:
  Engine(const Polytope& p, const BranchStrategy& strategy, const std::optional<RationalVector>& objective,
         const SearchBudget& budget)
      : p_(p), strategy_(strategy), budget_(budget) {
    objective_ = objective.value_or(RationalVector(p.dim, 0));
    if (objective_.size() != p.dim) throw Error(ErrorCode::kDimensionMismatch, "objective dimension differs");
  }

  RunReport Run() {
    nodes_.push_back(EngineNode{});
    Solve({0});
    Classify(0);
    RunReport report;
    bool exceeded = false;
    while (!open_.empty()) {
      const OpenNode top = open_.top();
      if (incumbent_value_ && top.value <= *incumbent_value_) break;  // the rest is dominated
      if (nodes_.size() + 2 > budget_.max_nodes || (nodes_.size() + 1) / 2 + 1 > budget_.max_leaves) {
        exceeded = true;
        break;
      }
      open_.pop();
      Branch(top.id, report);
    }
    report.tree = Build(0);
    report.nodes = report.tree.Size();
    report.leaves = report.tree.LeafCount();
    report.lp_solves = lp_solves_;
    if (exceeded) {
      report.status = RunReport::Status::kBudgetExceeded;
    } else if (incumbent_point_) {
      report.status = RunReport::Status::kSolved;
    } else {
      report.status = RunReport::Status::kProvedInfeasible;
    }
    if (incumbent_point_) {
      report.value = incumbent_value_;
      report.point = incumbent_point_;
    }
    return report;
  }

 private:
  void Solve(const std::vector<std::size_t>& ids) {
    ForEachIndex(Execution::kParallel, ids.size(), [&](std::size_t t) {
      EngineNode& node = nodes_[ids[t]];
      node.lp = LpOptimize(p_, objective_, Sense::kMaximize, node.branching);
    });
    lp_solves_ += ids.size();
  }

  void Classify(std::size_t id) {
    const EngineNode& node = nodes_[id];
    if (node.lp.empty()) return;
    if (node.lp.status == LPOutcome::Status::kUnbounded) {
      throw Error(ErrorCode::kInternalError, "unbounded LP at a branch-and-bound node");
    }
    const RationalVector& x = *node.lp.point;
    if (std::all_of(x.begin(), x.end(), [](const Rational& v) { return IsIntegral(v); })) {
      if (!incumbent_value_ || *node.lp.value > *incumbent_value_) {
        incumbent_value_ = node.lp.value;
        incumbent_point_ = x;
      }
      return;
    }
    open_.push({id, *node.lp.value});
  }

  Disjunction Choose(const EngineNode& node, std::size_t id) const {
    const RationalVector& x = *node.lp.point;
    switch (strategy_.kind) {
      case BranchStrategy::Kind::kMostFractional:
        return *MostFractionalSplit(x);
      case BranchStrategy::Kind::kRandomGeneral: {
        std::mt19937_64 rng(Mix(strategy_.seed ^ Mix(id)));
        std::uniform_int_distribution<std::int64_t> coeff(-strategy_.m, strategy_.m);
        for (int attempt = 0; attempt < kRandomAttempts; ++attempt) {
          IntegerVector pi(x.size());
          bool nonzero = false;
          for (auto& v : pi) {
            v = static_cast<long>(coeff(rng));
            nonzero = nonzero || v != 0;
          }
          if (!nonzero) continue;
          const Rational value = Dot(pi, x);
          if (IsIntegral(value)) continue;
          return Disjunction(std::move(pi), Floor(value));
        }
        return *MostFractionalSplit(x);
      }
      case BranchStrategy::Kind::kFixedSequence:
        for (const Disjunction& d : strategy_.sequence) {
          if (d.dim() == x.size() && d.CutsOff(x)) return d;
        }
        throw Error(ErrorCode::kStrategyStuck, "no disjunction in the sequence cuts off " + ToString(x));
    }
    throw Error(ErrorCode::kInternalError, "unknown strategy");
  }

  void Branch(std::size_t id, RunReport& report) {
    const Disjunction d = Choose(nodes_[id], id);
    if (!d.CutsOff(*nodes_[id].lp.point)) {
      throw Error(ErrorCode::kStrategyStuck, "strategy returned a disjunction that keeps the LP optimum");
    }
    report.internal.push_back({nodes_[id].path, d, *nodes_[id].lp.point});
    const std::size_t left = nodes_.size();
    for (int side = 0; side < 2; ++side) {
      EngineNode child;
      child.branching = nodes_[id].branching;
      child.branching.push_back(side == 0 ? d.LeftRow() : d.RightRow());
      child.path = nodes_[id].path;
      child.path.push_back(side == 1);
      child.depth = nodes_[id].depth + 1;
      nodes_.push_back(std::move(child));
    }
    nodes_[id].disjunction = d;
    nodes_[id].left = left;
    nodes_[id].right = left + 1;
    Solve({left, left + 1});
    Classify(left);
    Classify(left + 1);
  }

  BBTree Build(std::size_t id) const {
    const EngineNode& node = nodes_[id];
    if (!node.disjunction) return BBTree::Leaf();
    return BBTree::Branch(*node.disjunction, Build(node.left), Build(node.right));
  }

  const Polytope& p_;
  const BranchStrategy& strategy_;
  const SearchBudget& budget_;
  RationalVector objective_;
  std::vector<EngineNode> nodes_;
  std::priority_queue<OpenNode, std::vector<OpenNode>, OpenOrder> open_;
  std::optional<Rational> incumbent_value_;
  std::optional<RationalVector> incumbent_point_;
  std::size_t lp_solves_ = 0;
};

// ---------------------------------------------------------------------------

std::vector<LinearConstraint> Normalize(std::vector<LinearConstraint> rows) {
  for (auto& row : rows) row = CanonicalRow(row);
  std::sort(rows.begin(), rows.end(), [](const LinearConstraint& a, const LinearConstraint& b) {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    if (a.rel != b.rel) return a.rel < b.rel;
    return a.rhs < b.rhs;
  });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

std::string KeyOf(const std::vector<LinearConstraint>& rows) {
  std::string key;
  for (const auto& row : rows) {
    key += ToString(row.coeffs);
    key += row.rel == Relation::kLessEqual ? "<=" : row.rel == Relation::kGreaterEqual ? ">=" : "=";
    key += ToString(row.rhs);
    key += ';';
  }
  return key;
}

void CheckSearchLimits(const Polytope& p, std::int64_t m) {
  p.Validate();
  if (p.dim > kMaxSearchDim) throw Error(ErrorCode::kTooLarge, "exhaustive search needs dim <= 3");
  if (m < 1 || m > kMaxSearchCoeff) throw Error(ErrorCode::kTooLarge, "exhaustive search needs 1 <= M <= 3");
  if (!p.box) throw Error(ErrorCode::kPreconditionViolated, "exhaustive search needs P inside the unit box");
}

// Atom data shared by the exhaustive searches.  Atoms are identified by their
// sorted vertex lists, so equal atoms reached along different paths share
// one memo entry.  Child vertices come from the parent's: kept vertices plus
// crossings of vertex pairs with the new hyperplane, filtered to points whose
// active rows have full rank.
class AtomCache {
 public:
  AtomCache(const Polytope& p, std::int64_t m) : p_(p), dirs_(CandidateDirections(p.dim, m)) {
    base_rows_ = p.AllRows();
    for (std::size_t j = 0; j < p.dim; ++j) {
      base_rows_.push_back(VariableBound(p.dim, j, Relation::kGreaterEqual, 0));
      base_rows_.push_back(VariableBound(p.dim, j, Relation::kLessEqual, 1));
    }
  }

  const std::string& Key(const std::vector<LinearConstraint>& rows) {
    const std::string row_key = KeyOf(rows);
    auto it = by_rows_.find(row_key);
    if (it != by_rows_.end()) return it->second->first;
    return Register(row_key, EnumerateVertices(p_, rows));
  }

  bool Empty(const std::vector<LinearConstraint>& rows) { return Lookup(rows).vertices.empty(); }

  // Splits where neither child equals the atom; the atom must be nonempty.
  const std::vector<Disjunction>& Splits(const std::vector<LinearConstraint>& rows) {
    Info& info = Lookup(rows);
    if (info.splits) return *info.splits;
    if (info.vertices.empty()) throw Error(ErrorCode::kInternalError, "splits of an empty atom");
    std::vector<Disjunction> out;
    for (const IntegerVector& pi : dirs_) {
      Rational lo = Dot(pi, info.vertices.front());
      Rational hi = lo;
      for (const RationalVector& v : info.vertices) {
        const Rational value = Dot(pi, v);
        if (value < lo) lo = value;
        if (value > hi) hi = value;
      }
      for (Integer pi0 = Ceil(lo) - 1; pi0 <= Floor(hi); ++pi0) {
        if (Rational(pi0) >= hi || Rational(pi0 + 1) <= lo) continue;
        out.emplace_back(pi, pi0);
      }
    }
    info.splits = std::move(out);
    return *info.splits;
  }

  std::vector<LinearConstraint> Child(const std::vector<LinearConstraint>& rows, const LinearConstraint& extra) {
    std::vector<LinearConstraint> out = rows;
    out.push_back(extra);
    out = Normalize(std::move(out));
    const std::string row_key = KeyOf(out);
    if (by_rows_.count(row_key)) return out;
    const std::vector<RationalVector>& parent = Lookup(rows).vertices;
    // Signed slack of the new row, oriented so that >= 0 means kept.
    auto slack = [&](const RationalVector& v) {
      const Rational s = extra.rhs - extra.Lhs(v);
      return extra.rel == Relation::kLessEqual ? s : Rational(-s);
    };
    std::vector<Rational> slacks;
    slacks.reserve(parent.size());
    for (const RationalVector& v : parent) slacks.push_back(slack(v));
    std::vector<RationalVector> candidates;
    for (std::size_t i = 0; i < parent.size(); ++i) {
      if (slacks[i] >= 0) candidates.push_back(parent[i]);
      if (slacks[i] <= 0) continue;
      for (std::size_t j = 0; j < parent.size(); ++j) {
        if (slacks[j] >= 0) continue;
        const Rational t = slacks[i] / (slacks[i] - slacks[j]);
        RationalVector q(p_.dim);
        for (std::size_t c = 0; c < p_.dim; ++c) q[c] = parent[i][c] + t * (parent[j][c] - parent[i][c]);
        candidates.push_back(std::move(q));
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<RationalVector> vertices;
    for (RationalVector& q : candidates) {
      std::vector<RationalVector> active;
      for (const auto* group : {&base_rows_, &out}) {
        for (const LinearConstraint& row : *group) {
          if (row.Lhs(q) == row.rhs) active.push_back(row.coeffs);
        }
      }
      if (active.size() >= p_.dim && MatrixRank(std::move(active)) == p_.dim) vertices.push_back(std::move(q));
    }
    Register(row_key, std::move(vertices));
    return out;
  }

 private:
  struct Info {
    std::vector<RationalVector> vertices;
    std::optional<std::vector<Disjunction>> splits;
  };
  using AtomMap = std::map<std::string, Info>;

  const std::string& Register(const std::string& row_key, std::vector<RationalVector> vertices) {
    std::string key = vertices.empty() ? "empty" : "";
    for (const RationalVector& v : vertices) key += ToString(v) + ";";
    auto atom = atoms_.try_emplace(std::move(key), Info{std::move(vertices), std::nullopt}).first;
    by_rows_.emplace(row_key, atom);
    return atom->first;
  }

  Info& Lookup(const std::vector<LinearConstraint>& rows) { return atoms_.find(Key(rows))->second; }

  const Polytope& p_;
  std::vector<IntegerVector> dirs_;
  std::vector<LinearConstraint> base_rows_;
  AtomMap atoms_;
  std::map<std::string, AtomMap::iterator> by_rows_;
};

class MinTreeSearch {
 public:
  MinTreeSearch(const Polytope& p, std::int64_t m) : cache_(p, m) {}

  // Minimum leaves if at most `budget`.
  std::optional<std::size_t> Solve(const std::vector<LinearConstraint>& rows, std::size_t budget) {
    const std::string key = cache_.Key(rows);
    Entry& entry = memo_[key];
    if (entry.exact) return entry.value <= budget ? std::optional(entry.value) : std::nullopt;
    if (entry.value > budget) return std::nullopt;
    ++visited_;
    if (cache_.Empty(rows)) {
      entry = {true, 1};
      return 1;
    }
    if (budget < 2) {
      entry.value = std::max<std::size_t>(entry.value, 2);
      return std::nullopt;
    }
    std::optional<std::size_t> best;
    std::size_t limit = budget;
    const std::vector<Disjunction> splits = cache_.Splits(rows);
    for (const Disjunction& d : splits) {
      const auto left = Solve(cache_.Child(rows, d.LeftRow()), limit - 1);
      if (!left) continue;
      const auto right = Solve(cache_.Child(rows, d.RightRow()), limit - *left);
      if (!right) continue;
      best = *left + *right;
      limit = *best - 1;
      if (limit < 2) break;
    }
    Entry& slot = memo_[key];
    if (best) {
      slot = {true, *best};
    } else {
      slot.value = budget + 1;
    }
    return best;
  }

  std::size_t visited() const { return visited_; }

 private:
  struct Entry {
    bool exact = false;
    std::size_t value = 0;  // exact minimum, or a strict lower bound when !exact
  };

  AtomCache cache_;
  std::map<std::string, Entry> memo_;
  std::size_t visited_ = 0;
};

class TreeEnumerator {
 public:
  TreeEnumerator(const Polytope& p, std::int64_t m) : cache_(p, m) {}

  const std::vector<BBTree>& Trees(const std::vector<LinearConstraint>& rows, std::size_t max_leaves) {
    const std::string key = cache_.Key(rows) + "#" + std::to_string(max_leaves);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<BBTree> out{BBTree::Leaf()};
    if (max_leaves >= 2 && !cache_.Empty(rows)) {
      const std::vector<Disjunction> splits = cache_.Splits(rows);
      for (const Disjunction& d : splits) {
        const auto left_rows = cache_.Child(rows, d.LeftRow());
        const auto right_rows = cache_.Child(rows, d.RightRow());
        const std::vector<BBTree> lefts = Trees(left_rows, max_leaves - 1);
        for (const BBTree& l : lefts) {
          const std::vector<BBTree>& rights = Trees(right_rows, max_leaves - l.LeafCount());
          for (const BBTree& r : rights) out.push_back(BBTree::Branch(d, l, r));
        }
      }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const BBTree& a, const BBTree& b) { return a.LeafCount() < b.LeafCount(); });
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  AtomCache cache_;
  std::map<std::string, std::vector<BBTree>> memo_;
};

}  // namespace

BranchStrategy BranchStrategy::RandomGeneral(std::int64_t m, std::uint64_t seed) {
  if (m < 1) throw Error(ErrorCode::kConfigError, "random-general needs M >= 1");
  BranchStrategy s;
  s.kind = Kind::kRandomGeneral;
  s.m = m;
  s.seed = seed;
  return s;
}

BranchStrategy BranchStrategy::FixedSequence(std::vector<Disjunction> sequence) {
  BranchStrategy s;
  s.kind = Kind::kFixedSequence;
  s.sequence = std::move(sequence);
  return s;
}

std::string BranchStrategy::Name() const {
  switch (kind) {
    case Kind::kMostFractional:
      return "most-fractional";
    case Kind::kRandomGeneral:
      return "random-general";
    case Kind::kFixedSequence:
      return "fixed-sequence";
  }
  return "unknown";
}

BranchStrategy BranchStrategy::Parse(const std::string& name, std::int64_t m, std::uint64_t seed) {
  if (name == "most-fractional") return MostFractional();
  if (name == "random-general") return RandomGeneral(m, seed);
  throw Error(ErrorCode::kConfigError, "unknown strategy '" + name + "'");
}

const char* RunStatusName(RunReport::Status status) {
  switch (status) {
    case RunReport::Status::kProvedInfeasible:
      return "ProvedInfeasible";
    case RunReport::Status::kSolved:
      return "Solved";
    case RunReport::Status::kBudgetExceeded:
      return "BudgetExceeded";
  }
  return "Unknown";
}

RunReport RunBB(const Polytope& p, const BranchStrategy& strategy,
                const std::optional<RationalVector>& objective, const SearchBudget& budget) {
  p.Validate();
  if (budget.max_nodes == 0 || budget.max_leaves == 0) throw Error(ErrorCode::kConfigError, "budget must be positive");
  return Engine(p, strategy, objective, budget).Run();
}

std::vector<IntegerVector> CandidateDirections(std::size_t n, std::int64_t m) {
  std::vector<IntegerVector> out;
  IntegerVector pi(n, -m);
  if (n == 0) return out;
  while (true) {
    auto first = std::find_if(pi.begin(), pi.end(), [](const Integer& v) { return v != 0; });
    if (first != pi.end() && *first > 0) out.push_back(pi);
    std::size_t i = n;
    while (i > 0 && pi[i - 1] == m) pi[--i] = -m;
    if (i == 0) break;
    ++pi[i - 1];
  }
  return out;
}

MinTreeResult MinTreeSize(const Polytope& p, std::int64_t m, std::size_t max_leaves) {
  CheckSearchLimits(p, m);
  if (FirstZeroOnePoint(p)) throw Error(ErrorCode::kPNotInfeasible, "P has a 0/1 point");
  MinTreeSearch search(p, m);
  std::optional<std::size_t> best;
  for (std::size_t budget = 1; budget <= max_leaves && !best; ++budget) best = search.Solve({}, budget);
  MinTreeResult result;
  result.exact = best.has_value();
  result.leaves = best.value_or(max_leaves);
  result.atoms_visited = search.visited();
  return result;
}

ResistanceResult SeparationResistance(const Polytope& p, const RationalVector& x_star, std::int64_t m,
                                      std::size_t max_leaves, Execution execution) {
  CheckSearchLimits(p, m);
  if (x_star.size() != p.dim) throw Error(ErrorCode::kDimensionMismatch, "point dimension differs");
  if (!p.Contains(x_star)) throw Error(ErrorCode::kPointNotInP, "x* is not in P");
  const std::vector<RationalVector> integer_points = EnumIntegerPoints(p);
  if (!integer_points.empty() && !SeparatingHyperplane(x_star, integer_points).separable) {
    throw Error(ErrorCode::kPointInHull, "x* lies in the integer hull");
  }
  TreeEnumerator enumerator(p, m);
  const std::vector<BBTree>& trees = enumerator.Trees({}, max_leaves);
  std::vector<char> separates(trees.size(), 0);
  ForEachIndex(execution, trees.size(), [&](std::size_t i) {
    separates[i] = Separates(trees[i], p, x_star, Execution::kSerial).separates;
  });
  ResistanceResult result;
  result.trees_checked = trees.size();
  result.leaves = max_leaves;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (separates[i]) {
      result.found = true;
      result.leaves = trees[i].LeafCount();
      result.tree = trees[i];
      break;
    }
  }
  return result;
}

std::vector<BBTree> EnumerateTrees(const Polytope& p, std::int64_t m, std::size_t max_leaves) {
  CheckSearchLimits(p, m);
  TreeEnumerator enumerator(p, m);
  return enumerator.Trees({}, max_leaves);
}

}  // namespace bblab
