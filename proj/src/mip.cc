// SPDX-License-Identifier: Apache-2.0

#include "rpo/mip.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <stdexcept>

#include "rpo/baselines.h"

namespace rpo {

const char* ToString(MipStatus status) {
  switch (status) {
    case MipStatus::kOptimal: return "optimal";
    case MipStatus::kFeasibleTimeLimit: return "feasible_time_limit";
    case MipStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

struct Fixing {
  int var;
  double value;
};

struct Node {
  std::int64_t id = 0;
  double bound = 0.0;
  std::vector<Fixing> fixings;
  std::shared_ptr<const Basis> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

Box BoxOf(const ReserveFormulation& f) {
  Box box;
  for (VarId id : f.beta) {
    box.lower.push_back(f.model.variable(id).lower);
    box.upper.push_back(f.model.variable(id).upper);
  }
  if (f.offset) {
    box.offset_lower = f.model.variable(*f.offset).lower;
    box.offset_upper = f.model.variable(*f.offset).upper;
  }
  return box;
}

class Search {
 public:
  Search(const ReserveFormulation& f, const Dataset& data,
         const MipOptions& options)
      : f_(f), data_(data), options_(options), start_(Clock::now()) {
    if (!(options.time_limit_seconds > 0.0)) {
      throw std::invalid_argument("MIP time limit must be positive");
    }
    if (static_cast<int>(f.blocks.size()) != data.num_rows()) {
      throw std::invalid_argument("formulation does not match dataset");
    }
    deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(
                             std::chrono::duration<double>(options.time_limit_seconds));
    SimplexOptions so = options.simplex;
    so.deadline = deadline_;
    lp_ = std::make_unique<BoundedSimplex>(f.model, so);
    result_.dual_bound = PerfectInfoUpperBound(data);
    result_.root_bound = result_.dual_bound;
    Offer(ConstantPriceModel(data, BoxOf(f)));
  }

  MipResult RunBranchAndBound();
  MipResult RunRootOnly();

 private:
  double Elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }
  bool OutOfTime() const { return Clock::now() >= deadline_; }
  double Tolerance() const {
    return options_.gap_tol * std::max(1.0, std::abs(result_.incumbent_reward));
  }

  void Offer(const LinearModel& model) {
    const double reward = AverageReward(model, data_);
    if (reward > result_.incumbent_reward) {
      result_.incumbent = model;
      result_.incumbent_reward = reward;
    }
  }

  LpSolution SolveWith(const std::vector<Fixing>& fixings, const Basis* warm) {
    lp_->ResetBounds();
    for (const Fixing& fx : fixings) lp_->SetBounds(fx.var, fx.value, fx.value);
    LpSolution sol = lp_->Solve(warm);
    result_.lp_iterations += sol.iterations;
    return sol;
  }

  // Most fractional indicator; ties go to the lowest sample, then lowest z.
  int MostFractional(const std::vector<double>& x) const {
    int best = -1;
    double best_frac = options_.integrality_tol;
    for (const SampleBlock& b : f_.blocks) {
      for (VarId z : b.z) {
        const double frac = std::min(x[z.index], 1.0 - x[z.index]);
        if (frac > best_frac) {
          best_frac = frac;
          best = z.index;
        }
      }
    }
    return best;
  }

  int LargestFractional(const std::vector<double>& x) const {
    int best = -1;
    double best_value = -1.0;
    for (const SampleBlock& b : f_.blocks) {
      for (VarId z : b.z) {
        const double v = x[z.index];
        if (std::min(v, 1.0 - v) > options_.integrality_tol && v > best_value) {
          best_value = v;
          best = z.index;
        }
      }
    }
    return best;
  }

  // Re-solves an integral assignment with the reserve kept strictly below b1
  // on sold impressions, so that rounding in w . beta cannot flip a sale
  // into a loss when the model is re-scored.
  void Repair(const std::vector<double>& x, const Basis& warm) {
    std::vector<Fixing> fixings;
    for (const SampleBlock& b : f_.blocks) {
      for (VarId z : b.z) fixings.push_back({z.index, std::round(x[z.index])});
    }
    lp_->ResetBounds();
    for (const Fixing& fx : fixings) lp_->SetBounds(fx.var, fx.value, fx.value);
    for (const SampleBlock& b : f_.blocks) {
      const AuctionSample& s = data_.sample(b.sample_index);
      const double margin = 1e-8 * std::max(1.0, std::abs(s.b1));
      const bool piece2 = std::round(x[b.z[1].index]) == 1.0;
      const bool piece1_tight =
          std::round(x[b.z[0].index]) == 1.0 && s.b1 - s.b2 < margin;
      if (piece2 || piece1_tight) {
        const double cap = (piece2 ? s.b1 : s.b2) - margin;
        if (cap >= b.l) lp_->SetBounds(b.v.index, b.l, std::min(b.u, cap));
      }
    }
    LpSolution sol = lp_->Solve(&warm);
    result_.lp_iterations += sol.iterations;
    if (sol.status == LpStatus::kOptimal) Offer(ExtractModel(sol.values, f_));
  }

  void Consider(const LpSolution& sol) {
    Offer(ExtractModel(sol.values, f_));
    if (MostFractional(sol.values) < 0 &&
        result_.incumbent_reward < sol.objective - Tolerance()) {
      Repair(sol.values, sol.basis);
    }
  }

  // Fixes the largest fractional indicator to 1 (0 if that is infeasible)
  // until the LP solution is integral.
  void Dive(std::vector<Fixing> fixings, LpSolution sol) {
    while (!OutOfTime()) {
      const int var = LargestFractional(sol.values);
      if (var < 0) return;
      fixings.push_back({var, 1.0});
      LpSolution next = SolveWith(fixings, &sol.basis);
      if (next.status != LpStatus::kOptimal) {
        if (next.status != LpStatus::kInfeasible) return;
        fixings.back().value = 0.0;
        next = SolveWith(fixings, &sol.basis);
        if (next.status != LpStatus::kOptimal) return;
      }
      sol = std::move(next);
      Consider(sol);
    }
  }

  void Log(std::int64_t open) {
    if (!options_.log) return;
    MipProgress p;
    p.nodes = result_.nodes_explored;
    p.open_nodes = open;
    p.dual_bound = result_.dual_bound;
    p.incumbent_reward = result_.incumbent_reward;
    p.elapsed_seconds = Elapsed();
    options_.log(p);
  }

  MipResult Finish(bool closed, std::int64_t open) {
    if (!result_.incumbent) {
      result_.status = MipStatus::kInfeasible;
    } else if (closed || result_.dual_bound - result_.incumbent_reward <= Tolerance()) {
      result_.status = MipStatus::kOptimal;
      if (closed) result_.dual_bound = result_.incumbent_reward;
    } else {
      result_.status = MipStatus::kFeasibleTimeLimit;
    }
    result_.wall_seconds = Elapsed();
    Log(open);
    return result_;
  }

  const ReserveFormulation& f_;
  const Dataset& data_;
  const MipOptions& options_;
  Clock::time_point start_;
  Clock::time_point deadline_;
  std::unique_ptr<BoundedSimplex> lp_;
  MipResult result_;
};

MipResult Search::RunRootOnly() {
  LpSolution root = SolveWith({}, nullptr);
  ++result_.nodes_explored;
  if (root.status == LpStatus::kInfeasible) return Finish(true, 0);
  if (root.status != LpStatus::kOptimal) return Finish(false, 1);
  result_.root_bound = root.objective;
  result_.dual_bound = root.objective;
  Consider(root);
  Dive({}, root);
  return Finish(false, 0);
}

MipResult Search::RunBranchAndBound() {
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::int64_t next_id = 0;
  open.push(Node{next_id++, result_.dual_bound, {}, nullptr});
  // Bounds of nodes whose LP could not be finished; they keep the dual bound
  // valid without being explored.
  double abandoned = -kInfinity;
  bool root = true;
  bool stopped = false;

  while (!open.empty()) {
    if (OutOfTime() ||
        (options_.node_limit > 0 && result_.nodes_explored >= options_.node_limit)) {
      stopped = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (!root && node.bound <= result_.incumbent_reward + Tolerance()) continue;

    LpSolution sol = SolveWith(node.fixings, node.basis.get());
    ++result_.nodes_explored;
    if (sol.status == LpStatus::kTimeLimit) {
      open.push(std::move(node));
      stopped = true;
      break;
    }
    if (sol.status == LpStatus::kInfeasible) continue;
    if (sol.status != LpStatus::kOptimal) {
      abandoned = std::max(abandoned, node.bound);
      continue;
    }
    const double bound = std::min(sol.objective, node.bound);
    if (root) {
      result_.root_bound = bound;
      root = false;
      Consider(sol);
      if (options_.root_dive) Dive({}, sol);
    } else {
      Consider(sol);
    }
    if (bound > result_.incumbent_reward + Tolerance()) {
      const int var = MostFractional(sol.values);
      if (var >= 0) {
        auto basis = std::make_shared<const Basis>(sol.basis);
        for (double value : {1.0, 0.0}) {
          Node child{next_id++, bound, node.fixings, basis};
          child.fixings.push_back({var, value});
          open.push(std::move(child));
        }
      }
    }
    result_.dual_bound = std::max(
        {result_.incumbent_reward, abandoned,
         open.empty() ? -kInfinity : open.top().bound});
    if (options_.log_every > 0 && result_.nodes_explored % options_.log_every == 0) {
      Log(static_cast<std::int64_t>(open.size()));
    }
  }
  result_.dual_bound =
      std::max({result_.incumbent_reward, abandoned,
                open.empty() ? -kInfinity : open.top().bound});
  const bool closed = !stopped && abandoned == -kInfinity;
  return Finish(closed, static_cast<std::int64_t>(open.size()));
}

}  // namespace

MipResult SolveMip(const ReserveFormulation& formulation, const Dataset& data,
                   const MipOptions& options) {
  Search search(formulation, data, options);
  return search.RunBranchAndBound();
}

MipResult RootNodeSolve(const ReserveFormulation& formulation,
                        const Dataset& data, const MipOptions& options) {
  Search search(formulation, data, options);
  return search.RunRootOnly();
}

OracleResult BreakpointOracle(const Dataset& data, const Box& box) {
  ValidateBox(box);
  if (data.dimension() != 1 || box.dimension() != 1 || box.has_offset()) {
    throw std::invalid_argument(
        "breakpoint oracle needs one feature and no offset");
  }
  const double lo = box.lower[0];
  const double hi = box.upper[0];
  std::vector<double> candidates = {lo, hi};
  for (const AuctionSample& s : data.samples()) {
    const double w = s.features[0];
    if (w == 0.0) continue;
    for (double b : {s.b1, s.b2}) {
      const double c = b / w;
      if (!std::isfinite(c)) continue;
      candidates.push_back(std::clamp(c, lo, hi));
      // The neighbour on the selling side guards against w * (b / w) > b.
      const double inner = std::nextafter(c, w > 0 ? -kInfinity : kInfinity);
      candidates.push_back(std::clamp(inner, lo, hi));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  OracleResult best{lo, -kInfinity};
  LinearModel model = LinearModel::Zero(1);
  for (double beta : candidates) {
    model.beta[0] = beta;
    const double reward = AverageReward(model, data);
    if (reward > best.reward) best = {beta, reward};
  }
  return best;
}

}  // namespace rpo
