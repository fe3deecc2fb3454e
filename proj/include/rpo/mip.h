// SPDX-License-Identifier: Apache-2.0
//
// Branch-and-bound over the reserve price formulation, a root-node-only
// variant, and an exact enumeration oracle for one feature.

#ifndef RPO_MIP_H_
#define RPO_MIP_H_

#include <cstdint>
#include <functional>
#include <optional>

#include "rpo/core.h"
#include "rpo/formulation.h"
#include "rpo/simplex.h"

namespace rpo {

enum class MipStatus {
  kOptimal,
  // Search stopped by the time or node limit with an incumbent.
  kFeasibleTimeLimit,
  kInfeasible,
};

const char* ToString(MipStatus status);

struct MipProgress {
  std::int64_t nodes = 0;
  std::int64_t open_nodes = 0;
  double dual_bound = 0.0;
  double incumbent_reward = 0.0;
  double elapsed_seconds = 0.0;
};

struct MipOptions {
  double time_limit_seconds = 30.0;
  double gap_tol = 1e-6;
  double integrality_tol = 1e-6;
  // 0 means unlimited. Node limits make runs reproducible across machines.
  std::int64_t node_limit = 0;
  // Run the diving heuristic at the root before branching.
  bool root_dive = true;
  SimplexOptions simplex;
  // Called every `log_every` nodes and once at the end.
  std::function<void(const MipProgress&)> log;
  std::int64_t log_every = 1000;
};

struct MipResult {
  std::optional<LinearModel> incumbent;
  // AverageReward of the incumbent, never the model's sum of y.
  double incumbent_reward = -kInfinity;
  double dual_bound = kInfinity;
  double root_bound = kInfinity;
  std::int64_t nodes_explored = 0;
  std::int64_t lp_iterations = 0;
  double wall_seconds = 0.0;
  MipStatus status = MipStatus::kInfeasible;
};

// Best-bound branch-and-bound. Branches on the most fractional z (ties:
// lowest sample, then lowest z index) by fixing it to 0 or 1. Every
// candidate beta is re-scored with AverageReward. The constant price model,
// clipped into the box, seeds the incumbent.
// Throws std::invalid_argument if the time limit is not positive.
MipResult SolveMip(const ReserveFormulation& formulation, const Dataset& data,
                   const MipOptions& options = {});

// Root LP plus a diving pass that repeatedly fixes the largest fractional z
// to 1. Returns the better of the root LP's beta and the dive's best beta;
// the dual bound is the root LP objective.
MipResult RootNodeSolve(const ReserveFormulation& formulation,
                        const Dataset& data, const MipOptions& options = {});

struct OracleResult {
  double beta = 0.0;
  double reward = 0.0;
};

// Exact maximizer for one feature without offset: the empirical revenue is
// piecewise linear and upper semicontinuous in beta, so its maximum over the
// box is attained at a breakpoint b/w or a box end.
// Throws std::invalid_argument unless d == 1 and the offset is disabled.
OracleResult BreakpointOracle(const Dataset& data, const Box& box);

}  // namespace rpo

#endif  // RPO_MIP_H_
