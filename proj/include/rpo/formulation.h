// SPDX-License-Identifier: Apache-2.0
//
// Mixed-integer and linear formulations of empirical revenue maximization.
//
// Each impression i gets a block that models the closure of the graph of its
// reward function on [l_i, u_i]:
//
//   y <= b2 z1 + b1 z2            y >= b2 (z1 + z2)
//   y <= v + (b2 - l) z1 - b1 z3  y >= v - u z3
//   z1 + z2 + z3 = 1,  l <= v <= u,  z in [0,1]^3 (integer in the MIP)
//
// z1, z2, z3 select the "reserve below b2", "reserve between the bids" and
// "no sale" pieces. The single-block relaxation is the convex hull of the
// mixed-integer set, so the LP relaxation is exact for one impression.

#ifndef RPO_FORMULATION_H_
#define RPO_FORMULATION_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rpo/core.h"
#include "rpo/optimization_model.h"

namespace rpo {

// Handles of the variables and rows one impression contributes.
struct SampleBlock {
  int sample_index = -1;
  double l = 0.0;
  double u = 0.0;
  VarId v;
  VarId y;
  std::array<VarId, 3> z;
  // Disaggregated copies; only set by BuildLiftedBlock.
  std::optional<std::array<VarId, 3>> v_parts;
  std::optional<std::array<VarId, 3>> y_parts;
  int first_row = 0;
  int num_rows = 0;
};

// Appends v in [l,u], y in [0,b1], z in [0,1]^3 and the five block rows.
// Throws std::invalid_argument if l > u or the bids are invalid.
SampleBlock BuildSampleBlock(OptimizationModel& model,
                             const AuctionSample& sample, double l, double u,
                             bool integral, int sample_index = 0);

// Appends the disaggregated (union-of-polytopes) description of the same
// set: v = sum v^k, y = sum y^k with
//   y^1 = b2 z1, l z1 <= v^1 <= b2 z1,
//   y^2 = v^2,   b2 z2 <= v^2 <= b1 z2,
//   y^3 = 0,     b1 z3 <= v^3 <= u z3,
//   z1 + z2 + z3 = 1, z in [0,1]^3.
SampleBlock BuildLiftedBlock(OptimizationModel& model,
                             const AuctionSample& sample, double l, double u,
                             int sample_index = 0);

// Full revenue-maximization model over a dataset and parameter box.
struct ReserveFormulation {
  OptimizationModel model;
  std::vector<VarId> beta;
  std::optional<VarId> offset;
  std::vector<SampleBlock> blocks;
};

// Variables: beta (box bounds), optional offset, then one block per stored
// row with linking row v_i = w_i . beta + beta0. Objective: maximize
// sum_i weight_i y_i, which is the average reward.
ReserveFormulation BuildMip(const Dataset& data, const Box& box);

// BuildMip with every integrality marker cleared.
ReserveFormulation BuildLp(const Dataset& data, const Box& box);

// Reads beta / beta0 from a solution vector, clipped to the variable bounds.
// The y values are not used; re-score the model with AverageReward.
LinearModel ExtractModel(std::span<const double> values,
                         const ReserveFormulation& formulation);

}  // namespace rpo

#endif  // RPO_FORMULATION_H_
