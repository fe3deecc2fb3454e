// SPDX-License-Identifier: Apache-2.0
//
// Comparison methods: the optimal constant reserve price, projected gradient
// ascent with a strong Wolfe line search, and a difference-of-convex
// algorithm on a continuous ramp surrogate of the reward.

#ifndef RPO_BASELINES_H_
#define RPO_BASELINES_H_

#include <vector>

#include "rpo/core.h"

namespace rpo {

struct ConstantPrice {
  double price = 0.0;
  double reward = 0.0;
};

// Exact maximizer of v -> (1/n) sum_i Reward(v, b1_i, b2_i). The objective
// is piecewise linear and upper semicontinuous, so only 0 and the bids are
// candidates. Ties resolve to the smallest price.
ConstantPrice OptimalConstantPrice(const Dataset& data);

// beta = 0 clipped into the box, offset = constant price clipped into the
// offset bounds. Used as the default start for the local methods.
LinearModel ConstantPriceModel(const Dataset& data, const Box& box);

// (1/n) sum over impressions with b2 < v <= b1 of (w, 1); flat pieces
// contribute nothing. The offset component is returned in beta0.
LinearModel Subgradient(const LinearModel& model, const Dataset& data);

struct WolfeParams {
  double c1 = 1e-4;
  double c2 = 0.9;
  int max_iters = 200;
  double initial_step = 1.0;
  int max_line_search_steps = 40;
};

// Projected gradient ascent. Each step runs a strong Wolfe line search on
// t -> AverageReward(clip(beta + t g)), falling back to halving the step when
// no Wolfe point is found. A step is taken only when the reward strictly
// increases. Returns the best iterate.
// Throws std::invalid_argument if `init` is outside the box.
LinearModel GradientAscent(const Dataset& data, const Box& box,
                           const LinearModel& init, const WolfeParams& params = {});

// Continuous ramp surrogate: equals Reward except on (b1, b1 (1 + gamma)],
// where it falls linearly from b1 to 0.
double DcSurrogate(double v, const AuctionSample& sample, double gamma);

// The surrogate as f - g with convex
//   f(v) = b2 + max(0, v - b2) + max(0, v - b1 (1 + gamma)) / gamma,
//   g(v) = (1 + 1/gamma) max(0, v - b1).
struct DcSplit {
  double f = 0.0;
  double g = 0.0;
};
DcSplit DcDecomposition(double v, const AuctionSample& sample, double gamma);

// Average surrogate value of a model.
double SurrogateObjective(const LinearModel& model, const Dataset& data,
                          double gamma);

struct DcParams {
  double gamma = 0.1;
  int max_iters = 100;
  double tol = 1e-9;
};

struct DcaResult {
  LinearModel model;  // iterate with the best true average reward
  double reward = 0.0;
  std::vector<double> surrogate_trace;  // starts with the initial point
  int iterations = 0;
};

// DCA: linearize f at the current iterate and maximize the concave minorant
// over the box as an LP (hinges of g in epigraph form). Stops when the
// surrogate improves by less than `tol` or after `max_iters`.
// Throws std::invalid_argument if gamma <= 0 or `init` is outside the box.
DcaResult DcaFit(const Dataset& data, const Box& box, const DcParams& params,
                 const LinearModel& init);

}  // namespace rpo

#endif  // RPO_BASELINES_H_
