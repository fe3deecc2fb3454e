// SPDX-License-Identifier: Apache-2.0
//
// Synthetic auction data with two correlated log-normal buyers, first-price
// normalization, and two small adversarial instance families.

#ifndef RPO_DATAGEN_H_
#define RPO_DATAGEN_H_

#include <cstdint>
#include <vector>

#include "rpo/core.h"

namespace rpo {

struct GenParams {
  int d = 10;
  int n = 200;
  double sigma = 0.1;  // noise level, >= 0
  double rho = 0.9;    // buyer correlation, in [-1, 1]
  double alpha = 0.1;  // bid dilation, in [0, 1)
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument naming the offending field.
void ValidateGenParams(const GenParams& params);

struct SyntheticDraw {
  Dataset data;
  // Buyer preference vectors used to draw the bids.
  std::vector<double> c1;
  std::vector<double> c2;
};

// Draw order from one SplitMix64 stream seeded with `seed`:
//   h1, h2 ~ N(0, I/d); c1 = h1, c2 = rho h1 + sqrt(1 - rho^2) h2;
//   per impression: w ~ N(0, I/d), then for j = 1, 2
//   bid_j = exp(mu_j + sigma |mu_j| z_j), mu_j = c_j . w, z_j ~ N(0, 1).
// b1 = (1 + alpha) max(bid), b2 = (1 - alpha) min(bid), then the bids are
// divided by the mean first bid.
SyntheticDraw GenerateSyntheticDraw(const GenParams& params);
Dataset GenerateSynthetic(const GenParams& params);

// Divides every bid by the mean first bid (over impressions).
// Throws std::invalid_argument if that mean is not positive.
Dataset NormalizeFirstPrice(const Dataset& data);

struct UnboundedFamily {
  Dataset data;
  LinearModel reference_optimum;
};

// Two impressions w = (+-sqrt(1 - 1/i^2), 1/i) with b1 = 1, b2 = 0. The
// unique maximizer is beta = (0, i), so the optimum leaves any fixed box as
// i grows. Throws std::invalid_argument if i < 1.
UnboundedFamily GenerateUnboundedFamily(int i);

// 2T impressions w = (+-T, 1 - i), i = 1..T, with b1 = 1, b2 = 0, over the
// box [-1, 1] x {1} without offset. At most one impression sells above b2
// for any beta, so the optimum is 1 / (2T), while the LP relaxation stays
// above 1/2. Throws std::invalid_argument if T < 1.
Instance GenerateLpGapFamily(int t);

}  // namespace rpo

#endif  // RPO_DATAGEN_H_
