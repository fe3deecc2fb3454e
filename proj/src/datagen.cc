// SPDX-License-Identifier: Apache-2.0

#include "rpo/datagen.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "rpo/rng.h"

namespace rpo {

void ValidateGenParams(const GenParams& p) {
  if (p.d < 1) throw std::invalid_argument("GenParams.d must be >= 1");
  if (p.n < 1) throw std::invalid_argument("GenParams.n must be >= 1");
  if (!(p.sigma >= 0.0) || !std::isfinite(p.sigma)) {
    throw std::invalid_argument("GenParams.sigma must be finite and >= 0");
  }
  if (!(p.rho >= -1.0 && p.rho <= 1.0)) {
    throw std::invalid_argument("GenParams.rho must lie in [-1, 1]");
  }
  if (!(p.alpha >= 0.0 && p.alpha < 1.0)) {
    throw std::invalid_argument("GenParams.alpha must lie in [0, 1)");
  }
}

namespace {

std::vector<double> ScaledNormal(int d, SplitMix64& rng,
                                 std::normal_distribution<double>& normal) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<double> out(d);
  for (double& x : out) x = scale * normal(rng);
  return out;
}

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

}  // namespace

SyntheticDraw GenerateSyntheticDraw(const GenParams& p) {
  ValidateGenParams(p);
  SplitMix64 rng(p.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::vector<double> h1 = ScaledNormal(p.d, rng, normal);
  const std::vector<double> h2 = ScaledNormal(p.d, rng, normal);
  std::vector<double> c2(p.d);
  const double mix = std::sqrt(std::max(0.0, 1.0 - p.rho * p.rho));
  for (int j = 0; j < p.d; ++j) c2[j] = p.rho * h1[j] + mix * h2[j];

  Dataset raw(p.d);
  for (int i = 0; i < p.n; ++i) {
    std::vector<double> w = ScaledNormal(p.d, rng, normal);
    double bid[2];
    const std::vector<double>* c[2] = {&h1, &c2};
    for (int j = 0; j < 2; ++j) {
      const double mu = Dot(*c[j], w);
      bid[j] = std::exp(mu + p.sigma * std::abs(mu) * normal(rng));
    }
    const double b1 = (1.0 + p.alpha) * std::max(bid[0], bid[1]);
    const double b2 = (1.0 - p.alpha) * std::min(bid[0], bid[1]);
    raw.Add(AuctionSample{std::move(w), b1, b2});
  }
  return SyntheticDraw{NormalizeFirstPrice(raw), h1, c2};
}

Dataset GenerateSynthetic(const GenParams& params) {
  return GenerateSyntheticDraw(params).data;
}

Dataset NormalizeFirstPrice(const Dataset& data) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
  const double mean = PerfectInfoUpperBound(data);
  if (!(mean > 0.0)) {
    throw std::invalid_argument("mean first price must be positive");
  }
  Dataset out(data.dimension());
  for (int i = 0; i < data.num_rows(); ++i) {
    AuctionSample s = data.sample(i);
    s.b1 /= mean;
    s.b2 /= mean;
    out.Add(std::move(s), data.multiplicity(i));
  }
  return out;
}

UnboundedFamily GenerateUnboundedFamily(int i) {
  if (i < 1) throw std::invalid_argument("family index must be >= 1");
  const double inv = 1.0 / i;
  const double side = std::sqrt(1.0 - inv * inv);
  Dataset data(2);
  data.Add(AuctionSample{{side, inv}, 1.0, 0.0});
  data.Add(AuctionSample{{-side, inv}, 1.0, 0.0});
  return UnboundedFamily{std::move(data), LinearModel{{0.0, static_cast<double>(i)}, 0.0}};
}

Instance GenerateLpGapFamily(int t) {
  if (t < 1) throw std::invalid_argument("family size must be >= 1");
  Dataset data(2);
  for (int i = 1; i <= t; ++i) {
    data.Add(AuctionSample{{static_cast<double>(t), 1.0 - i}, 1.0, 0.0});
    data.Add(AuctionSample{{-static_cast<double>(t), 1.0 - i}, 1.0, 0.0});
  }
  Box box;
  box.lower = {-1.0, 1.0};
  box.upper = {1.0, 1.0};
  return Instance{std::move(data), std::move(box)};
}

}  // namespace rpo
