// SPDX-License-Identifier: Apache-2.0

#include "rpo/baselines.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "rpo/optimization_model.h"
#include "rpo/simplex.h"

namespace rpo {

ConstantPrice OptimalConstantPrice(const Dataset& data) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
  const int n = data.num_rows();
  // (bid, weight) sorted by bid, with suffix sums.
  std::vector<std::pair<double, double>> by_b1(n), by_b2(n);
  std::vector<double> candidates = {0.0};
  for (int i = 0; i < n; ++i) {
    const AuctionSample& s = data.sample(i);
    by_b1[i] = {s.b1, data.weight(i)};
    by_b2[i] = {s.b2, data.weight(i)};
    candidates.push_back(s.b1);
    candidates.push_back(s.b2);
  }
  std::sort(by_b1.begin(), by_b1.end());
  std::sort(by_b2.begin(), by_b2.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  std::vector<double> b1_weight(n + 1, 0.0), b2_weight(n + 1, 0.0),
      b2_revenue(n + 1, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    b1_weight[i] = b1_weight[i + 1] + by_b1[i].second;
    b2_weight[i] = b2_weight[i + 1] + by_b2[i].second;
    b2_revenue[i] = b2_revenue[i + 1] + by_b2[i].second * by_b2[i].first;
  }
  auto first_at_least = [](const std::vector<std::pair<double, double>>& v,
                           double p) {
    return static_cast<int>(
        std::lower_bound(v.begin(), v.end(), std::pair{p, -kInfinity}) -
        v.begin());
  };

  ConstantPrice best{0.0, -kInfinity};
  for (double p : candidates) {
    const int k1 = first_at_least(by_b1, p);
    const int k2 = first_at_least(by_b2, p);
    // b2 >= p sells at b2; b2 < p <= b1 sells at p.
    const double value =
        b2_revenue[k2] + p * (b1_weight[k1] - b2_weight[k2]);
    if (value > best.reward) best = {p, value};
  }
  LinearModel flat = LinearModel::Zero(data.dimension());
  flat.beta0 = best.price;
  best.reward = AverageReward(flat, data);
  return best;
}

LinearModel ConstantPriceModel(const Dataset& data, const Box& box) {
  ValidateBox(box);
  LinearModel model = LinearModel::Zero(box.dimension());
  model.beta0 = OptimalConstantPrice(data).price;
  return ProjectToBox(model, box);
}

LinearModel Subgradient(const LinearModel& model, const Dataset& data) {
  LinearModel g = LinearModel::Zero(data.dimension());
  for (int i = 0; i < data.num_rows(); ++i) {
    const AuctionSample& s = data.sample(i);
    const double v = model.Predict(s.features);
    if (v > s.b2 && v <= s.b1) {
      const double w = data.weight(i);
      for (int j = 0; j < g.dimension(); ++j) g.beta[j] += w * s.features[j];
      g.beta0 += w;
    }
  }
  return g;
}

namespace {

// Restriction of the projected reward to a ray.
class RayFunction {
 public:
  RayFunction(const Dataset& data, const Box& box, const LinearModel& origin,
              const LinearModel& direction)
      : data_(data), box_(box), origin_(origin), direction_(direction) {}

  LinearModel At(double t) const {
    LinearModel x = origin_;
    for (int j = 0; j < x.dimension(); ++j) x.beta[j] += t * direction_.beta[j];
    x.beta0 += t * direction_.beta0;
    return ProjectToBox(x, box_);
  }
  double Value(double t) const { return AverageReward(At(t), data_); }
  // One-sided slope along the projected path: clipped coordinates stop.
  double Slope(double t) const {
    const LinearModel x = At(t);
    const LinearModel g = Subgradient(x, data_);
    double slope = 0.0;
    for (int j = 0; j < x.dimension(); ++j) {
      const double d = direction_.beta[j];
      if ((d > 0 && x.beta[j] < box_.upper[j]) ||
          (d < 0 && x.beta[j] > box_.lower[j])) {
        slope += g.beta[j] * d;
      }
    }
    const double d0 = direction_.beta0;
    if ((d0 > 0 && x.beta0 < box_.offset_upper) ||
        (d0 < 0 && x.beta0 > box_.offset_lower)) {
      slope += g.beta0 * d0;
    }
    return slope;
  }

 private:
  const Dataset& data_;
  const Box& box_;
  const LinearModel& origin_;
  const LinearModel& direction_;
};

// Bracketing + bisection zoom for the strong Wolfe conditions, written for
// maximization of phi.
std::optional<double> StrongWolfe(const RayFunction& phi, double phi0,
                                  double slope0, const WolfeParams& p) {
  int budget = p.max_line_search_steps;
  auto sufficient = [&](double t, double value) {
    return value >= phi0 + p.c1 * t * slope0;
  };
  auto curvature = [&](double slope) {
    return std::abs(slope) <= p.c2 * std::abs(slope0);
  };
  auto zoom = [&](double lo, double lo_value, double hi) -> std::optional<double> {
    while (budget-- > 0) {
      const double t = 0.5 * (lo + hi);
      const double value = phi.Value(t);
      if (!sufficient(t, value) || value <= lo_value) {
        hi = t;
        continue;
      }
      const double slope = phi.Slope(t);
      if (curvature(slope)) return t;
      if (slope * (hi - lo) <= 0) hi = lo;
      lo = t;
      lo_value = value;
    }
    return std::nullopt;
  };

  double prev = 0.0, prev_value = phi0;
  double t = p.initial_step;
  for (int i = 1; budget-- > 0; ++i) {
    const double value = phi.Value(t);
    if (!sufficient(t, value) || (i > 1 && value <= prev_value)) {
      return zoom(prev, prev_value, t);
    }
    const double slope = phi.Slope(t);
    if (curvature(slope)) return t;
    if (slope <= 0) return zoom(t, value, prev);
    prev = t;
    prev_value = value;
    t *= 2.0;
  }
  return std::nullopt;
}

bool IsZero(const LinearModel& m) {
  return m.beta0 == 0.0 &&
         std::all_of(m.beta.begin(), m.beta.end(), [](double b) { return b == 0.0; });
}

}  // namespace

LinearModel GradientAscent(const Dataset& data, const Box& box,
                           const LinearModel& init, const WolfeParams& params) {
  ValidateBox(box);
  if (!InsideBox(init, box)) {
    throw std::invalid_argument("gradient ascent start is outside the box");
  }
  LinearModel x = ProjectToBox(init, box);
  double value = AverageReward(x, data);
  for (int iter = 0; iter < params.max_iters; ++iter) {
    LinearModel g = Subgradient(x, data);
    if (!box.has_offset()) g.beta0 = 0.0;
    if (IsZero(g)) break;
    const RayFunction phi(data, box, x, g);
    const double slope0 = phi.Slope(0.0);
    if (!(slope0 > 0.0)) break;

    double next_value = -kInfinity;
    LinearModel next;
    if (auto t = StrongWolfe(phi, value, slope0, params)) {
      next = phi.At(*t);
      next_value = AverageReward(next, data);
    }
    if (!(next_value > value)) {
      double t = params.initial_step;
      for (int k = 0; k < params.max_line_search_steps; ++k, t *= 0.5) {
        LinearModel trial = phi.At(t);
        const double trial_value = AverageReward(trial, data);
        if (trial_value > value) {
          next = std::move(trial);
          next_value = trial_value;
          break;
        }
      }
    }
    if (!(next_value > value)) break;
    x = std::move(next);
    value = next_value;
  }
  return x;
}

double DcSurrogate(double v, const AuctionSample& sample, double gamma) {
  const double b1 = sample.b1;
  if (v <= b1) return Reward(v, b1, sample.b2);
  if (v <= b1 * (1.0 + gamma)) return b1 - (v - b1) / gamma;
  return 0.0;
}

DcSplit DcDecomposition(double v, const AuctionSample& sample, double gamma) {
  const double b1 = sample.b1;
  const double b2 = sample.b2;
  DcSplit split;
  split.f = b2 + std::max(0.0, v - b2) +
            std::max(0.0, v - b1 * (1.0 + gamma)) / gamma;
  split.g = (1.0 + 1.0 / gamma) * std::max(0.0, v - b1);
  return split;
}

double SurrogateObjective(const LinearModel& model, const Dataset& data,
                          double gamma) {
  double total = 0.0;
  for (int i = 0; i < data.num_rows(); ++i) {
    const AuctionSample& s = data.sample(i);
    total += data.weight(i) * DcSurrogate(model.Predict(s.features), s, gamma);
  }
  return total;
}

DcaResult DcaFit(const Dataset& data, const Box& box, const DcParams& params,
                 const LinearModel& init) {
  if (!(params.gamma > 0.0)) throw std::invalid_argument("DCA needs gamma > 0");
  ValidateBox(box);
  if (data.empty()) throw std::invalid_argument("empty dataset");
  if (!InsideBox(init, box)) {
    throw std::invalid_argument("DCA start is outside the box");
  }
  const int d = data.dimension();
  const int n = data.num_rows();
  const double slope = 1.0 + 1.0 / params.gamma;

  OptimizationModel lp;
  std::vector<VarId> beta;
  for (int j = 0; j < d; ++j) {
    beta.push_back(lp.AddVariable("beta_" + std::to_string(j), box.lower[j],
                                  box.upper[j]));
  }
  std::optional<VarId> offset;
  if (box.has_offset()) {
    offset = lp.AddVariable("beta0", box.offset_lower, box.offset_upper);
  }
  std::vector<VarId> hinge;
  for (int i = 0; i < n; ++i) {
    const AuctionSample& s = data.sample(i);
    VarId t = lp.AddVariable("t_" + std::to_string(i), 0.0, kInfinity);
    hinge.push_back(t);
    std::vector<LinearTerm> row = {{t, 1.0}};
    for (int j = 0; j < d; ++j) {
      if (s.features[j] != 0.0) row.push_back({beta[j], -slope * s.features[j]});
    }
    if (offset) row.push_back({*offset, -slope});
    lp.AddConstraint("hinge_" + std::to_string(i), std::move(row),
                     RowSense::kGreaterEqual, -slope * s.b1);
    lp.SetObjectiveCoefficient(t, -data.weight(i));
  }
  BoundedSimplex simplex(lp);

  DcaResult result;
  LinearModel x = ProjectToBox(init, box);
  double surrogate = SurrogateObjective(x, data, params.gamma);
  result.surrogate_trace.push_back(surrogate);
  result.model = x;
  result.reward = AverageReward(x, data);
  Basis basis;
  for (int iter = 0; iter < params.max_iters; ++iter) {
    std::vector<double> coef(d, 0.0);
    double coef0 = 0.0;
    for (int i = 0; i < n; ++i) {
      const AuctionSample& s = data.sample(i);
      const double v = x.Predict(s.features);
      double grad = 0.0;
      if (v > s.b2) grad += 1.0;
      if (v > s.b1 * (1.0 + params.gamma)) grad += 1.0 / params.gamma;
      const double w = data.weight(i) * grad;
      for (int j = 0; j < d; ++j) coef[j] += w * s.features[j];
      coef0 += w;
    }
    for (int j = 0; j < d; ++j) simplex.SetObjectiveCoefficient(beta[j].index, coef[j]);
    if (offset) simplex.SetObjectiveCoefficient(offset->index, coef0);

    LpSolution sol = simplex.Solve(basis.empty() ? nullptr : &basis);
    if (sol.status != LpStatus::kOptimal) break;
    basis = sol.basis;
    LinearModel next = LinearModel::Zero(d);
    for (int j = 0; j < d; ++j) next.beta[j] = sol.values[beta[j].index];
    if (offset) next.beta0 = sol.values[offset->index];
    next = ProjectToBox(next, box);

    const double next_surrogate = SurrogateObjective(next, data, params.gamma);
    ++result.iterations;
    if (!(next_surrogate > surrogate + params.tol)) {
      if (next_surrogate >= surrogate) {
        const double reward = AverageReward(next, data);
        if (reward > result.reward) {
          result.model = next;
          result.reward = reward;
        }
      }
      break;
    }
    x = std::move(next);
    surrogate = next_surrogate;
    result.surrogate_trace.push_back(surrogate);
    const double reward = AverageReward(x, data);
    if (reward > result.reward) {
      result.model = x;
      result.reward = reward;
    }
  }
  return result;
}

}  // namespace rpo
