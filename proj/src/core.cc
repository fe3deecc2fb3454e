// SPDX-License-Identifier: Apache-2.0

#include "rpo/core.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rpo {

void ValidateSample(const AuctionSample& sample) {
  if (!(sample.b2 >= 0.0) || !(sample.b1 >= sample.b2) ||
      !std::isfinite(sample.b1)) {
    throw std::invalid_argument("invalid bids: need b1 >= b2 >= 0, got b1=" +
                                std::to_string(sample.b1) +
                                " b2=" + std::to_string(sample.b2));
  }
  for (double w : sample.features) {
    if (!std::isfinite(w)) {
      throw std::invalid_argument("non-finite feature value");
    }
  }
}

Dataset::Dataset(int dimension) : dimension_(dimension) {
  if (dimension < 0) throw std::invalid_argument("negative feature dimension");
}

Dataset::Dataset(int dimension, std::vector<AuctionSample> samples)
    : Dataset(dimension) {
  samples_.reserve(samples.size());
  multiplicity_.reserve(samples.size());
  for (auto& s : samples) Add(std::move(s));
}

void Dataset::Add(AuctionSample sample, std::int64_t multiplicity) {
  if (static_cast<int>(sample.features.size()) != dimension_) {
    throw std::invalid_argument(
        "sample has " + std::to_string(sample.features.size()) +
        " features, dataset dimension is " + std::to_string(dimension_));
  }
  if (multiplicity < 1) throw std::invalid_argument("multiplicity must be >= 1");
  ValidateSample(sample);
  samples_.push_back(std::move(sample));
  multiplicity_.push_back(multiplicity);
  num_impressions_ += multiplicity;
}

double Dataset::weight(int i) const {
  return static_cast<double>(multiplicity_[i]) /
         static_cast<double>(num_impressions_);
}

Dataset Dataset::Expanded() const {
  Dataset out(dimension_);
  for (int i = 0; i < num_rows(); ++i) {
    for (std::int64_t k = 0; k < multiplicity_[i]; ++k) out.Add(samples_[i]);
  }
  return out;
}

Box Box::Symmetric(int dimension, double half_width, bool with_offset) {
  Box box;
  box.lower.assign(dimension, -half_width);
  box.upper.assign(dimension, half_width);
  if (with_offset) {
    box.offset_lower = -half_width;
    box.offset_upper = half_width;
  }
  return box;
}

void ValidateBox(const Box& box) {
  if (box.lower.size() != box.upper.size()) {
    throw std::invalid_argument("box lower/upper dimension mismatch");
  }
  for (size_t j = 0; j < box.lower.size(); ++j) {
    if (!(box.lower[j] <= box.upper[j])) {
      throw std::invalid_argument("box coordinate " + std::to_string(j) +
                                  " has lower > upper");
    }
  }
  if (!(box.offset_lower <= box.offset_upper)) {
    throw std::invalid_argument("box offset_lower > offset_upper");
  }
}

double LinearModel::Predict(std::span<const double> features) const {
  if (features.size() != beta.size()) {
    throw std::invalid_argument("model/feature dimension mismatch");
  }
  double v = beta0;
  for (size_t j = 0; j < beta.size(); ++j) v += features[j] * beta[j];
  return v;
}

bool InsideBox(const LinearModel& model, const Box& box, double tol) {
  if (model.dimension() != box.dimension()) return false;
  for (int j = 0; j < model.dimension(); ++j) {
    if (model.beta[j] < box.lower[j] - tol || model.beta[j] > box.upper[j] + tol)
      return false;
  }
  return model.beta0 >= box.offset_lower - tol &&
         model.beta0 <= box.offset_upper + tol;
}

LinearModel ProjectToBox(const LinearModel& model, const Box& box) {
  if (model.dimension() != box.dimension()) {
    throw std::invalid_argument("model/box dimension mismatch");
  }
  LinearModel out = model;
  for (int j = 0; j < out.dimension(); ++j) {
    out.beta[j] = std::clamp(out.beta[j], box.lower[j], box.upper[j]);
  }
  out.beta0 = std::clamp(out.beta0, box.offset_lower, box.offset_upper);
  return out;
}

double Reward(double v, double b1, double b2) {
  if (!(b2 >= 0.0) || !(b1 >= b2)) {
    throw std::invalid_argument("Reward: need b1 >= b2 >= 0");
  }
  if (v <= b2) return b2;
  if (v <= b1) return v;
  return 0.0;
}

namespace {

void CheckDimension(const LinearModel& model, const Dataset& data) {
  if (model.dimension() != data.dimension()) {
    throw std::invalid_argument("model dimension " +
                                std::to_string(model.dimension()) +
                                " does not match data dimension " +
                                std::to_string(data.dimension()));
  }
}

}  // namespace

double AverageReward(const LinearModel& model, const Dataset& data) {
  CheckDimension(model, data);
  if (data.empty()) throw std::invalid_argument("empty dataset");
  double total = 0.0;
  for (int i = 0; i < data.num_rows(); ++i) {
    const AuctionSample& s = data.sample(i);
    total += static_cast<double>(data.multiplicity(i)) *
             Reward(model.Predict(s.features), s.b1, s.b2);
  }
  return total / static_cast<double>(data.num_impressions());
}

double SaleRate(const LinearModel& model, const Dataset& data) {
  CheckDimension(model, data);
  if (data.empty()) throw std::invalid_argument("empty dataset");
  std::int64_t sold = 0;
  for (int i = 0; i < data.num_rows(); ++i) {
    const AuctionSample& s = data.sample(i);
    if (model.Predict(s.features) <= s.b1) sold += data.multiplicity(i);
  }
  return static_cast<double>(sold) / static_cast<double>(data.num_impressions());
}

double PerfectInfoUpperBound(const Dataset& data) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
  double total = 0.0;
  for (int i = 0; i < data.num_rows(); ++i) {
    total += static_cast<double>(data.multiplicity(i)) * data.sample(i).b1;
  }
  return total / static_cast<double>(data.num_impressions());
}

std::pair<double, double> VariableBounds(std::span<const double> features,
                                         const Box& box) {
  if (static_cast<int>(features.size()) != box.dimension()) {
    throw std::invalid_argument("feature/box dimension mismatch");
  }
  double lo = box.offset_lower;
  double hi = box.offset_upper;
  for (size_t j = 0; j < features.size(); ++j) {
    const double w = features[j];
    if (w >= 0.0) {
      lo += w * box.lower[j];
      hi += w * box.upper[j];
    } else {
      lo += w * box.upper[j];
      hi += w * box.lower[j];
    }
  }
  return {lo, hi};
}

bool GraphMembership(double v, double y, const AuctionSample& sample, double l,
                     double u, double tol) {
  const double b1 = sample.b1;
  const double b2 = sample.b2;
  auto in_range = [&](double lo, double hi) {
    lo = std::max(lo, l);
    hi = std::min(hi, u);
    return lo <= hi + tol && v >= lo - tol && v <= hi + tol;
  };
  if (std::abs(y - b2) <= tol && in_range(l, b2)) return true;
  if (std::abs(y - v) <= tol && in_range(b2, b1)) return true;
  if (std::abs(y) <= tol && in_range(b1, u)) return true;
  return false;
}

}  // namespace rpo
