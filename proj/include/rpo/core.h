// SPDX-License-Identifier: Apache-2.0
//
// Problem data model for learning linear reserve prices in second-price
// auctions: impressions, datasets, parameter boxes, and the (discontinuous)
// revenue of a reserve price.

#ifndef RPO_CORE_H_
#define RPO_CORE_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rpo {

// Absolute tolerance used by membership checks. Prices are normalized to
// unit scale by the data pipeline, so an absolute tolerance is meaningful.
inline constexpr double kDefaultTolerance = 1e-9;

// One impression: the context the reserve price is computed from, and the
// two highest bids observed in the auction.
struct AuctionSample {
  std::vector<double> features;
  double b1 = 0.0;  // highest bid
  double b2 = 0.0;  // second highest bid
};

// Throws std::invalid_argument unless b1 >= b2 >= 0 and every feature is
// finite.
void ValidateSample(const AuctionSample& sample);

// An ordered collection of impressions sharing a feature dimension.
//
// Identical impressions may be stored once with an integer multiplicity;
// every aggregate (average reward, upper bound, ...) counts a row as many
// times as its multiplicity. Datasets built by callers almost always use
// multiplicity 1.
class Dataset {
 public:
  explicit Dataset(int dimension);
  Dataset(int dimension, std::vector<AuctionSample> samples);

  void Add(AuctionSample sample, std::int64_t multiplicity = 1);

  int dimension() const { return dimension_; }
  // Number of stored rows.
  int num_rows() const { return static_cast<int>(samples_.size()); }
  // Number of impressions, i.e. the sum of all multiplicities.
  std::int64_t num_impressions() const { return num_impressions_; }
  bool empty() const { return samples_.empty(); }

  const AuctionSample& sample(int i) const { return samples_[i]; }
  std::int64_t multiplicity(int i) const { return multiplicity_[i]; }
  const std::vector<AuctionSample>& samples() const { return samples_; }

  // Weight of row i in the empirical average: multiplicity / impressions.
  double weight(int i) const;

  // Copy with every row repeated according to its multiplicity.
  Dataset Expanded() const;

 private:
  int dimension_;
  std::vector<AuctionSample> samples_;
  std::vector<std::int64_t> multiplicity_;
  std::int64_t num_impressions_ = 0;
};

// Feasible region for the model parameters: a per-coordinate box for beta
// and an interval for the offset. The offset is disabled when both offset
// bounds are zero.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
  double offset_lower = 0.0;
  double offset_upper = 0.0;

  // [-T, T]^d, with offset bounds [-T, T] when `with_offset` is set.
  static Box Symmetric(int dimension, double half_width, bool with_offset);

  int dimension() const { return static_cast<int>(lower.size()); }
  bool has_offset() const { return offset_lower != 0.0 || offset_upper != 0.0; }
};

// Throws std::invalid_argument when the box is inverted or has mismatched
// coordinate vectors.
void ValidateBox(const Box& box);

// A dataset together with the box its models are restricted to.
struct Instance {
  Dataset data;
  Box box;
};

// Reserve price model: price(w) = w . beta + beta0.
struct LinearModel {
  std::vector<double> beta;
  double beta0 = 0.0;

  static LinearModel Zero(int dimension) {
    return LinearModel{std::vector<double>(dimension, 0.0), 0.0};
  }
  int dimension() const { return static_cast<int>(beta.size()); }
  double Predict(std::span<const double> features) const;
};

bool InsideBox(const LinearModel& model, const Box& box,
               double tol = kDefaultTolerance);

// Componentwise clip of the model into the box.
LinearModel ProjectToBox(const LinearModel& model, const Box& box);

// Revenue of reserve price v in an auction with top bids b1 >= b2 >= 0:
//   b2 if v <= b2, v if b2 < v <= b1, 0 if v > b1.
// Comparisons are exact; throws std::invalid_argument on invalid bids.
double Reward(double v, double b1, double b2);

// Empirical revenue (1/n) sum_i Reward(w_i . beta + beta0, b1_i, b2_i).
double AverageReward(const LinearModel& model, const Dataset& data);

// Fraction of impressions that still sell, i.e. reserve <= b1.
double SaleRate(const LinearModel& model, const Dataset& data);

// Mean first bid: the revenue of an omniscient reserve policy.
double PerfectInfoUpperBound(const Dataset& data);

// Range [l, u] of w . beta + beta0 over the box, in closed form. Both ends
// are attained at box vertices.
std::pair<double, double> VariableBounds(std::span<const double> features,
                                         const Box& box);

// True iff (v, y) lies within `tol` of the closure of the reward graph on
// [l, u]: {y = b2, v <= b2} U {y = v, b2 <= v <= b1} U {y = 0, v >= b1}.
bool GraphMembership(double v, double y, const AuctionSample& sample, double l,
                     double u, double tol = kDefaultTolerance);

}  // namespace rpo

#endif  // RPO_CORE_H_
