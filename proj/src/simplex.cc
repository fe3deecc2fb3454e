// SPDX-License-Identifier: Apache-2.0

#include "rpo/simplex.h"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rpo {

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
    case LpStatus::kTimeLimit: return "time_limit";
  }
  return "unknown";
}

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

// Product-form update: B_new = B_old * E, E = identity with column `row`
// replaced by the entering column expressed in the old basis.
struct Eta {
  int row = 0;
  double pivot = 1.0;
  std::vector<int> index;
  std::vector<double> value;  // off-pivot entries
};

constexpr double kDropTol = 1e-14;

}  // namespace

class BoundedSimplex::Impl {
 public:
  Impl(const OptimizationModel& model, SimplexOptions options)
      : options_(options) {
    n_ = model.num_variables();
    m_ = model.num_constraints();
    total_ = n_ + m_;
    lb_.resize(total_);
    ub_.resize(total_);
    cost_.assign(total_, 0.0);
    objective_ = model.objective();

    // Column-major copy of [A -I].
    std::vector<std::vector<std::pair<int, double>>> cols(n_);
    for (int i = 0; i < m_; ++i) {
      for (const LinearTerm& t : model.constraints()[i].terms) {
        cols[t.var.index].push_back({i, t.coefficient});
      }
    }
    col_start_.push_back(0);
    for (int j = 0; j < n_; ++j) {
      for (const auto& [row, val] : cols[j]) {
        row_index_.push_back(row);
        col_value_.push_back(val);
      }
      col_start_.push_back(static_cast<int>(row_index_.size()));
    }
    for (int i = 0; i < m_; ++i) {
      row_index_.push_back(i);
      col_value_.push_back(-1.0);
      col_start_.push_back(static_cast<int>(row_index_.size()));
    }

    for (int j = 0; j < n_; ++j) {
      const Variable& v = model.variables()[j];
      lb_[j] = v.lower;
      ub_[j] = v.upper;
      cost_[j] = -objective_[j];  // internal sense is minimization
    }
    model_lb_.assign(lb_.begin(), lb_.begin() + n_);
    model_ub_.assign(ub_.begin(), ub_.begin() + n_);
    for (int i = 0; i < m_; ++i) {
      const Constraint& c = model.constraints()[i];
      double lo = -kInfinity, hi = kInfinity;
      switch (c.sense) {
        case RowSense::kLessEqual: hi = c.rhs; break;
        case RowSense::kGreaterEqual: lo = c.rhs; break;
        case RowSense::kEqual: lo = hi = c.rhs; break;
      }
      lb_[n_ + i] = lo;
      ub_[n_ + i] = hi;
    }
  }

  int num_structural() const { return n_; }
  int num_rows() const { return m_; }

  void SetBounds(int var, double lower, double upper) {
    if (var < 0 || var >= n_) throw std::out_of_range("SetBounds: bad variable");
    if (!(lower <= upper)) throw std::invalid_argument("SetBounds: lower > upper");
    lb_[var] = lower;
    ub_[var] = upper;
  }
  double lower(int var) const { return lb_.at(var); }
  double upper(int var) const { return ub_.at(var); }
  void ResetBounds() {
    std::copy(model_lb_.begin(), model_lb_.end(), lb_.begin());
    std::copy(model_ub_.begin(), model_ub_.end(), ub_.begin());
  }
  void SetObjectiveCoefficient(int var, double coefficient) {
    if (var < 0 || var >= n_) throw std::out_of_range("bad objective variable");
    objective_[var] = coefficient;
    cost_[var] = -coefficient;
  }
  void set_deadline(std::optional<std::chrono::steady_clock::time_point> d) {
    options_.deadline = d;
  }

  LpSolution Solve(const Basis* warm_start);

 private:
  bool Infeasible(int j) const {
    return x_[j] < lb_[j] - options_.feasibility_tol ||
           x_[j] > ub_[j] + options_.feasibility_tol;
  }

  void PlaceNonbasic(int j) {
    VarStatus& s = status_[j];
    const bool lo = std::isfinite(lb_[j]);
    const bool hi = std::isfinite(ub_[j]);
    if (s == VarStatus::kAtLower && !lo) s = hi ? VarStatus::kAtUpper : VarStatus::kFree;
    if (s == VarStatus::kAtUpper && !hi) s = lo ? VarStatus::kAtLower : VarStatus::kFree;
    if (s == VarStatus::kFree && (lo || hi)) {
      s = lo ? VarStatus::kAtLower : VarStatus::kAtUpper;
    }
    switch (s) {
      case VarStatus::kAtLower: x_[j] = lb_[j]; break;
      case VarStatus::kAtUpper: x_[j] = ub_[j]; break;
      case VarStatus::kFree: x_[j] = 0.0; break;
      case VarStatus::kBasic: break;
    }
  }

  // Nonbasic status of a column that has no better information: the finite
  // bound closest to zero.
  VarStatus DefaultStatus(int j) const {
    const bool lo = std::isfinite(lb_[j]);
    const bool hi = std::isfinite(ub_[j]);
    if (lo && hi) {
      return std::abs(lb_[j]) <= std::abs(ub_[j]) ? VarStatus::kAtLower
                                                  : VarStatus::kAtUpper;
    }
    if (lo) return VarStatus::kAtLower;
    if (hi) return VarStatus::kAtUpper;
    return VarStatus::kFree;
  }

  void SlackBasis() {
    for (int j = 0; j < n_; ++j) {
      if (status_[j] == VarStatus::kBasic) status_[j] = DefaultStatus(j);
    }
    for (int i = 0; i < m_; ++i) {
      status_[n_ + i] = VarStatus::kBasic;
      basic_[i] = n_ + i;
    }
  }

  bool LoadWarmStart(const Basis& basis) {
    if (static_cast<int>(basis.status.size()) != total_ ||
        static_cast<int>(basis.basic.size()) != m_) {
      return false;
    }
    int count = 0;
    for (VarStatus s : basis.status) count += (s == VarStatus::kBasic);
    if (count != m_) return false;
    for (int r = 0; r < m_; ++r) {
      const int j = basis.basic[r];
      if (j < 0 || j >= total_ || basis.status[j] != VarStatus::kBasic) return false;
    }
    status_ = basis.status;
    basic_ = basis.basic;
    return true;
  }

  bool Factorize() {
    etas_.clear();
    if (m_ == 0) return true;
    std::vector<Eigen::Triplet<double>> triplets;
    for (int r = 0; r < m_; ++r) {
      const int j = basic_[r];
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
        triplets.emplace_back(row_index_[k], r, col_value_[k]);
      }
    }
    SparseMatrix basis(m_, m_);
    basis.setFromTriplets(triplets.begin(), triplets.end());
    basis.makeCompressed();
    lu_ = std::make_unique<Eigen::SparseLU<SparseMatrix>>();
    lu_->analyzePattern(basis);
    lu_->factorize(basis);
    if (lu_->info() != Eigen::Success) return false;
    // Reject numerically singular factors: B^{-1} (B 1) must reproduce 1.
    const Vector ones = Vector::Ones(m_);
    const Vector check = lu_->solve(Vector(basis * ones));
    if (!check.allFinite() || (check - ones).lpNorm<Eigen::Infinity>() > 1e-6) {
      return false;
    }
    return true;
  }

  void FactorizeOrRepair() {
    if (!Factorize()) {
      SlackBasis();
      for (int j = 0; j < total_; ++j) {
        if (status_[j] != VarStatus::kBasic) PlaceNonbasic(j);
      }
      if (!Factorize()) throw std::runtime_error("slack basis factorization failed");
    }
  }

  Vector Column(int j) const {
    Vector a = Vector::Zero(m_);
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      a[row_index_[k]] = col_value_[k];
    }
    return a;
  }

  void Ftran(Vector& v) const {
    v = lu_->solve(v);
    for (const Eta& e : etas_) {
      const double xr = v[e.row] / e.pivot;
      v[e.row] = xr;
      if (xr == 0.0) continue;
      for (size_t k = 0; k < e.index.size(); ++k) v[e.index[k]] -= e.value[k] * xr;
    }
  }

  void Btran(Vector& v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double acc = v[it->row];
      for (size_t k = 0; k < it->index.size(); ++k) acc -= it->value[k] * v[it->index[k]];
      v[it->row] = acc / it->pivot;
    }
    v = lu_->transpose().solve(v);
  }

  void ComputeBasicValues() {
    if (m_ == 0) return;
    Vector rhs = Vector::Zero(m_);
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
        rhs[row_index_[k]] -= col_value_[k] * x_[j];
      }
    }
    Ftran(rhs);
    for (int r = 0; r < m_; ++r) x_[basic_[r]] = rhs[r];
  }

  double ColumnDot(int j, const Vector& pi) const {
    double s = 0.0;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      s += pi[row_index_[k]] * col_value_[k];
    }
    return s;
  }

  LpSolution Finish(LpStatus status, std::int64_t iterations) const {
    LpSolution sol;
    sol.status = status;
    sol.iterations = iterations;
    sol.values.assign(x_.begin(), x_.begin() + n_);
    sol.objective = 0.0;
    for (int j = 0; j < n_; ++j) sol.objective += objective_[j] * x_[j];
    sol.basis.status = status_;
    sol.basis.basic = basic_;
    if (status == LpStatus::kOptimal) {
      sol.is_vertex = std::none_of(status_.begin(), status_.end(),
                                   [](VarStatus s) { return s == VarStatus::kFree; });
    }
    return sol;
  }

  LpSolution SolveWithoutRows();

  SimplexOptions options_;
  int n_ = 0;
  int m_ = 0;
  int total_ = 0;
  std::vector<int> col_start_;
  std::vector<int> row_index_;
  std::vector<double> col_value_;
  std::vector<double> lb_, ub_, cost_, objective_;
  std::vector<double> model_lb_, model_ub_;

  std::vector<VarStatus> status_;
  std::vector<int> basic_;
  std::vector<double> x_;
  std::unique_ptr<Eigen::SparseLU<SparseMatrix>> lu_;
  std::vector<Eta> etas_;
};

LpSolution BoundedSimplex::Impl::SolveWithoutRows() {
  status_.assign(total_, VarStatus::kAtLower);
  basic_.clear();
  x_.assign(total_, 0.0);
  for (int j = 0; j < n_; ++j) {
    const double c = cost_[j];
    if (c < 0.0) {
      if (!std::isfinite(ub_[j])) return Finish(LpStatus::kUnbounded, 0);
      status_[j] = VarStatus::kAtUpper;
    } else if (c > 0.0) {
      if (!std::isfinite(lb_[j])) return Finish(LpStatus::kUnbounded, 0);
      status_[j] = VarStatus::kAtLower;
    } else {
      status_[j] = DefaultStatus(j);
    }
    PlaceNonbasic(j);
  }
  return Finish(LpStatus::kOptimal, 0);
}

LpSolution BoundedSimplex::Impl::Solve(const Basis* warm_start) {
  if (m_ == 0) return SolveWithoutRows();

  const double ftol = options_.feasibility_tol;
  const double otol = options_.optimality_tol;
  const double ptol = options_.pivot_tol;
  const std::int64_t max_iterations =
      options_.max_iterations > 0 ? options_.max_iterations
                                  : 50 * static_cast<std::int64_t>(total_) + 10000;

  x_.assign(total_, 0.0);
  status_.assign(total_, VarStatus::kAtLower);
  basic_.assign(m_, -1);
  if (warm_start == nullptr || !LoadWarmStart(*warm_start)) {
    for (int j = 0; j < n_; ++j) status_[j] = DefaultStatus(j);
    SlackBasis();
  }
  for (int j = 0; j < total_; ++j) {
    if (status_[j] != VarStatus::kBasic) PlaceNonbasic(j);
  }
  FactorizeOrRepair();
  ComputeBasicValues();

  std::vector<char> excluded(total_, 0);
  bool any_excluded = false;
  bool verified = false;
  int degenerate_run = 0;
  std::int64_t iterations = 0;
  Vector cb(m_);
  std::vector<double> delta(m_);

  while (true) {
    if (iterations >= max_iterations) return Finish(LpStatus::kIterationLimit, iterations);
    if (options_.deadline && (iterations & 15) == 0 &&
        std::chrono::steady_clock::now() >= *options_.deadline) {
      return Finish(LpStatus::kTimeLimit, iterations);
    }
    if (static_cast<int>(etas_.size()) >= options_.refactor_interval) {
      FactorizeOrRepair();
      ComputeBasicValues();
    }

    bool phase1 = false;
    for (int r = 0; r < m_; ++r) {
      if (Infeasible(basic_[r])) {
        phase1 = true;
        break;
      }
    }
    for (int r = 0; r < m_; ++r) {
      const int j = basic_[r];
      if (phase1) {
        cb[r] = x_[j] < lb_[j] - ftol ? -1.0 : (x_[j] > ub_[j] + ftol ? 1.0 : 0.0);
      } else {
        cb[r] = cost_[j];
      }
    }
    Vector pi = cb;
    Btran(pi);

    const bool bland = degenerate_run >= options_.degenerate_threshold;
    int entering = -1;
    double entering_d = 0.0;
    double best_score = 0.0;
    for (int j = 0; j < total_; ++j) {
      const VarStatus s = status_[j];
      if (s == VarStatus::kBasic || excluded[j]) continue;
      if (s != VarStatus::kFree && lb_[j] == ub_[j]) continue;
      const double d = (phase1 ? 0.0 : cost_[j]) - ColumnDot(j, pi);
      bool improving = false;
      switch (s) {
        case VarStatus::kAtLower: improving = d < -otol; break;
        case VarStatus::kAtUpper: improving = d > otol; break;
        case VarStatus::kFree: improving = std::abs(d) > otol; break;
        case VarStatus::kBasic: break;
      }
      if (!improving) continue;
      if (bland) {
        entering = j;
        entering_d = d;
        break;
      }
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        entering = j;
        entering_d = d;
      }
    }

    if (entering < 0) {
      if (any_excluded) {
        // Candidates were skipped for numerical reasons; retry on a fresh
        // factorization before concluding.
        std::fill(excluded.begin(), excluded.end(), 0);
        any_excluded = false;
        if (verified) return Finish(phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal, iterations);
        FactorizeOrRepair();
        ComputeBasicValues();
        verified = true;
        continue;
      }
      if (!verified && !etas_.empty()) {
        FactorizeOrRepair();
        ComputeBasicValues();
        verified = true;
        continue;
      }
      return Finish(phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal, iterations);
    }

    const double dir = entering_d < 0.0 ? 1.0 : -1.0;
    Vector alpha = Column(entering);
    Ftran(alpha);
    for (int r = 0; r < m_; ++r) delta[r] = -dir * alpha[r];

    // Ratio of basic r, optionally relaxed by `slack` (Harris pass 1).
    auto ratio = [&](int r, double slack, double* target) -> double {
      const double d = delta[r];
      if (std::abs(d) <= ptol) return kInfinity;
      const int j = basic_[r];
      const double xj = x_[j];
      if (phase1 && xj < lb_[j] - ftol) {
        if (d <= 0.0) return kInfinity;
        *target = lb_[j];
        return (lb_[j] - xj + slack) / d;
      }
      if (phase1 && xj > ub_[j] + ftol) {
        if (d >= 0.0) return kInfinity;
        *target = ub_[j];
        return (xj - ub_[j] + slack) / -d;
      }
      if (d < 0.0) {
        if (!std::isfinite(lb_[j])) return kInfinity;
        *target = lb_[j];
        return (xj - lb_[j] + slack) / -d;
      }
      if (!std::isfinite(ub_[j])) return kInfinity;
      *target = ub_[j];
      return (ub_[j] - xj + slack) / d;
    };

    int leave_row = -1;
    double leave_target = 0.0;
    double theta = kInfinity;
    double dummy = 0.0;
    if (bland) {
      double theta_min = kInfinity;
      for (int r = 0; r < m_; ++r) {
        theta_min = std::min(theta_min, std::max(0.0, ratio(r, 0.0, &dummy)));
      }
      if (std::isfinite(theta_min)) {
        for (int r = 0; r < m_; ++r) {
          double target = 0.0;
          const double t = std::max(0.0, ratio(r, 0.0, &target));
          if (t <= theta_min + 1e-12 &&
              (leave_row < 0 || basic_[r] < basic_[leave_row])) {
            leave_row = r;
            leave_target = target;
            theta = t;
          }
        }
      }
    } else {
      double theta_max = kInfinity;
      for (int r = 0; r < m_; ++r) theta_max = std::min(theta_max, ratio(r, ftol, &dummy));
      if (std::isfinite(theta_max)) {
        double best_pivot = 0.0;
        for (int r = 0; r < m_; ++r) {
          double target = 0.0;
          const double t = ratio(r, 0.0, &target);
          if (t <= theta_max && std::abs(delta[r]) > best_pivot) {
            best_pivot = std::abs(delta[r]);
            leave_row = r;
            leave_target = target;
            theta = std::max(0.0, t);
          }
        }
      }
    }

    const double flip = (std::isfinite(lb_[entering]) && std::isfinite(ub_[entering]))
                            ? ub_[entering] - lb_[entering]
                            : kInfinity;
    const bool do_flip = std::isfinite(flip) && flip <= theta;
    if (leave_row < 0 && !do_flip) {
      if (phase1) {
        excluded[entering] = 1;
        any_excluded = true;
        continue;
      }
      return Finish(LpStatus::kUnbounded, iterations);
    }
    if (do_flip) theta = flip;

    x_[entering] += dir * theta;
    for (int r = 0; r < m_; ++r) {
      if (delta[r] != 0.0) x_[basic_[r]] += theta * delta[r];
    }
    if (do_flip) {
      status_[entering] = dir > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
      x_[entering] = dir > 0 ? ub_[entering] : lb_[entering];
    } else {
      const int leaving = basic_[leave_row];
      x_[leaving] = leave_target;
      status_[leaving] = (leave_target == ub_[leaving] && lb_[leaving] != ub_[leaving])
                             ? VarStatus::kAtUpper
                             : VarStatus::kAtLower;
      basic_[leave_row] = entering;
      status_[entering] = VarStatus::kBasic;
      Eta eta;
      eta.row = leave_row;
      eta.pivot = alpha[leave_row];
      for (int r = 0; r < m_; ++r) {
        if (r != leave_row && std::abs(alpha[r]) > kDropTol) {
          eta.index.push_back(r);
          eta.value.push_back(alpha[r]);
        }
      }
      etas_.push_back(std::move(eta));
    }

    degenerate_run = theta <= 1e-12 ? degenerate_run + 1 : 0;
    if (any_excluded) {
      std::fill(excluded.begin(), excluded.end(), 0);
      any_excluded = false;
    }
    verified = false;
    ++iterations;
  }
}

BoundedSimplex::BoundedSimplex(const OptimizationModel& model,
                               SimplexOptions options)
    : impl_(std::make_unique<Impl>(model, options)) {}
BoundedSimplex::~BoundedSimplex() = default;
BoundedSimplex::BoundedSimplex(BoundedSimplex&&) noexcept = default;
BoundedSimplex& BoundedSimplex::operator=(BoundedSimplex&&) noexcept = default;

int BoundedSimplex::num_structural() const { return impl_->num_structural(); }
int BoundedSimplex::num_rows() const { return impl_->num_rows(); }
void BoundedSimplex::SetBounds(int var, double lower, double upper) {
  impl_->SetBounds(var, lower, upper);
}
double BoundedSimplex::lower(int var) const { return impl_->lower(var); }
double BoundedSimplex::upper(int var) const { return impl_->upper(var); }
void BoundedSimplex::ResetBounds() { impl_->ResetBounds(); }
void BoundedSimplex::SetObjectiveCoefficient(int var, double coefficient) {
  impl_->SetObjectiveCoefficient(var, coefficient);
}
void BoundedSimplex::set_deadline(
    std::optional<std::chrono::steady_clock::time_point> deadline) {
  impl_->set_deadline(deadline);
}
LpSolution BoundedSimplex::Solve(const Basis* warm_start) {
  return impl_->Solve(warm_start);
}

LpSolution SolveLp(const OptimizationModel& model, const SimplexOptions& options) {
  BoundedSimplex simplex(model, options);
  return simplex.Solve();
}

}  // namespace rpo
