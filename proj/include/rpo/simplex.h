// SPDX-License-Identifier: Apache-2.0
//
// Bounded-variable revised primal simplex.
//
// Every row i of the model gets a logical variable s_i = a_i . x whose
// bounds encode the row sense, so the working system is A x - s = 0 with
// simple bounds on every column. The basis is factorized with a sparse LU and
// updated in product form between refactorizations. Phase 1 minimizes the sum
// of bound violations of the basic variables, which lets a solve start from
// any basis (used for warm starts in branch-and-bound). Dantzig pricing is
// used until a run of degenerate pivots, then Bland's rule takes over until
// the objective moves again.

#ifndef RPO_SIMPLEX_H_
#define RPO_SIMPLEX_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "rpo/optimization_model.h"

namespace rpo {

enum class LpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kTimeLimit,
};

const char* ToString(LpStatus status);

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  // Entries of the entering column below this magnitude never pivot.
  double pivot_tol = 1e-9;
  // 0 selects a limit proportional to the model size.
  std::int64_t max_iterations = 0;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_threshold = 50;
  int refactor_interval = 100;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

enum class VarStatus : std::int8_t { kBasic, kAtLower, kAtUpper, kFree };

// Simplex basis over structural columns followed by one logical per row.
struct Basis {
  std::vector<VarStatus> status;
  std::vector<int> basic;  // column in basis position r
  bool empty() const { return basic.empty() && status.empty(); }
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;  // structural variables only
  double objective = 0.0;      // maximized objective
  bool is_vertex = false;
  std::int64_t iterations = 0;
  Basis basis;
};

class BoundedSimplex {
 public:
  explicit BoundedSimplex(const OptimizationModel& model,
                          SimplexOptions options = {});
  ~BoundedSimplex();
  BoundedSimplex(BoundedSimplex&&) noexcept;
  BoundedSimplex& operator=(BoundedSimplex&&) noexcept;

  int num_structural() const;
  int num_rows() const;

  // Overrides the bounds of a structural variable for subsequent solves.
  void SetBounds(int var, double lower, double upper);
  double lower(int var) const;
  double upper(int var) const;
  // Restores every structural bound to the model's.
  void ResetBounds();
  // Replaces a (maximized) objective coefficient for subsequent solves.
  void SetObjectiveCoefficient(int var, double coefficient);

  void set_deadline(
      std::optional<std::chrono::steady_clock::time_point> deadline);

  // Solves the relaxation (integrality markers are ignored). A warm-start
  // basis from a previous solve of the same model may be supplied.
  LpSolution Solve(const Basis* warm_start = nullptr);

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot convenience wrapper.
LpSolution SolveLp(const OptimizationModel& model,
                   const SimplexOptions& options = {});

}  // namespace rpo

#endif  // RPO_SIMPLEX_H_
