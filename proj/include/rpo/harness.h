// SPDX-License-Identifier: Apache-2.0
//
// Experiment orchestration: fitting each method, symmetric box tuning on a
// validation split, metrics, and reports.

#ifndef RPO_HARNESS_H_
#define RPO_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rpo/core.h"
#include "rpo/datagen.h"

namespace rpo {

enum class Method { kCp, kLp, kMip, kMipRoot, kDc, kGa };

const char* ToString(Method method);
// Accepts cp, lp, mip, mip_root (or mip-root), dc, ga.
// Throws std::invalid_argument otherwise.
Method ParseMethod(const std::string& name);
// Every method but cp is fitted over a box.
bool IsBoxConstrained(Method method);

// 2^-1, 2^0, ..., 2^9.
std::vector<double> DefaultBoxGrid();
std::vector<double> DefaultGammaGrid();

struct FitOptions {
  // Wall-clock limit for one MIP / LP fit.
  double time_limit_seconds = 30.0;
  // Node limit for mip, for reproducible runs. 0 is unlimited.
  std::int64_t node_limit = 0;
  // Candidate gammas for dc; the best on validation is kept.
  std::vector<double> gamma_grid = DefaultGammaGrid();
};

struct SolverStats {
  std::string status;
  std::int64_t nodes = 0;
  std::int64_t lp_iterations = 0;
  std::optional<double> dual_bound;
  std::optional<double> root_bound;
  double wall_seconds = 0.0;
};

struct FitResult {
  LinearModel model;
  double train_reward = 0.0;
  std::optional<double> gamma;
  SolverStats stats;
};

// Fits `method` on `train` inside `box`. For dc with several gammas, `val`
// picks the gamma (ties toward the smaller one); with no validation data the
// smallest gamma is used.
FitResult Fit(Method method, const Dataset& train, const Box& box,
              const FitOptions& options, const Dataset* val = nullptr);

struct GridPoint {
  double t = 0.0;
  double val_reward = 0.0;
};

struct TuneResult {
  double t = 0.0;
  FitResult fit;
  std::vector<GridPoint> grid;
};

// Fits over [-T, T]^d (offset [-T, T] when enabled) for each T and keeps the
// best validation reward, ties toward smaller T.
// Throws std::invalid_argument for cp or an empty grid.
TuneResult TuneBox(const Dataset& train, const Dataset& val, Method method,
                   const std::vector<double>& grid, bool offset,
                   const FitOptions& options);

// (mip - dc) / (ub - dc); empty when ub <= dc.
std::optional<double> GapClosed(double mip_reward, double dc_reward, double ub);

struct Split {
  Dataset train;
  Dataset val;
  Dataset test;
};

// Shuffles row indices with `seed` and cuts them into train, validation and
// the remainder as test. Multiplicities are expanded first.
// Throws std::invalid_argument if the sizes exceed the data.
Split SplitDataset(const Dataset& data, int train_size, int val_size,
                   std::uint64_t seed);

struct ExperimentConfig {
  std::vector<Method> methods = {Method::kCp, Method::kLp, Method::kMip,
                                 Method::kMipRoot, Method::kDc, Method::kGa};
  std::vector<double> box_grid = DefaultBoxGrid();
  bool offset = true;
  FitOptions fit;
  std::uint64_t seed = 0;

  // Generated data is used unless train_csv is set.
  GenParams gen;
  int train_size = 200;
  int val_size = 200;
  int test_size = 1000;

  std::string train_csv;
  // Without a validation file, val_size rows of the training file are held
  // out. Without a test file, test metrics are omitted.
  std::string val_csv;
  std::string test_csv;
};

struct MethodReport {
  Method method = Method::kCp;
  std::optional<double> box_t;
  std::optional<double> gamma;
  LinearModel model;
  double train_reward = 0.0;
  double train_sale_rate = 0.0;
  std::optional<double> val_reward;
  std::optional<double> test_reward;
  std::optional<double> test_sale_rate;
  SolverStats stats;
  std::vector<GridPoint> grid;
};

struct ExperimentReport {
  ExperimentConfig config;
  int train_rows = 0;
  int val_rows = 0;
  int test_rows = 0;
  double train_ub = 0.0;
  std::optional<double> val_ub;
  std::optional<double> test_ub;
  std::vector<MethodReport> methods;
  std::optional<double> gap_closed_train;
  std::optional<double> gap_closed_test;
  std::vector<std::string> notes;
};

// Errors from a method are rethrown as std::runtime_error prefixed with the
// method name.
ExperimentReport RunExperiment(const ExperimentConfig& config);

// Deterministic JSON document; wall-clock times are left out.
std::string ReportToJson(const ExperimentReport& report);
// Wall-clock seconds per method.
std::string TimingsToJson(const ExperimentReport& report);
// One row per method.
std::string ReportToCsv(const ExperimentReport& report);

}  // namespace rpo

#endif  // RPO_HARNESS_H_
