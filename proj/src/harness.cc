// SPDX-License-Identifier: Apache-2.0

#include "rpo/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "rpo/baselines.h"
#include "rpo/formulation.h"
#include "rpo/io.h"
#include "rpo/mip.h"
#include "rpo/rng.h"
#include "rpo/simplex.h"

namespace rpo {

const char* ToString(Method method) {
  switch (method) {
    case Method::kCp: return "cp";
    case Method::kLp: return "lp";
    case Method::kMip: return "mip";
    case Method::kMipRoot: return "mip_root";
    case Method::kDc: return "dc";
    case Method::kGa: return "ga";
  }
  return "unknown";
}

Method ParseMethod(const std::string& name) {
  if (name == "cp") return Method::kCp;
  if (name == "lp") return Method::kLp;
  if (name == "mip") return Method::kMip;
  if (name == "mip_root" || name == "mip-root") return Method::kMipRoot;
  if (name == "dc") return Method::kDc;
  if (name == "ga") return Method::kGa;
  throw std::invalid_argument("unknown method '" + name +
                              "' (expected cp, lp, mip, mip_root, dc or ga)");
}

bool IsBoxConstrained(Method method) { return method != Method::kCp; }

std::vector<double> DefaultBoxGrid() {
  std::vector<double> grid;
  for (int k = -1; k <= 9; ++k) grid.push_back(std::ldexp(1.0, k));
  return grid;
}

std::vector<double> DefaultGammaGrid() { return {0.01, 0.05, 0.1, 0.5, 1.0}; }

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

SolverStats FromMip(const MipResult& r) {
  SolverStats s;
  s.status = ToString(r.status);
  s.nodes = r.nodes_explored;
  s.lp_iterations = r.lp_iterations;
  s.dual_bound = r.dual_bound;
  s.root_bound = r.root_bound;
  return s;
}

}  // namespace

FitResult Fit(Method method, const Dataset& train, const Box& box,
              const FitOptions& options, const Dataset* val) {
  const auto start = Clock::now();
  FitResult fit;
  switch (method) {
    case Method::kCp: {
      const ConstantPrice cp = OptimalConstantPrice(train);
      fit.model = LinearModel::Zero(train.dimension());
      fit.model.beta0 = cp.price;
      fit.stats.status = "optimal";
      break;
    }
    case Method::kLp: {
      const ReserveFormulation lp = BuildLp(train, box);
      SimplexOptions so;
      so.deadline = start + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(options.time_limit_seconds));
      const LpSolution sol = SolveLp(lp.model, so);
      fit.stats.status = ToString(sol.status);
      fit.stats.lp_iterations = sol.iterations;
      if (sol.status == LpStatus::kOptimal) {
        fit.model = ExtractModel(sol.values, lp);
        fit.stats.dual_bound = sol.objective;
        fit.stats.root_bound = sol.objective;
      } else {
        fit.model = ConstantPriceModel(train, box);
      }
      break;
    }
    case Method::kMip:
    case Method::kMipRoot: {
      const ReserveFormulation mip = BuildMip(train, box);
      MipOptions mo;
      mo.time_limit_seconds = options.time_limit_seconds;
      mo.node_limit = options.node_limit;
      const MipResult r = method == Method::kMip ? SolveMip(mip, train, mo)
                                                 : RootNodeSolve(mip, train, mo);
      if (!r.incumbent) throw std::runtime_error("no feasible model found");
      fit.model = *r.incumbent;
      fit.stats = FromMip(r);
      if (method == Method::kMipRoot && r.status == MipStatus::kFeasibleTimeLimit) {
        fit.stats.status = "stopped_at_root";
      }
      break;
    }
    case Method::kDc: {
      if (options.gamma_grid.empty()) throw std::invalid_argument("empty gamma grid");
      const LinearModel init = ConstantPriceModel(train, box);
      std::vector<double> gammas = options.gamma_grid;
      std::sort(gammas.begin(), gammas.end());
      double best_score = -kInfinity;
      for (double gamma : gammas) {
        DcParams params;
        params.gamma = gamma;
        const DcaResult r = DcaFit(train, box, params, init);
        const double score = val ? AverageReward(r.model, *val) : 0.0;
        if (score > best_score) {
          best_score = score;
          fit.model = r.model;
          fit.gamma = gamma;
          fit.stats.nodes = r.iterations;
        }
        if (!val) break;
      }
      fit.stats.status = "converged";
      break;
    }
    case Method::kGa: {
      fit.model = GradientAscent(train, box, ConstantPriceModel(train, box));
      fit.stats.status = "converged";
      break;
    }
  }
  fit.train_reward = AverageReward(fit.model, train);
  fit.stats.wall_seconds = Seconds(start);
  return fit;
}

TuneResult TuneBox(const Dataset& train, const Dataset& val, Method method,
                   const std::vector<double>& grid, bool offset,
                   const FitOptions& options) {
  if (!IsBoxConstrained(method)) {
    throw std::invalid_argument(std::string(ToString(method)) +
                                " is not fitted over a box");
  }
  if (grid.empty()) throw std::invalid_argument("empty box grid");
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  TuneResult best;
  double best_val = -kInfinity;
  for (double t : sorted) {
    if (!(t >= 0.0)) throw std::invalid_argument("box half-width must be >= 0");
    const Box box = Box::Symmetric(train.dimension(), t, offset);
    FitResult fit = Fit(method, train, box, options, &val);
    const double score = AverageReward(fit.model, val);
    best.grid.push_back({t, score});
    if (score > best_val) {
      best_val = score;
      best.t = t;
      best.fit = std::move(fit);
    }
  }
  return best;
}

std::optional<double> GapClosed(double mip_reward, double dc_reward, double ub) {
  const double denom = ub - dc_reward;
  if (!(denom > 0.0)) return std::nullopt;
  return (mip_reward - dc_reward) / denom;
}

Split SplitDataset(const Dataset& data, int train_size, int val_size,
                   std::uint64_t seed) {
  const Dataset all = data.Expanded();
  const int n = all.num_rows();
  if (train_size < 1 || val_size < 0 || train_size + val_size > n) {
    throw std::invalid_argument("split sizes " + std::to_string(train_size) +
                                " + " + std::to_string(val_size) +
                                " exceed the " + std::to_string(n) + " rows");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  Split split{Dataset(data.dimension()), Dataset(data.dimension()),
              Dataset(data.dimension())};
  for (int k = 0; k < n; ++k) {
    Dataset& target = k < train_size                ? split.train
                      : k < train_size + val_size ? split.val
                                                    : split.test;
    target.Add(all.sample(order[k]));
  }
  return split;
}

namespace {

Split LoadData(const ExperimentConfig& c) {
  if (c.train_csv.empty()) {
    GenParams gen = c.gen;
    gen.n = c.train_size + c.val_size + c.test_size;
    return SplitDataset(GenerateSynthetic(gen), c.train_size, c.val_size, c.seed);
  }
  Dataset train = LoadCsv(c.train_csv);
  Split split{train, Dataset(train.dimension()), Dataset(train.dimension())};
  if (c.val_csv.empty()) {
    const int keep = train.Expanded().num_rows() - c.val_size;
    Split cut = SplitDataset(train, keep, c.val_size, c.seed);
    split.train = std::move(cut.train);
    split.val = std::move(cut.val);
  } else {
    split.val = LoadCsv(c.val_csv);
  }
  if (!c.test_csv.empty()) split.test = LoadCsv(c.test_csv);
  for (const Dataset* d : {&split.val, &split.test}) {
    if (!d->empty() && d->dimension() != split.train.dimension()) {
      throw std::invalid_argument("train/validation/test feature dimensions differ");
    }
  }
  return split;
}

}  // namespace

ExperimentReport RunExperiment(const ExperimentConfig& config) {
  if (config.methods.empty()) throw std::invalid_argument("no methods requested");
  const Split data = LoadData(config);
  ExperimentReport report;
  report.config = config;
  report.train_rows = data.train.num_rows();
  report.val_rows = data.val.num_rows();
  report.test_rows = data.test.num_rows();
  report.train_ub = PerfectInfoUpperBound(data.train);
  if (!data.val.empty()) report.val_ub = PerfectInfoUpperBound(data.val);
  if (!data.test.empty()) report.test_ub = PerfectInfoUpperBound(data.test);

  for (Method method : config.methods) {
    MethodReport m;
    m.method = method;
    try {
      FitResult fit;
      if (!IsBoxConstrained(method)) {
        fit = Fit(method, data.train, Box{}, config.fit);
      } else {
        if (data.val.empty()) throw std::invalid_argument("tuning needs validation data");
        TuneResult tuned = TuneBox(data.train, data.val, method, config.box_grid,
                                   config.offset, config.fit);
        m.box_t = tuned.t;
        m.grid = std::move(tuned.grid);
        fit = std::move(tuned.fit);
      }
      m.model = fit.model;
      m.gamma = fit.gamma;
      m.stats = fit.stats;
      m.train_reward = fit.train_reward;
      m.train_sale_rate = SaleRate(fit.model, data.train);
      if (!data.val.empty()) m.val_reward = AverageReward(fit.model, data.val);
      if (!data.test.empty()) {
        m.test_reward = AverageReward(fit.model, data.test);
        m.test_sale_rate = SaleRate(fit.model, data.test);
      }
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string(ToString(method)) + ": " + e.what());
    }
    report.methods.push_back(std::move(m));
  }

  const MethodReport* mip = nullptr;
  const MethodReport* dc = nullptr;
  for (const MethodReport& m : report.methods) {
    if (m.method == Method::kMip) mip = &m;
    if (m.method == Method::kDc) dc = &m;
  }
  if (mip && dc) {
    report.gap_closed_train = GapClosed(mip->train_reward, dc->train_reward, report.train_ub);
    if (!report.gap_closed_train) {
      report.notes.push_back("gap_closed (train) omitted: UB does not exceed DC");
    }
    if (mip->test_reward && dc->test_reward) {
      report.gap_closed_test = GapClosed(*mip->test_reward, *dc->test_reward, *report.test_ub);
      if (!report.gap_closed_test) {
        report.notes.push_back("gap_closed (test) omitted: UB does not exceed DC");
      }
    }
  }
  for (const MethodReport& m : report.methods) {
    if (m.method == Method::kGa) {
      report.notes.push_back("ga starts from beta = 0 with the constant price as offset");
    }
    if (m.method == Method::kDc) {
      report.notes.push_back("dc gamma grid is this implementation's choice");
    }
  }
  return report;
}

}  // namespace rpo
