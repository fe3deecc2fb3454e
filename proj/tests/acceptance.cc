// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Prints one PASS/FAIL line per check and
// exits non-zero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rpo/baselines.h"
#include "rpo/datagen.h"
#include "rpo/formulation.h"
#include "rpo/hardness.h"
#include "rpo/harness.h"
#include "rpo/mip.h"
#include "rpo/simplex.h"

namespace {

using namespace rpo;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void Require(Outcome& o, bool ok, const std::string& what) {
  if (!ok && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

AuctionSample RandomBids(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 2.0);
  AuctionSample s;
  for (int j = 0; j < d; ++j) s.features.push_back(normal(rng));
  const double a = unit(rng), b = unit(rng);
  s.b1 = std::max(a, b);
  s.b2 = std::min(a, b);
  return s;
}

Dataset RandomData(std::mt19937_64& rng, int d, int n) {
  Dataset data(d);
  for (int i = 0; i < n; ++i) data.Add(RandomBids(rng, d));
  return data;
}

Outcome RewardSemantics() {
  Outcome o;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 2.0);
  const double eps = 1e-9;
  int failures = 0;
  for (int t = 0; t < 1000; ++t) {
    const double a = unit(rng), c = unit(rng);
    const double b1 = std::max(a, c), b2 = std::min(a, c);
    for (double v : {b2 - eps, b2, b2 + eps, b1 - eps, b1, b1 + eps}) {
      // The winner pays max(reserve, second bid) when the reserve clears.
      const double expected = v <= b1 ? std::max(v, b2) : 0.0;
      if (Reward(v, b1, b2) != expected) ++failures;
    }
  }
  Require(o, failures == 0, std::to_string(failures) + " mismatches");
  o.detail = o.pass ? "6000 boundary evaluations" : o.detail;
  return o;
}

struct Block {
  AuctionSample sample;
  double l, u;
};

Block RandomBlock(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  double p[4] = {unit(rng), unit(rng), unit(rng), unit(rng)};
  std::sort(p, p + 4);
  Block b;
  b.sample.b2 = std::max(0.0, p[1]);
  b.sample.b1 = std::max(b.sample.b2, p[2]);
  b.l = std::min(p[0], b.sample.b2);
  b.u = std::max(b.sample.b1, p[3]);
  return b;
}

Outcome Idealness() {
  Outcome o;
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const Block rb = RandomBlock(rng);
    OptimizationModel m;
    const SampleBlock b = BuildSampleBlock(m, rb.sample, rb.l, rb.u, false);
    for (int k = 0; k < 10; ++k) {
      for (int j = 0; j < m.num_variables(); ++j) {
        m.SetObjectiveCoefficient(VarId{j}, normal(rng));
      }
      const LpSolution sol = SolveLp(m);
      Require(o, sol.status == LpStatus::kOptimal && sol.is_vertex, "LP not solved to a vertex");
      if (sol.status != LpStatus::kOptimal) continue;
      for (VarId z : b.z) {
        const double x = sol.values[z.index];
        worst = std::max(worst, std::min(std::abs(x), std::abs(1.0 - x)));
      }
    }
    Dataset data(1);
    AuctionSample s = rb.sample;
    s.features = {1.0};
    data.Add(s);
    Box box;
    box.lower = {rb.l};
    box.upper = {rb.u};
    const MipResult r = SolveMip(BuildMip(data, box), data);
    Require(o, r.status == MipStatus::kOptimal && r.nodes_explored == 1,
            "single-sample MIP used " + std::to_string(r.nodes_explored) + " nodes");
  }
  Require(o, worst <= 1e-6, Fmt("z fractionality %.3g", worst));
  if (o.pass) o.detail = Fmt("max z fractionality %.3g over 5000 LPs; 500 one-node MIPs", worst);
  return o;
}

Outcome LiftedEquivalence() {
  Outcome o;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Block rb = RandomBlock(rng);
    OptimizationModel proj, lift;
    const SampleBlock bp = BuildSampleBlock(proj, rb.sample, rb.l, rb.u, false);
    const SampleBlock bl = BuildLiftedBlock(lift, rb.sample, rb.l, rb.u);
    const double cv = normal(rng), cy = normal(rng);
    proj.SetObjectiveCoefficient(bp.v, cv);
    proj.SetObjectiveCoefficient(bp.y, cy);
    lift.SetObjectiveCoefficient(bl.v, cv);
    lift.SetObjectiveCoefficient(bl.y, cy);
    for (int k = 0; k < 3; ++k) {
      const double cz = normal(rng);
      proj.SetObjectiveCoefficient(bp.z[k], cz);
      lift.SetObjectiveCoefficient(bl.z[k], cz);
    }
    const LpSolution a = SolveLp(proj), c = SolveLp(lift);
    Require(o, a.status == LpStatus::kOptimal && c.status == LpStatus::kOptimal,
            "LP not optimal");
    worst = std::max(worst, std::abs(a.objective - c.objective));
  }
  Require(o, worst <= 1e-6, Fmt("max difference %.3g", worst));
  if (o.pass) o.detail = Fmt("max optimum difference %.3g", worst);
  return o;
}

double GridMax(const Dataset& data, const Box& box, int steps) {
  double best = -kInfinity;
  LinearModel m = LinearModel::Zero(2);
  for (int a = 0; a <= steps; ++a) {
    m.beta[0] = box.lower[0] + (box.upper[0] - box.lower[0]) * a / steps;
    for (int b = 0; b <= steps; ++b) {
      m.beta[1] = box.lower[1] + (box.upper[1] - box.lower[1]) * b / steps;
      best = std::max(best, AverageReward(m, data));
    }
  }
  return best;
}

Outcome ExactVsOracle() {
  Outcome o;
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> n1(1, 10), n2(1, 6);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Dataset data = RandomData(rng, 1, n1(rng));
    const Box box = Box::Symmetric(1, 3.0, false);
    const MipResult r = SolveMip(BuildMip(data, box), data);
    const double diff = std::abs(r.incumbent_reward - BreakpointOracle(data, box).reward);
    worst = std::max(worst, diff);
  }
  Require(o, worst <= 1e-6, Fmt("oracle difference %.3g", worst));
  double shortfall = -kInfinity;
  for (int t = 0; t < 10; ++t) {
    const Dataset data = RandomData(rng, 2, n2(rng));
    const Box box = Box::Symmetric(2, 2.0, false);
    const MipResult r = SolveMip(BuildMip(data, box), data);
    shortfall = std::max(shortfall, GridMax(data, box, 400) - r.incumbent_reward);
  }
  Require(o, shortfall <= 1e-4, Fmt("grid beats MIP by %.3g", shortfall));
  if (o.pass) {
    o.detail = Fmt("max oracle difference %.3g; max grid excess %.3g", worst, shortfall);
  }
  return o;
}

Outcome LpGapFamily() {
  Outcome o;
  std::string detail;
  for (int t : {2, 4, 8, 16}) {
    const Instance inst = GenerateLpGapFamily(t);
    const MipResult mip = SolveMip(BuildMip(inst.data, inst.box), inst.data);
    const LpSolution lp = SolveLp(BuildLp(inst.data, inst.box).model);
    const double target = 1.0 / (2 * t);
    Require(o, mip.status == MipStatus::kOptimal, "MIP not optimal");
    Require(o, std::abs(mip.incumbent_reward - target) <= 1e-6,
            Fmt("T=%g MIP %.9g", t, mip.incumbent_reward));
    Require(o, lp.status == LpStatus::kOptimal && lp.objective >= 0.5,
            Fmt("T=%g LP %.9g", t, lp.objective));
    Require(o, lp.objective / mip.incumbent_reward >= t,
            Fmt("T=%g ratio %.9g", t, lp.objective / mip.incumbent_reward));
    detail += Fmt("T=%g LP/MIP=%.3g ", t, lp.objective / mip.incumbent_reward);
  }
  if (o.pass) o.detail = detail;
  return o;
}

Outcome Hardness() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    Graph g;
    g.num_vertices = 2 + static_cast<int>(unit(rng) * 11);
    const double p = unit(rng);
    for (int a = 0; a < g.num_vertices; ++a) {
      for (int b = a + 1; b < g.num_vertices; ++b) {
        if (unit(rng) < p) g.edges.emplace_back(a, b);
      }
    }
    std::vector<int> order(g.num_vertices);
    for (int v = 0; v < g.num_vertices; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    const int k = 1 + static_cast<int>(unit(rng) * g.num_vertices);
    const std::set<int> s(order.begin(), order.begin() + k);
    const Instance inst = ReduceDensestSubgraph(g, k);
    const double diff = std::abs(AverageReward(SubgraphIndicator(s, g.num_vertices), inst.data) -
                                 ReductionRewardFormula(g, s, k));
    worst = std::max(worst, diff);
  }
  Require(o, worst <= 1e-9, Fmt("formula difference %.3g", worst));
  int violations = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 12, k = 1 + t % 6;
    LinearModel m = LinearModel::Zero(n);
    double total = 0.0;
    for (double& b : m.beta) total += (b = unit(rng));
    const double scale = std::min(1.0, k / total);
    for (double& b : m.beta) b *= scale;
    if (static_cast<int>(RecoverSubgraph(m).size()) > 2 * k) ++violations;
  }
  Require(o, violations == 0, std::to_string(violations) + " recoveries exceed 2k");
  if (o.pass) o.detail = Fmt("max formula difference %.3g; recovery bound held 100/100", worst);
  return o;
}

Outcome FarOptimum() {
  Outcome o;
  std::string detail;
  for (int i : {2, 5, 10}) {
    const rpo::UnboundedFamily fam = GenerateUnboundedFamily(i);
    const MipResult wide =
        SolveMip(BuildMip(fam.data, Box::Symmetric(2, 2.0 * i, false)), fam.data);
    Require(o, std::abs(wide.incumbent_reward - 1.0) <= 1e-6,
            Fmt("i=%g reward %.9g", i, wide.incumbent_reward));
    const double dist = std::hypot(wide.incumbent->beta[0], wide.incumbent->beta[1] - i);
    Require(o, dist <= 1e-3, Fmt("i=%g beta off by %.3g", i, dist));
    const MipResult narrow =
        SolveMip(BuildMip(fam.data, Box::Symmetric(2, 1.0, false)), fam.data);
    Require(o, narrow.incumbent_reward < 1.0, Fmt("i=%g unit box reward %.9g", i,
                                                  narrow.incumbent_reward));
    detail += Fmt("i=%g unit-box reward %.3g ", i, narrow.incumbent_reward);
  }
  if (o.pass) o.detail = detail;
  return o;
}

Outcome MethodOrdering() {
  Outcome o;
  const double tol = 1e-9;
  int dc_wins = 0, ga_wins = 0;
  std::string detail;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    GenParams gen;
    gen.d = 10;
    gen.n = 1200;
    gen.seed = seed;
    const Split split = SplitDataset(GenerateSynthetic(gen), 200, 0, seed);
    const Dataset& train = split.train;
    const Box box = Box::Symmetric(10, 1.0, true);
    FitOptions options;
    options.time_limit_seconds = 30.0;
    const double ub = PerfectInfoUpperBound(train);
    const double cp = Fit(Method::kCp, train, box, options).train_reward;
    const double lp = Fit(Method::kLp, train, box, options).train_reward;
    const double mip = Fit(Method::kMip, train, box, options).train_reward;
    const double dc = Fit(Method::kDc, train, box, options, &train).train_reward;
    const double ga = Fit(Method::kGa, train, box, options).train_reward;
    const std::string tag = "seed " + std::to_string(seed) + ": ";
    Require(o, ub >= mip - tol, tag + Fmt("UB %.6g < MIP %.6g", ub, mip));
    Require(o, mip >= std::max(cp, lp) - tol,
            tag + Fmt("MIP %.6g < max(CP %.6g, LP %.6g)", mip, cp, lp));
    const std::optional<double> gap = GapClosed(mip, dc, ub);
    Require(o, gap && *gap > 0.0, tag + "gap closed not positive");
    if (mip >= dc - tol) ++dc_wins;
    if (mip >= ga - tol) ++ga_wins;
    detail += tag + Fmt("MIP %.4f DC %.4f UB %.4f ", mip, dc, ub) +
              Fmt("GA %.4f CP %.4f; ", ga, cp);
  }
  Require(o, dc_wins >= 2, "MIP >= DC on " + std::to_string(dc_wins) + "/3 seeds");
  Require(o, ga_wins >= 2, "MIP >= GA on " + std::to_string(ga_wins) + "/3 seeds");
  if (o.pass) o.detail = detail;
  return o;
}

Outcome DcaMonotone() {
  Outcome o;
  std::mt19937_64 rng(9);
  int decreases = 0;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Dataset data = RandomData(rng, 3, 30);
    const Box box = Box::Symmetric(3, 1.0, true);
    DcParams params;
    params.gamma = 0.1;
    const DcaResult r = DcaFit(data, box, params, ConstantPriceModel(data, box));
    for (size_t k = 1; k < r.surrogate_trace.size(); ++k) {
      if (r.surrogate_trace[k] < r.surrogate_trace[k - 1]) ++decreases;
    }
    const AuctionSample& s = data.sample(t % data.num_rows());
    const double lo = -1.0, hi = s.b1 * (1 + params.gamma) + 1.0;
    for (int k = 0; k < 1000; ++k) {
      const double v = lo + (hi - lo) * k / 999;
      const DcSplit split = DcDecomposition(v, s, params.gamma);
      worst = std::max(worst, std::abs(split.f - split.g - DcSurrogate(v, s, params.gamma)));
    }
  }
  Require(o, decreases == 0, std::to_string(decreases) + " surrogate decreases");
  Require(o, worst <= 1e-12, Fmt("decomposition error %.3g", worst));
  if (o.pass) o.detail = Fmt("max decomposition error %.3g", worst);
  return o;
}

Outcome SubgradientCheck() {
  Outcome o;
  std::mt19937_64 rng(10);
  std::normal_distribution<double> normal(0.0, 0.5);
  const double h = 1e-6;
  double worst = 0.0;
  int checked = 0;
  while (checked < 100) {
    const Dataset data = RandomData(rng, 3, 10);
    LinearModel m{{normal(rng), normal(rng), normal(rng)}, normal(rng)};
    bool clear = true;
    for (const AuctionSample& s : data.samples()) {
      const double v = m.Predict(s.features);
      clear = clear && std::abs(v - s.b1) > 1e-3 && std::abs(v - s.b2) > 1e-3;
    }
    if (!clear) continue;
    ++checked;
    const LinearModel g = Subgradient(m, data);
    double err = 0.0, norm = 0.0;
    for (int j = 0; j <= 3; ++j) {
      LinearModel up = m, down = m;
      (j < 3 ? up.beta[j] : up.beta0) += h;
      (j < 3 ? down.beta[j] : down.beta0) -= h;
      const double fd = (AverageReward(up, data) - AverageReward(down, data)) / (2 * h);
      const double exact = j < 3 ? g.beta[j] : g.beta0;
      err += (fd - exact) * (fd - exact);
      norm += exact * exact;
    }
    worst = std::max(worst, std::sqrt(err) / std::max(1.0, std::sqrt(norm)));
  }
  Require(o, worst <= 1e-5, Fmt("relative error %.3g", worst));
  if (o.pass) o.detail = Fmt("max relative error %.3g", worst);
  return o;
}

struct Check {
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Check> checks = {
      {"reward_semantics", 1.0, RewardSemantics},
      {"block_idealness", 30.0, Idealness},
      {"lifted_block_equivalence", 30.0, LiftedEquivalence},
      {"exact_vs_oracle", 120.0, ExactVsOracle},
      {"lp_gap_family", 60.0, LpGapFamily},
      {"hardness_reduction", 30.0, Hardness},
      {"unbounded_family", 60.0, FarOptimum},
      {"method_ordering", 600.0, MethodOrdering},
      {"dca_monotonicity", 60.0, DcaMonotone},
      {"subgradient_vs_finite_differences", 10.0, SubgradientCheck},
  };
  int failed = 0;
  for (const Check& c : checks) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (o.pass && secs > c.budget_seconds) {
      o.pass = false;
      o.detail = Fmt("took %.1f s, budget %.0f s", secs, c.budget_seconds);
    }
    if (!o.pass) ++failed;
    std::printf("%s %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
