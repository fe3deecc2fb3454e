// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Every flag can also be read from a TOML/INI file
// passed with --config.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rpo/baselines.h"
#include "rpo/core.h"
#include "rpo/datagen.h"
#include "rpo/harness.h"
#include "rpo/hardness.h"
#include "rpo/io.h"

namespace {

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string BoxPath(const std::string& csv_path) { return csv_path + ".box.json"; }

std::vector<rpo::Method> ParseMethods(const std::vector<std::string>& names) {
  std::vector<rpo::Method> out;
  for (const std::string& n : names) out.push_back(rpo::ParseMethod(n));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear reserve prices for second-price auctions"};
  app.set_config("--config", "", "Read flags from a TOML/INI file");
  app.require_subcommand(1);

  // generate
  rpo::GenParams gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset as CSV");
  generate->add_option("--d", gen.d, "Feature dimension")->capture_default_str();
  generate->add_option("--n", gen.n, "Number of impressions")->capture_default_str();
  generate->add_option("--sigma", gen.sigma, "Bid noise level")->capture_default_str();
  generate->add_option("--rho", gen.rho, "Buyer correlation")->capture_default_str();
  generate->add_option("--alpha", gen.alpha, "Bid dilation")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--out", gen_out, "Output CSV")->required();

  // train
  rpo::ExperimentConfig exp;
  std::vector<std::string> methods = {"cp", "lp", "mip", "mip_root", "dc", "ga"};
  std::string offset = "on";
  std::string report_path, timings_path, table_path;
  auto* train = app.add_subcommand("train", "Tune, fit and evaluate methods");
  train->add_option("--method", methods, "Methods: cp lp mip mip_root dc ga")
      ->delimiter(',')
      ->capture_default_str();
  train->add_option("--train", exp.train_csv, "Training CSV (synthetic data if absent)");
  train->add_option("--val", exp.val_csv, "Validation CSV");
  train->add_option("--test", exp.test_csv, "Test CSV");
  train->add_option("--time-limit", exp.fit.time_limit_seconds, "Seconds per fit")
      ->capture_default_str();
  train->add_option("--node-limit", exp.fit.node_limit, "MIP node limit, 0 = none")
      ->capture_default_str();
  train->add_option("--box-grid", exp.box_grid, "Candidate box half-widths T")
      ->delimiter(',');
  train->add_option("--gamma-grid", exp.fit.gamma_grid, "Candidate dc gammas")
      ->delimiter(',');
  train->add_option("--offset", offset, "Learn an offset: on|off")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  train->add_option("--seed", exp.seed, "Split (and generator) seed")->capture_default_str();
  train->add_option("--train-size", exp.train_size)->capture_default_str();
  train->add_option("--val-size", exp.val_size)->capture_default_str();
  train->add_option("--test-size", exp.test_size)->capture_default_str();
  train->add_option("--d", exp.gen.d)->capture_default_str();
  train->add_option("--sigma", exp.gen.sigma)->capture_default_str();
  train->add_option("--rho", exp.gen.rho)->capture_default_str();
  train->add_option("--alpha", exp.gen.alpha)->capture_default_str();
  train->add_option("--report", report_path, "Report JSON (stdout if absent)");
  train->add_option("--timings", timings_path, "Wall-clock times JSON");
  train->add_option("--table", table_path, "Method x metric CSV");

  // reduce-dsg
  std::string graph_path, dsg_out;
  int k = 1;
  std::optional<int> num_vertices;
  auto* reduce = app.add_subcommand("reduce-dsg", "Reserve price instance from a graph");
  reduce->add_option("--graph", graph_path, "Edge list, one 'u v' per line")->required();
  reduce->add_option("--k", k, "Subgraph size")->required();
  reduce->add_option("--num-vertices", num_vertices, "Vertex count override");
  reduce->add_option("--out", dsg_out, "Output CSV (box written next to it)")->required();

  // gap-family / unbounded-family
  int family_t = 1, family_i = 1;
  std::string gap_out, unbounded_out;
  auto* gap = app.add_subcommand("gap-family", "Instance with a large LP gap");
  gap->add_option("--t", family_t)->required();
  gap->add_option("--out", gap_out, "Output CSV (box written next to it)")->required();
  auto* unbounded = app.add_subcommand("unbounded-family", "Instance with a far optimum");
  unbounded->add_option("--i", family_i)->required();
  unbounded->add_option("--out", unbounded_out, "Output CSV")->required();

  // solve
  std::string instance_path, solve_method = "mip", box_file, solve_offset = "on";
  std::optional<double> box_t;
  rpo::FitOptions solve_fit;
  auto* solve = app.add_subcommand("solve", "Fit one method on one instance");
  solve->add_option("--instance", instance_path, "Instance CSV")->required();
  solve->add_option("--method", solve_method)->capture_default_str();
  solve->add_option("--box", box_t, "Symmetric box half-width T");
  solve->add_option("--box-file", box_file, "Box JSON (default: <instance>.box.json)");
  solve->add_option("--offset", solve_offset, "Offset with --box: on|off")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  solve->add_option("--time-limit", solve_fit.time_limit_seconds)->capture_default_str();
  solve->add_option("--node-limit", solve_fit.node_limit)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      rpo::SaveCsv(rpo::GenerateSynthetic(gen), gen_out);
    } else if (*train) {
      exp.methods = ParseMethods(methods);
      exp.offset = offset == "on";
      exp.gen.seed = exp.seed;
      const rpo::ExperimentReport report = rpo::RunExperiment(exp);
      const std::string json = rpo::ReportToJson(report);
      if (report_path.empty()) {
        std::cout << json;
      } else {
        WriteText(report_path, json);
      }
      if (!timings_path.empty()) WriteText(timings_path, rpo::TimingsToJson(report));
      if (!table_path.empty()) WriteText(table_path, rpo::ReportToCsv(report));
    } else if (*reduce) {
      const rpo::Graph g = rpo::ReadEdgeList(graph_path, num_vertices);
      const rpo::Instance inst = rpo::ReduceDensestSubgraph(g, k);
      rpo::SaveCsv(inst.data, dsg_out);
      rpo::SaveBox(inst.box, BoxPath(dsg_out));
    } else if (*gap) {
      const rpo::Instance inst = rpo::GenerateLpGapFamily(family_t);
      rpo::SaveCsv(inst.data, gap_out);
      rpo::SaveBox(inst.box, BoxPath(gap_out));
    } else if (*unbounded) {
      const rpo::UnboundedFamily fam = rpo::GenerateUnboundedFamily(family_i);
      rpo::SaveCsv(fam.data, unbounded_out);
      std::cout << "reference_optimum " << rpo::ModelToJson(fam.reference_optimum) << "\n";
    } else if (*solve) {
      const rpo::Dataset data = rpo::LoadCsv(instance_path);
      const rpo::Method method = rpo::ParseMethod(solve_method);
      rpo::Box box;
      if (box_t) {
        box = rpo::Box::Symmetric(data.dimension(), *box_t, solve_offset == "on");
      } else if (method != rpo::Method::kCp) {
        box = rpo::LoadBox(box_file.empty() ? BoxPath(instance_path) : box_file);
      }
      const rpo::FitResult fit = rpo::Fit(method, data, box, solve_fit);
      std::printf("method %s\nreward %.17g\nstatus %s\n", rpo::ToString(method),
                  fit.train_reward, fit.stats.status.c_str());
      if (fit.stats.dual_bound) std::printf("dual_bound %.17g\n", *fit.stats.dual_bound);
      std::printf("nodes %lld\nmodel %s\n", static_cast<long long>(fit.stats.nodes),
                  rpo::ModelToJson(fit.model).c_str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
