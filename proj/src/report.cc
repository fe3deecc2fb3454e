// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "rpo/harness.h"

namespace rpo {
namespace {

using nlohmann::json;

template <typename T>
json Optional(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

json ConfigJson(const ExperimentConfig& c) {
  json j;
  json methods = json::array();
  for (Method m : c.methods) methods.push_back(ToString(m));
  j["methods"] = methods;
  j["box_grid"] = c.box_grid;
  j["offset"] = c.offset;
  j["time_limit_seconds"] = c.fit.time_limit_seconds;
  j["node_limit"] = c.fit.node_limit;
  j["gamma_grid"] = c.fit.gamma_grid;
  j["seed"] = c.seed;
  if (c.train_csv.empty()) {
    j["data"] = {{"source", "synthetic"},
                 {"d", c.gen.d},
                 {"sigma", c.gen.sigma},
                 {"rho", c.gen.rho},
                 {"alpha", c.gen.alpha},
                 {"seed", c.gen.seed},
                 {"train_size", c.train_size},
                 {"val_size", c.val_size},
                 {"test_size", c.test_size}};
  } else {
    j["data"] = {{"source", "csv"},
                 {"train", c.train_csv},
                 {"val", c.val_csv},
                 {"test", c.test_csv},
                 {"val_size", c.val_size}};
  }
  return j;
}

std::string Cell(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", *v);
  return buf;
}

}  // namespace

std::string ReportToJson(const ExperimentReport& r) {
  json j;
  j["config"] = ConfigJson(r.config);
  j["rows"] = {{"train", r.train_rows}, {"val", r.val_rows}, {"test", r.test_rows}};
  j["ub"] = {{"train", r.train_ub}, {"val", Optional(r.val_ub)},
             {"test", Optional(r.test_ub)}};
  json methods = json::array();
  for (const MethodReport& m : r.methods) {
    json e;
    e["method"] = ToString(m.method);
    e["box_t"] = Optional(m.box_t);
    e["gamma"] = Optional(m.gamma);
    e["model"] = {{"beta", m.model.beta}, {"beta0", m.model.beta0}};
    e["train_reward"] = m.train_reward;
    e["train_sale_rate"] = m.train_sale_rate;
    e["val_reward"] = Optional(m.val_reward);
    e["test_reward"] = Optional(m.test_reward);
    e["test_sale_rate"] = Optional(m.test_sale_rate);
    e["solver"] = {{"status", m.stats.status},
                   {"nodes", m.stats.nodes},
                   {"lp_iterations", m.stats.lp_iterations},
                   {"dual_bound", Optional(m.stats.dual_bound)},
                   {"root_bound", Optional(m.stats.root_bound)}};
    json grid = json::array();
    for (const GridPoint& g : m.grid) grid.push_back({{"t", g.t}, {"val_reward", g.val_reward}});
    e["grid"] = grid;
    methods.push_back(e);
  }
  j["methods"] = methods;
  j["gap_closed"] = {{"train", Optional(r.gap_closed_train)},
                     {"test", Optional(r.gap_closed_test)}};
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

std::string TimingsToJson(const ExperimentReport& r) {
  json j = json::object();
  for (const MethodReport& m : r.methods) j[ToString(m.method)] = m.stats.wall_seconds;
  return j.dump(2) + "\n";
}

std::string ReportToCsv(const ExperimentReport& r) {
  std::ostringstream out;
  out << "method,box_t,gamma,train_reward,train_sale_rate,val_reward,test_reward,"
         "test_sale_rate,train_ub,test_ub,status\n";
  for (const MethodReport& m : r.methods) {
    out << ToString(m.method) << ',' << Cell(m.box_t) << ',' << Cell(m.gamma) << ','
        << Cell(m.train_reward) << ',' << Cell(m.train_sale_rate) << ','
        << Cell(m.val_reward) << ',' << Cell(m.test_reward) << ','
        << Cell(m.test_sale_rate) << ',' << Cell(r.train_ub) << ','
        << Cell(r.test_ub) << ',' << m.stats.status << '\n';
  }
  return out.str();
}

}  // namespace rpo
