// SPDX-License-Identifier: Apache-2.0

#include "rpo/formulation.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rpo {
namespace {

std::string Suffix(int sample_index) { return "_" + std::to_string(sample_index); }

void CheckBlockInput(const AuctionSample& sample, double l, double u) {
  if (!(l <= u)) {
    throw std::invalid_argument("sample block requires l <= u, got l=" +
                                std::to_string(l) + " u=" + std::to_string(u));
  }
  ValidateSample(sample);
}

std::array<VarId, 3> AddIndicators(OptimizationModel& model, bool integral,
                                   const std::string& suffix) {
  std::array<VarId, 3> z;
  for (int k = 0; k < 3; ++k) {
    z[k] = model.AddVariable("z" + std::to_string(k + 1) + suffix, 0.0, 1.0,
                             integral);
  }
  return z;
}

}  // namespace

SampleBlock BuildSampleBlock(OptimizationModel& model,
                             const AuctionSample& sample, double l, double u,
                             bool integral, int sample_index) {
  CheckBlockInput(sample, l, u);
  const double b1 = sample.b1;
  const double b2 = sample.b2;
  const std::string sfx = Suffix(sample_index);

  SampleBlock block;
  block.sample_index = sample_index;
  block.l = l;
  block.u = u;
  block.v = model.AddVariable("v" + sfx, l, u);
  block.y = model.AddVariable("y" + sfx, 0.0, b1);
  block.z = AddIndicators(model, integral, sfx);
  const VarId v = block.v, y = block.y;
  const auto [z1, z2, z3] = block.z;

  block.first_row = model.num_constraints();
  model.AddConstraint("piece_ub" + sfx, {{y, 1.0}, {z1, -b2}, {z2, -b1}},
                      RowSense::kLessEqual, 0.0);
  model.AddConstraint("piece_lb" + sfx, {{y, 1.0}, {z1, -b2}, {z2, -b2}},
                      RowSense::kGreaterEqual, 0.0);
  model.AddConstraint("link_ub" + sfx,
                      {{y, 1.0}, {v, -1.0}, {z1, -(b2 - l)}, {z3, b1}},
                      RowSense::kLessEqual, 0.0);
  model.AddConstraint("link_lb" + sfx, {{y, 1.0}, {v, -1.0}, {z3, u}},
                      RowSense::kGreaterEqual, 0.0);
  model.AddConstraint("choose" + sfx, {{z1, 1.0}, {z2, 1.0}, {z3, 1.0}},
                      RowSense::kEqual, 1.0);
  block.num_rows = model.num_constraints() - block.first_row;
  return block;
}

SampleBlock BuildLiftedBlock(OptimizationModel& model,
                             const AuctionSample& sample, double l, double u,
                             int sample_index) {
  CheckBlockInput(sample, l, u);
  const double b1 = sample.b1;
  const double b2 = sample.b2;
  const std::string sfx = Suffix(sample_index);

  SampleBlock block;
  block.sample_index = sample_index;
  block.l = l;
  block.u = u;
  block.v = model.AddVariable("v" + sfx, l, u);
  block.y = model.AddVariable("y" + sfx, 0.0, b1);
  block.z = AddIndicators(model, /*integral=*/false, sfx);

  // Each copy is bounded by the hull of {0} and its piece.
  const std::array<std::pair<double, double>, 3> v_range = {
      std::pair{std::min(0.0, l), std::max(0.0, b2)},
      std::pair{0.0, b1},
      std::pair{0.0, std::max(0.0, u)}};
  const std::array<std::pair<double, double>, 3> y_range = {
      std::pair{0.0, b2}, std::pair{0.0, b1}, std::pair{0.0, 0.0}};
  std::array<VarId, 3> vp, yp;
  for (int k = 0; k < 3; ++k) {
    const std::string tag = std::to_string(k + 1) + sfx;
    vp[k] = model.AddVariable("v" + tag + "_part", v_range[k].first,
                              v_range[k].second);
    yp[k] = model.AddVariable("y" + tag + "_part", y_range[k].first,
                              y_range[k].second);
  }
  block.v_parts = vp;
  block.y_parts = yp;
  const auto [z1, z2, z3] = block.z;

  block.first_row = model.num_constraints();
  model.AddConstraint("v_sum" + sfx,
                      {{block.v, 1.0}, {vp[0], -1.0}, {vp[1], -1.0}, {vp[2], -1.0}},
                      RowSense::kEqual, 0.0);
  model.AddConstraint("y_sum" + sfx,
                      {{block.y, 1.0}, {yp[0], -1.0}, {yp[1], -1.0}, {yp[2], -1.0}},
                      RowSense::kEqual, 0.0);
  model.AddConstraint("y1_def" + sfx, {{yp[0], 1.0}, {z1, -b2}}, RowSense::kEqual, 0.0);
  model.AddConstraint("v1_lb" + sfx, {{vp[0], 1.0}, {z1, -l}}, RowSense::kGreaterEqual, 0.0);
  model.AddConstraint("v1_ub" + sfx, {{vp[0], 1.0}, {z1, -b2}}, RowSense::kLessEqual, 0.0);
  model.AddConstraint("y2_def" + sfx, {{yp[1], 1.0}, {vp[1], -1.0}}, RowSense::kEqual, 0.0);
  model.AddConstraint("v2_lb" + sfx, {{vp[1], 1.0}, {z2, -b2}}, RowSense::kGreaterEqual, 0.0);
  model.AddConstraint("v2_ub" + sfx, {{vp[1], 1.0}, {z2, -b1}}, RowSense::kLessEqual, 0.0);
  model.AddConstraint("y3_def" + sfx, {{yp[2], 1.0}}, RowSense::kEqual, 0.0);
  model.AddConstraint("v3_lb" + sfx, {{vp[2], 1.0}, {z3, -b1}}, RowSense::kGreaterEqual, 0.0);
  model.AddConstraint("v3_ub" + sfx, {{vp[2], 1.0}, {z3, -u}}, RowSense::kLessEqual, 0.0);
  model.AddConstraint("choose" + sfx, {{z1, 1.0}, {z2, 1.0}, {z3, 1.0}},
                      RowSense::kEqual, 1.0);
  block.num_rows = model.num_constraints() - block.first_row;
  return block;
}

namespace {

ReserveFormulation Build(const Dataset& data, const Box& box, bool integral) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
  ValidateBox(box);
  if (box.dimension() != data.dimension()) {
    throw std::invalid_argument("box dimension does not match data dimension");
  }
  ReserveFormulation f;
  OptimizationModel& m = f.model;
  for (int j = 0; j < data.dimension(); ++j) {
    f.beta.push_back(m.AddVariable("beta_" + std::to_string(j), box.lower[j],
                                   box.upper[j]));
  }
  if (box.has_offset()) {
    f.offset = m.AddVariable("beta0", box.offset_lower, box.offset_upper);
  }
  for (int i = 0; i < data.num_rows(); ++i) {
    const AuctionSample& s = data.sample(i);
    const auto [l, u] = VariableBounds(s.features, box);
    SampleBlock block = BuildSampleBlock(m, s, l, u, integral, i);
    std::vector<LinearTerm> link = {{block.v, 1.0}};
    for (int j = 0; j < data.dimension(); ++j) {
      if (s.features[j] != 0.0) link.push_back({f.beta[j], -s.features[j]});
    }
    if (f.offset) link.push_back({*f.offset, -1.0});
    m.AddConstraint("predict_" + std::to_string(i), std::move(link),
                    RowSense::kEqual, 0.0);
    m.SetObjectiveCoefficient(block.y, data.weight(i));
    f.blocks.push_back(block);
  }
  return f;
}

}  // namespace

ReserveFormulation BuildMip(const Dataset& data, const Box& box) {
  return Build(data, box, /*integral=*/true);
}

ReserveFormulation BuildLp(const Dataset& data, const Box& box) {
  return Build(data, box, /*integral=*/false);
}

LinearModel ExtractModel(std::span<const double> values,
                         const ReserveFormulation& formulation) {
  const OptimizationModel& m = formulation.model;
  auto read = [&](VarId id) {
    if (id.index < 0 || static_cast<size_t>(id.index) >= values.size()) {
      throw std::invalid_argument("solution is missing variable " +
                                  m.variable(id).name);
    }
    const Variable& var = m.variable(id);
    return std::clamp(values[id.index], var.lower, var.upper) + 0.0;
  };
  LinearModel model;
  for (VarId id : formulation.beta) model.beta.push_back(read(id));
  if (formulation.offset) model.beta0 = read(*formulation.offset);
  return model;
}

}  // namespace rpo
