// SPDX-License-Identifier: Apache-2.0

#include "rpo/optimization_model.h"

#include <gtest/gtest.h>

#include <sstream>

namespace rpo {
namespace {

TEST(OptimizationModelTest, MergesRepeatedTermsAndDropsZeros) {
  OptimizationModel m;
  const VarId x = m.AddVariable("x", 0.0, 1.0);
  const VarId y = m.AddVariable("y", 0.0, 1.0);
  m.AddConstraint("c", {{x, 1.0}, {y, 2.0}, {x, 0.5}, {y, -2.0}},
                  RowSense::kLessEqual, 1.0);
  ASSERT_EQ(m.constraints()[0].terms.size(), 1u);
  EXPECT_EQ(m.constraints()[0].terms[0].var, x);
  EXPECT_DOUBLE_EQ(m.constraints()[0].terms[0].coefficient, 1.5);
}

TEST(OptimizationModelTest, RejectsBadInput) {
  OptimizationModel m;
  EXPECT_THROW(m.AddVariable("x", 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(m.AddVariable("z", 0.0, kInfinity, true), std::invalid_argument);
  const VarId x = m.AddVariable("x", 0.0, 1.0);
  EXPECT_THROW(m.AddConstraint("c", {{VarId{5}, 1.0}}, RowSense::kEqual, 0.0),
               std::out_of_range);
  EXPECT_THROW(m.SetVariableBounds(x, 2.0, 1.0), std::invalid_argument);
}

TEST(OptimizationModelTest, ObjectiveAndViolation) {
  OptimizationModel m;
  const VarId x = m.AddVariable("x", 0.0, 2.0);
  const VarId y = m.AddVariable("y", -kInfinity, kInfinity);
  m.AddConstraint("sum", {{x, 1.0}, {y, 1.0}}, RowSense::kEqual, 1.0);
  m.SetObjectiveCoefficient(x, 3.0);
  m.AddObjectiveCoefficient(y, -1.0);
  EXPECT_DOUBLE_EQ(m.ObjectiveValue({2.0, -1.0}), 7.0);
  EXPECT_DOUBLE_EQ(m.MaxViolation({2.0, -1.0}), 0.0);
  EXPECT_DOUBLE_EQ(m.MaxViolation({2.5, -1.0}), 0.5);
  EXPECT_DOUBLE_EQ(m.MaxViolation({1.0, 1.0}), 1.0);
}

TEST(OptimizationModelTest, IntegralityMarkers) {
  OptimizationModel m;
  const VarId z = m.AddVariable("z", 0.0, 1.0, true);
  m.AddVariable("x", 0.0, 1.0);
  EXPECT_EQ(m.num_integer_variables(), 1);
  m.SetInteger(z, false);
  EXPECT_EQ(m.num_integer_variables(), 0);
  m.SetInteger(z, true);
  m.ClearIntegrality();
  EXPECT_EQ(m.num_integer_variables(), 0);
}

TEST(WriteLpFormatTest, Sections) {
  OptimizationModel m;
  const VarId x = m.AddVariable("x", -kInfinity, kInfinity);
  const VarId z = m.AddVariable("z[1]", 0.0, 1.0, true);
  const VarId f = m.AddVariable("f", 2.0, 2.0);
  m.AddConstraint("row", {{x, 1.0}, {z, -2.5}}, RowSense::kGreaterEqual, -1.0);
  m.SetObjectiveCoefficient(x, 1.0);
  m.SetObjectiveCoefficient(f, 0.5);
  std::ostringstream out;
  WriteLpFormat(m, out);
  const std::string text = out.str();
  EXPECT_NE(text.find("Maximize\n obj: + 1 x + 0.5 f\n"), std::string::npos) << text;
  EXPECT_NE(text.find("Subject To\n row: + 1 x - 2.5 z_1_ >= -1\n"), std::string::npos)
      << text;
  EXPECT_NE(text.find(" x free\n"), std::string::npos);
  EXPECT_NE(text.find(" 0 <= z_1_ <= 1\n"), std::string::npos);
  EXPECT_NE(text.find(" f = 2\n"), std::string::npos);
  EXPECT_NE(text.find("Generals\n z_1_\nEnd\n"), std::string::npos) << text;
}

}  // namespace
}  // namespace rpo
