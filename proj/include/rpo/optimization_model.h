// SPDX-License-Identifier: Apache-2.0
//
// A small bounded-variable linear model with integrality markers. The
// objective is always maximized.

#ifndef RPO_OPTIMIZATION_MODEL_H_
#define RPO_OPTIMIZATION_MODEL_H_

#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace rpo {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Handle of a variable inside an OptimizationModel.
struct VarId {
  int index = -1;
  friend bool operator==(VarId, VarId) = default;
  friend auto operator<=>(VarId, VarId) = default;
};

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LinearTerm {
  VarId var;
  double coefficient = 0.0;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  bool integer = false;
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

class OptimizationModel {
 public:
  VarId AddVariable(std::string name, double lower, double upper,
                    bool integer = false);
  // Terms must reference declared variables; repeated variables are summed.
  int AddConstraint(std::string name, std::vector<LinearTerm> terms,
                    RowSense sense, double rhs);
  void SetObjectiveCoefficient(VarId var, double coefficient);
  void AddObjectiveCoefficient(VarId var, double coefficient);
  void SetVariableBounds(VarId var, double lower, double upper);
  void SetInteger(VarId var, bool integer);
  void ClearIntegrality();

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const Variable& variable(VarId var) const { return variables_[var.index]; }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<double>& objective() const { return objective_; }
  int num_integer_variables() const;

  // Objective value and worst row / bound violation of a full assignment.
  double ObjectiveValue(const std::vector<double>& values) const;
  double MaxViolation(const std::vector<double>& values) const;

 private:
  void CheckVar(VarId var) const;

  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<double> objective_;
};

// Writes the model in CPLEX LP text format (Maximize / Subject To / Bounds /
// Generals / End). Names are sanitized to [A-Za-z0-9_.]; numbers use 17
// significant digits.
void WriteLpFormat(const OptimizationModel& model, std::ostream& out);

}  // namespace rpo

#endif  // RPO_OPTIMIZATION_MODEL_H_
