// SPDX-License-Identifier: Apache-2.0

#include "rpo/optimization_model.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace rpo {

VarId OptimizationModel::AddVariable(std::string name, double lower,
                                     double upper, bool integer) {
  if (!(lower <= upper)) {
    throw std::invalid_argument("variable " + name + " has lower > upper");
  }
  if (integer && (!std::isfinite(lower) || !std::isfinite(upper))) {
    throw std::invalid_argument("integer variable " + name +
                                " needs finite bounds");
  }
  variables_.push_back(Variable{std::move(name), lower, upper, integer});
  objective_.push_back(0.0);
  return VarId{num_variables() - 1};
}

int OptimizationModel::AddConstraint(std::string name,
                                     std::vector<LinearTerm> terms,
                                     RowSense sense, double rhs) {
  std::map<int, double> merged;
  for (const LinearTerm& t : terms) {
    CheckVar(t.var);
    merged[t.var.index] += t.coefficient;
  }
  std::vector<LinearTerm> clean;
  clean.reserve(merged.size());
  for (const auto& [index, coef] : merged) {
    if (coef != 0.0) clean.push_back(LinearTerm{VarId{index}, coef});
  }
  constraints_.push_back(Constraint{std::move(name), std::move(clean), sense, rhs});
  return num_constraints() - 1;
}

void OptimizationModel::SetObjectiveCoefficient(VarId var, double coefficient) {
  CheckVar(var);
  objective_[var.index] = coefficient;
}

void OptimizationModel::AddObjectiveCoefficient(VarId var, double coefficient) {
  CheckVar(var);
  objective_[var.index] += coefficient;
}

void OptimizationModel::SetVariableBounds(VarId var, double lower,
                                          double upper) {
  CheckVar(var);
  if (!(lower <= upper)) throw std::invalid_argument("lower > upper");
  variables_[var.index].lower = lower;
  variables_[var.index].upper = upper;
}

void OptimizationModel::SetInteger(VarId var, bool integer) {
  CheckVar(var);
  variables_[var.index].integer = integer;
}

void OptimizationModel::ClearIntegrality() {
  for (Variable& v : variables_) v.integer = false;
}

int OptimizationModel::num_integer_variables() const {
  return static_cast<int>(std::count_if(
      variables_.begin(), variables_.end(),
      [](const Variable& v) { return v.integer; }));
}

double OptimizationModel::ObjectiveValue(
    const std::vector<double>& values) const {
  double total = 0.0;
  for (int j = 0; j < num_variables(); ++j) total += objective_[j] * values.at(j);
  return total;
}

double OptimizationModel::MaxViolation(const std::vector<double>& values) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max(worst, variables_[j].lower - values.at(j));
    worst = std::max(worst, values.at(j) - variables_[j].upper);
  }
  for (const Constraint& c : constraints_) {
    double activity = 0.0;
    for (const LinearTerm& t : c.terms) {
      activity += t.coefficient * values.at(t.var.index);
    }
    if (c.sense != RowSense::kGreaterEqual) {
      worst = std::max(worst, activity - c.rhs);
    }
    if (c.sense != RowSense::kLessEqual) {
      worst = std::max(worst, c.rhs - activity);
    }
  }
  return worst;
}

void OptimizationModel::CheckVar(VarId var) const {
  if (var.index < 0 || var.index >= num_variables()) {
    throw std::out_of_range("undeclared variable index " +
                            std::to_string(var.index));
  }
}

namespace {

std::string Num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string Sanitize(const std::string& name, const char* fallback, int index) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  if (out.empty() || (out[0] >= '0' && out[0] <= '9') || out[0] == '.') {
    out = fallback + std::to_string(index) + (out.empty() ? "" : "_" + out);
  }
  return out;
}

void WriteTerms(std::ostream& out, const std::vector<std::string>& names,
                const std::vector<LinearTerm>& terms) {
  if (terms.empty()) {
    out << " 0 " << names.front();
    return;
  }
  for (const LinearTerm& t : terms) {
    out << (t.coefficient < 0 ? " - " : " + ") << Num(std::abs(t.coefficient))
        << ' ' << names[t.var.index];
  }
}

}  // namespace

void WriteLpFormat(const OptimizationModel& model, std::ostream& out) {
  std::vector<std::string> names;
  names.reserve(model.num_variables());
  for (int j = 0; j < model.num_variables(); ++j) {
    names.push_back(Sanitize(model.variables()[j].name, "x", j));
  }

  out << "\\ reserve price optimization model\n";
  out << "Maximize\n obj:";
  std::vector<LinearTerm> obj;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.objective()[j] != 0.0) obj.push_back({VarId{j}, model.objective()[j]});
  }
  if (model.num_variables() > 0) WriteTerms(out, names, obj);
  out << "\nSubject To\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const Constraint& c = model.constraints()[i];
    out << ' ' << Sanitize(c.name, "c", i) << ':';
    WriteTerms(out, names, c.terms);
    switch (c.sense) {
      case RowSense::kLessEqual: out << " <= "; break;
      case RowSense::kEqual: out << " = "; break;
      case RowSense::kGreaterEqual: out << " >= "; break;
    }
    out << Num(c.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < model.num_variables(); ++j) {
    const Variable& v = model.variables()[j];
    const bool lo_inf = std::isinf(v.lower);
    const bool hi_inf = std::isinf(v.upper);
    if (lo_inf && hi_inf) {
      out << ' ' << names[j] << " free\n";
    } else if (v.lower == v.upper) {
      out << ' ' << names[j] << " = " << Num(v.lower) << '\n';
    } else {
      out << ' ' << (lo_inf ? std::string("-inf") : Num(v.lower)) << " <= "
          << names[j] << " <= " << (hi_inf ? std::string("+inf") : Num(v.upper))
          << '\n';
    }
  }
  if (model.num_integer_variables() > 0) {
    out << "Generals\n";
    for (int j = 0; j < model.num_variables(); ++j) {
      if (model.variables()[j].integer) out << ' ' << names[j] << '\n';
    }
  }
  out << "End\n";
}

}  // namespace rpo
