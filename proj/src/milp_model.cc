#include <algorithm>
#include <cmath>

#include "lcmin/milp.h"

namespace lcmin::milp {

VarId MilpModel::add_variable(std::string name, VarKind kind, double lower,
                              double upper, double cost) {
  if (kind == VarKind::kBinary) {
    lower = std::max(lower, 0.0);
    upper = std::min(upper, 1.0);
  }
  vars_.push_back({std::move(name), kind, lower, upper, cost});
  return num_vars() - 1;
}

RowId MilpModel::add_constraint(std::string name, std::vector<Term> terms,
                                RowSense sense, double rhs) {
  rows_.push_back({std::move(name), std::move(terms), sense, rhs});
  return num_rows() - 1;
}

void MilpModel::set_bounds(VarId var, double lower, double upper) {
  Variable& v = vars_.at(var);
  v.lower = lower;
  v.upper = upper;
}

int MilpModel::num_integer_vars() const {
  return static_cast<int>(std::count_if(vars_.begin(), vars_.end(),
                                        [](const Variable& v) { return v.is_integer(); }));
}

std::vector<std::string> MilpModel::validate() const {
  std::vector<std::string> problems;
  for (VarId j = 0; j < num_vars(); ++j) {
    const Variable& v = vars_[j];
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      problems.push_back("variable " + v.name + " has inconsistent bounds");
    }
    if (v.lower == kInf || v.upper == -kInf) {
      problems.push_back("variable " + v.name + " has an infinite bound on the wrong side");
    }
    if (v.kind == VarKind::kBinary && (v.lower < 0 || v.upper > 1)) {
      problems.push_back("binary variable " + v.name + " outside [0, 1]");
    }
    if (!std::isfinite(v.cost)) problems.push_back("variable " + v.name + " has a non-finite cost");
  }
  for (const Constraint& c : rows_) {
    if (!std::isfinite(c.rhs)) problems.push_back("row " + c.name + " has a non-finite rhs");
    for (const Term& t : c.terms) {
      if (t.var < 0 || t.var >= num_vars()) {
        problems.push_back("row " + c.name + " references unknown variable " +
                           std::to_string(t.var));
      } else if (!std::isfinite(t.coef)) {
        problems.push_back("row " + c.name + " has a non-finite coefficient");
      }
    }
  }
  return problems;
}

void MilpModel::require_valid() const {
  const auto problems = validate();
  if (problems.empty()) return;
  std::string msg = "invalid model " + name_ + ":";
  for (const auto& p : problems) msg += " " + p + ";";
  throw MilpError(msg);
}

double MilpModel::objective(std::span<const double> x) const {
  double obj = 0;
  for (VarId j = 0; j < num_vars(); ++j) obj += vars_[j].cost * x[j];
  return obj;
}

double MilpModel::max_violation(std::span<const double> x) const {
  double worst = 0;
  for (VarId j = 0; j < num_vars(); ++j) {
    worst = std::max({worst, vars_[j].lower - x[j], x[j] - vars_[j].upper});
  }
  for (const Constraint& c : rows_) {
    double act = 0;
    for (const Term& t : c.terms) act += t.coef * x[t.var];
    switch (c.sense) {
      case RowSense::kLessEqual: worst = std::max(worst, act - c.rhs); break;
      case RowSense::kGreaterEqual: worst = std::max(worst, c.rhs - act); break;
      case RowSense::kEqual: worst = std::max(worst, std::abs(act - c.rhs)); break;
    }
  }
  return worst;
}

double MilpModel::max_integrality_violation(std::span<const double> x) const {
  double worst = 0;
  for (VarId j = 0; j < num_vars(); ++j) {
    if (vars_[j].is_integer()) worst = std::max(worst, std::abs(x[j] - std::round(x[j])));
  }
  return worst;
}

MilpModel MilpModel::relaxation() const {
  MilpModel out = *this;
  for (Variable& v : out.vars_) v.kind = VarKind::kContinuous;
  return out;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kTimeLimit: return "time-limit";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

const char* to_string(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimal: return "optimal";
    case MilpStatus::kFeasible: return "feasible";
    case MilpStatus::kInfeasible: return "infeasible";
    case MilpStatus::kTimeLimit: return "time-limit";
  }
  return "unknown";
}

double MilpSolution::gap() const {
  if (!has_solution()) return kInf;
  return std::abs(objective - best_bound) / std::max(1.0, std::abs(objective));
}

}  // namespace lcmin::milp
