#ifndef LCMIN_MILP_H
#define LCMIN_MILP_H

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcmin::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using VarId = int;
using RowId = int;

enum class VarKind { kContinuous, kBinary, kInteger };
enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct Term {
  VarId var;
  double coef;
};

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0;
  double upper = kInf;
  double cost = 0;

  bool is_integer() const { return kind != VarKind::kContinuous; }
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0;
};

class MilpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A minimization problem over continuous, binary and general integer
// variables with linear constraints.
class MilpModel {
 public:
  explicit MilpModel(std::string name = "model") : name_(std::move(name)) {}

  VarId add_variable(std::string name, VarKind kind, double lower,
                     double upper, double cost = 0);
  RowId add_constraint(std::string name, std::vector<Term> terms,
                       RowSense sense, double rhs);
  void set_cost(VarId var, double cost) { vars_.at(var).cost = cost; }
  void set_bounds(VarId var, double lower, double upper);

  const std::string& name() const { return name_; }
  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_integer_vars() const;
  const Variable& var(VarId v) const { return vars_[v]; }
  const Constraint& row(RowId r) const { return rows_[r]; }
  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Constraint>& rows() const { return rows_; }

  // Problems with the model's structure: dangling variable references,
  // inverted bounds, binaries outside [0, 1], non-finite coefficients.
  std::vector<std::string> validate() const;
  void require_valid() const;

  double objective(std::span<const double> x) const;
  // Largest absolute violation of any bound or row by x. Does not look at
  // integrality.
  double max_violation(std::span<const double> x) const;
  // Largest distance of an integer variable from the nearest integer.
  double max_integrality_violation(std::span<const double> x) const;

  // Copy with every variable made continuous.
  MilpModel relaxation() const;

 private:
  std::string name_;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
};

// ---------------------------------------------------------------------------
// Linear programming.

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kTimeLimit, kIterationLimit };
const char* to_string(LpStatus status);

struct LpOptions {
  double primal_tolerance = 1e-9;
  double dual_tolerance = 1e-9;
  double time_limit_s = kInf;
  long long iteration_limit = -1;  // < 0: scaled to problem size
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;  // structural variables
  std::vector<double> duals;   // one per row
  double objective = 0;
  long long iterations = 0;
};

// Solves the LP relaxation of model (integrality is ignored).
LpSolution solve_lp(const MilpModel& model, const LpOptions& options = {});

// ---------------------------------------------------------------------------
// Mixed-integer programming.

enum class MilpStatus { kOptimal, kFeasible, kInfeasible, kTimeLimit };
const char* to_string(MilpStatus status);

struct MilpSolution {
  MilpStatus status = MilpStatus::kInfeasible;
  std::vector<double> values;
  double objective = kInf;
  double best_bound = -kInf;
  long long nodes = 0;
  long long lp_iterations = 0;
  double wall_time_s = 0;

  bool has_solution() const {
    return status == MilpStatus::kOptimal || status == MilpStatus::kFeasible;
  }
  double gap() const;
};

// Maps an LP relaxation point to a candidate integer solution. The candidate
// is accepted only if it passes the model's own feasibility check.
using RoundingHeuristic =
    std::function<std::optional<std::vector<double>>(std::span<const double>)>;

struct MilpBudget {
  double time_limit_s = kInf;
  long long node_limit = -1;  // < 0: unlimited
  double relative_gap = 0;    // stop once (incumbent - bound) <= gap * |incumbent|
  double integrality_tolerance = 1e-6;
  double feasibility_tolerance = 1e-6;
  RoundingHeuristic rounding;
  // Called with each new incumbent objective; for progress logging.
  std::function<void(double objective, double bound, long long nodes)> on_incumbent;
};

// Best-first branch and bound on the LP relaxation. Branches on the most
// fractional integer variable, lowest id first on ties. Single-threaded and
// deterministic.
MilpSolution solve_milp(const MilpModel& model, const MilpBudget& budget = {});

// ---------------------------------------------------------------------------
// LP file exchange.

// CPLEX LP format: Minimize / Subject To / Bounds / Generals / Binaries / End.
// Throws MilpError when two variables or rows end up with the same name.
std::string export_lp_text(const MilpModel& model);

// Reads "<name> <value>" lines (blank lines and '#' comments allowed) into a
// full assignment. Variables not mentioned get 0. Unknown names throw
// MilpError.
std::vector<double> read_solution_text(const MilpModel& model,
                                       const std::string& text);
std::string write_solution_text(const MilpModel& model,
                                std::span<const double> values);

// Name as written to LP files: invalid characters replaced, length capped.
std::string lp_safe_name(const std::string& name);


// ---------------------------------------------------------------------------
// Solver interface, so problem builders do not care who solves the model.

class MilpSolver {
 public:
  virtual ~MilpSolver() = default;
  virtual std::string name() const = 0;
  virtual MilpSolution solve(const MilpModel& model, const MilpBudget& budget) = 0;
};

class BranchAndBoundSolver final : public MilpSolver {
 public:
  std::string name() const override { return "internal"; }
  MilpSolution solve(const MilpModel& model, const MilpBudget& budget) override {
    return solve_milp(model, budget);
  }
};

// Hands the model to an external program through files. The command template
// has {lp} and {sol} replaced by file paths and {time} by the time limit in
// seconds (0 when unlimited); the program reads the LP file and
// writes "<name> <value>" lines to the solution file. A "# status <s>" line
// with s in {optimal, feasible, infeasible} sets the reported status; without
// it a solution that passes the model's feasibility check is "feasible". A
// missing or empty solution file means infeasible.
class LpFileSolver final : public MilpSolver {
 public:
  LpFileSolver(std::string command_template, std::string work_dir);
  std::string name() const override { return "lp-file"; }
  MilpSolution solve(const MilpModel& model, const MilpBudget& budget) override;

 private:
  std::string command_;
  std::string work_dir_;
};

}  // namespace lcmin::milp

#endif  // LCMIN_MILP_H
