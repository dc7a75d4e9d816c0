#ifndef LCMIN_SIMPLEX_H
#define LCMIN_SIMPLEX_H

#include <chrono>
#include <cstdint>
#include <memory>
#include <vector>

#include "lcmin/milp.h"

namespace lcmin::milp {

// Status of a column in a simplex basis. Columns [0, n) are structural,
// [n, n + m) are the row activities.
enum class ColStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

struct Basis {
  std::vector<ColStatus> status;
  bool empty() const { return status.empty(); }
};

class BasisFactor;

// Bounded-variable revised simplex over the LP relaxation of a MilpModel.
//
// Every row i gets an activity column r_i with a_i x - r_i = 0, bounded by the
// row's sense and rhs, so the all-activity basis is always a valid start. The
// basis is held as a sparse LU factorization with product-form updates.
// Column bounds may be changed between solves; the solver then restarts from
// its current basis (dual simplex when the basis stays dual feasible).
class SimplexSolver {
 public:
  explicit SimplexSolver(const MilpModel& model, LpOptions options = {});
  ~SimplexSolver();
  SimplexSolver(const SimplexSolver&) = delete;
  SimplexSolver& operator=(const SimplexSolver&) = delete;

  int num_structural() const { return n_; }
  int num_rows() const { return m_; }

  void set_bounds(VarId var, double lower, double upper);
  double lower(VarId var) const { return lower_[var]; }
  double upper(VarId var) const { return upper_[var]; }

  LpStatus solve(std::chrono::steady_clock::time_point deadline =
                     std::chrono::steady_clock::time_point::max());

  double objective() const;
  std::vector<double> primal() const;  // structural values
  std::vector<double> duals() const;   // row duals
  long long iterations() const { return total_iterations_; }

  Basis basis() const;
  // Installs a basis (e.g. a parent's in branch and bound). Invalid or
  // singular bases fall back to the all-activity basis.
  void set_basis(const Basis& basis);

 private:
  enum class Phase { kCosts, kZeroCosts };
  enum class Outcome { kOptimal, kInfeasible, kUnbounded, kLimit, kRestart };

  double cost(int j, Phase phase) const;
  double value_at_status(int j) const;
  void column_dot(int j, const std::vector<double>& v, double* out) const;
  void load_column(int j, std::vector<double>& dense) const;

  bool refactor();
  void slack_basis();
  void compute_primal();
  void compute_duals(Phase phase);
  double max_primal_infeasibility() const;
  bool dual_feasible(Phase phase) const;
  void flip_boxed_to_dual_feasible();
  void perturb_costs();
  void clear_perturbation();

  Outcome dual_simplex(Phase phase);
  Outcome primal_simplex();
  void pivot_row(int r, std::vector<double>& rho, std::vector<double>& alpha_row,
                 std::vector<int>& touched);
  void replace_basic(int r, int entering, const std::vector<double>& alpha_col);
  bool out_of_time();

  LpOptions options_;
  int n_ = 0;
  int m_ = 0;
  // Structural columns, column-major.
  std::vector<int> col_start_;
  std::vector<int> col_row_;
  std::vector<double> col_val_;
  // Same matrix row-major, for pivot rows.
  std::vector<int> row_start_;
  std::vector<int> row_col_;
  std::vector<double> row_val_;

  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> cost_;
  std::vector<double> perturbation_;
  bool perturbed_ = false;

  std::vector<ColStatus> status_;
  std::vector<int> head_;         // basic column per basis position
  std::vector<int> basis_pos_;    // position of a basic column, -1 otherwise
  std::vector<double> x_;
  std::vector<double> d_;         // reduced costs
  std::unique_ptr<BasisFactor> factor_;
  bool factor_valid_ = false;

  long long total_iterations_ = 0;
  long long iteration_budget_ = 0;
  std::chrono::steady_clock::time_point deadline_;
  int degenerate_streak_ = 0;
  bool bland_ = false;
};

}  // namespace lcmin::milp

#endif  // LCMIN_SIMPLEX_H
