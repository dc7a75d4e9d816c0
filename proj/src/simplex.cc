#include "lcmin/simplex.h"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace lcmin::milp {

namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kDropTolerance = 1e-14;
constexpr int kRefactorInterval = 100;
constexpr int kDegenerateStreakForBland = 200;

bool finite(double v) { return std::isfinite(v); }

}  // namespace

// Sparse LU of the basis matrix plus a product-form eta file for the pivots
// done since the last factorization.
class BasisFactor {
 public:
  bool factor(const Eigen::SparseMatrix<double>& basis) {
    m_ = static_cast<int>(basis.rows());
    etas_.clear();
    if (m_ == 0) return true;
    lu_.analyzePattern(basis);
    lu_.factorize(basis);
    if (lu_.info() != Eigen::Success) return false;
    // SparseLU accepts some numerically singular matrices; reject tiny
    // pivots ourselves.
    const double det = lu_.logAbsDeterminant();
    return std::isfinite(det);
  }

  void ftran(std::vector<double>& v) {
    if (m_ > 0) {
      Eigen::Map<Eigen::VectorXd> map(v.data(), m_);
      tmp_ = lu_.solve(map);
      map = tmp_;
    }
    for (const Eta& e : etas_) {
      double& vr = v[e.r];
      if (vr == 0) continue;
      vr /= e.pivot;
      for (const auto& [i, a] : e.entries) v[i] -= a * vr;
    }
  }

  void btran(std::vector<double>& v) {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = v[it->r];
      for (const auto& [i, a] : it->entries) s -= v[i] * a;
      v[it->r] = s / it->pivot;
    }
    if (m_ > 0) {
      Eigen::Map<Eigen::VectorXd> map(v.data(), m_);
      tmp_ = lu_.transpose().solve(map);
      map = tmp_;
    }
  }

  void update(int r, const std::vector<double>& alpha) {
    Eta e;
    e.r = r;
    e.pivot = alpha[r];
    for (int i = 0; i < m_; ++i) {
      if (i != r && std::abs(alpha[i]) > kDropTolerance) e.entries.emplace_back(i, alpha[i]);
    }
    etas_.push_back(std::move(e));
  }

  int num_updates() const { return static_cast<int>(etas_.size()); }

 private:
  struct Eta {
    int r = 0;
    double pivot = 1;
    std::vector<std::pair<int, double>> entries;
  };

  int m_ = 0;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  Eigen::VectorXd tmp_;
  std::vector<Eta> etas_;
};

SimplexSolver::SimplexSolver(const MilpModel& model, LpOptions options)
    : options_(options),
      n_(model.num_vars()),
      m_(model.num_rows()),
      factor_(std::make_unique<BasisFactor>()) {
  model.require_valid();
  const int total = n_ + m_;
  lower_.resize(total);
  upper_.resize(total);
  cost_.assign(total, 0.0);
  perturbation_.assign(total, 0.0);
  for (VarId j = 0; j < n_; ++j) {
    lower_[j] = model.var(j).lower;
    upper_[j] = model.var(j).upper;
    cost_[j] = model.var(j).cost;
  }
  // Merge repeated terms and build both orientations of the matrix.
  std::vector<std::vector<std::pair<int, double>>> cols(n_);
  row_start_.assign(m_ + 1, 0);
  for (RowId i = 0; i < m_; ++i) {
    const Constraint& c = model.row(i);
    std::map<int, double> merged;
    for (const Term& t : c.terms) merged[t.var] += t.coef;
    for (const auto& [j, v] : merged) {
      if (v == 0) continue;
      cols[j].emplace_back(i, v);
      row_col_.push_back(j);
      row_val_.push_back(v);
    }
    row_start_[i + 1] = static_cast<int>(row_col_.size());
    switch (c.sense) {
      case RowSense::kLessEqual:
        lower_[n_ + i] = -kInf;
        upper_[n_ + i] = c.rhs;
        break;
      case RowSense::kGreaterEqual:
        lower_[n_ + i] = c.rhs;
        upper_[n_ + i] = kInf;
        break;
      case RowSense::kEqual:
        lower_[n_ + i] = c.rhs;
        upper_[n_ + i] = c.rhs;
        break;
    }
  }
  col_start_.assign(n_ + 1, 0);
  for (int j = 0; j < n_; ++j) {
    for (const auto& [i, v] : cols[j]) {
      col_row_.push_back(i);
      col_val_.push_back(v);
    }
    col_start_[j + 1] = static_cast<int>(col_row_.size());
  }
  x_.assign(total, 0.0);
  d_.assign(total, 0.0);
  slack_basis();
}

SimplexSolver::~SimplexSolver() = default;

void SimplexSolver::slack_basis() {
  const int total = n_ + m_;
  status_.assign(total, ColStatus::kAtLower);
  head_.assign(m_, 0);
  basis_pos_.assign(total, -1);
  for (int j = 0; j < n_; ++j) {
    const bool lo = finite(lower_[j]);
    const bool hi = finite(upper_[j]);
    if (lo && hi) {
      status_[j] = cost_[j] >= 0 ? ColStatus::kAtLower : ColStatus::kAtUpper;
    } else if (lo) {
      status_[j] = ColStatus::kAtLower;
    } else if (hi) {
      status_[j] = ColStatus::kAtUpper;
    } else {
      status_[j] = ColStatus::kFree;
    }
  }
  for (int i = 0; i < m_; ++i) {
    status_[n_ + i] = ColStatus::kBasic;
    head_[i] = n_ + i;
    basis_pos_[n_ + i] = i;
  }
  factor_valid_ = false;
}

void SimplexSolver::set_bounds(VarId var, double lower, double upper) {
  lower_[var] = lower;
  upper_[var] = upper;
  ColStatus& st = status_[var];
  if (st == ColStatus::kAtLower && !finite(lower)) {
    st = finite(upper) ? ColStatus::kAtUpper : ColStatus::kFree;
  } else if (st == ColStatus::kAtUpper && !finite(upper)) {
    st = finite(lower) ? ColStatus::kAtLower : ColStatus::kFree;
  } else if (st == ColStatus::kFree) {
    if (finite(lower)) st = ColStatus::kAtLower;
    else if (finite(upper)) st = ColStatus::kAtUpper;
  }
}

double SimplexSolver::cost(int j, Phase phase) const {
  const double base = phase == Phase::kCosts ? cost_[j] : 0.0;
  return perturbed_ ? base + perturbation_[j] : base;
}

double SimplexSolver::value_at_status(int j) const {
  switch (status_[j]) {
    case ColStatus::kAtLower: return lower_[j];
    case ColStatus::kAtUpper: return upper_[j];
    case ColStatus::kFree: return 0.0;
    case ColStatus::kBasic: return x_[j];
  }
  return 0.0;
}

void SimplexSolver::load_column(int j, std::vector<double>& dense) const {
  std::fill(dense.begin(), dense.end(), 0.0);
  if (j < n_) {
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) dense[col_row_[k]] = col_val_[k];
  } else {
    dense[j - n_] = -1.0;
  }
}

void SimplexSolver::column_dot(int j, const std::vector<double>& v,
                               double* out) const {
  if (j < n_) {
    double s = 0;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) s += v[col_row_[k]] * col_val_[k];
    *out = s;
  } else {
    *out = -v[j - n_];
  }
}

bool SimplexSolver::refactor() {
  Eigen::SparseMatrix<double> basis(m_, m_);
  std::vector<Eigen::Triplet<double>> trips;
  for (int pos = 0; pos < m_; ++pos) {
    const int j = head_[pos];
    if (j < n_) {
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
        trips.emplace_back(col_row_[k], pos, col_val_[k]);
      }
    } else {
      trips.emplace_back(j - n_, pos, -1.0);
    }
  }
  basis.setFromTriplets(trips.begin(), trips.end());
  basis.makeCompressed();
  factor_valid_ = factor_->factor(basis);
  return factor_valid_;
}

void SimplexSolver::compute_primal() {
  std::vector<double> rhs(m_, 0.0);
  for (int j = 0; j < n_ + m_; ++j) {
    if (status_[j] == ColStatus::kBasic) continue;
    const double v = value_at_status(j);
    x_[j] = v;
    if (v == 0) continue;
    if (j < n_) {
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) rhs[col_row_[k]] -= col_val_[k] * v;
    } else {
      rhs[j - n_] += v;
    }
  }
  factor_->ftran(rhs);
  for (int pos = 0; pos < m_; ++pos) x_[head_[pos]] = rhs[pos];
}

void SimplexSolver::compute_duals(Phase phase) {
  std::vector<double> y(m_);
  for (int pos = 0; pos < m_; ++pos) y[pos] = cost(head_[pos], phase);
  factor_->btran(y);
  for (int j = 0; j < n_ + m_; ++j) {
    if (status_[j] == ColStatus::kBasic) {
      d_[j] = 0;
      continue;
    }
    double dot;
    column_dot(j, y, &dot);
    d_[j] = cost(j, phase) - dot;
  }
}

double SimplexSolver::max_primal_infeasibility() const {
  double worst = 0;
  for (int pos = 0; pos < m_; ++pos) {
    const int j = head_[pos];
    worst = std::max({worst, lower_[j] - x_[j], x_[j] - upper_[j]});
  }
  return worst;
}

bool SimplexSolver::dual_feasible(Phase) const {
  const double tol = options_.dual_tolerance;
  for (int j = 0; j < n_ + m_; ++j) {
    if (lower_[j] == upper_[j]) continue;
    switch (status_[j]) {
      case ColStatus::kBasic: break;
      case ColStatus::kAtLower:
        if (d_[j] < -tol) return false;
        break;
      case ColStatus::kAtUpper:
        if (d_[j] > tol) return false;
        break;
      case ColStatus::kFree:
        if (std::abs(d_[j]) > tol) return false;
        break;
    }
  }
  return true;
}

void SimplexSolver::flip_boxed_to_dual_feasible() {
  bool changed = false;
  for (int j = 0; j < n_ + m_; ++j) {
    if (!finite(lower_[j]) || !finite(upper_[j]) || lower_[j] == upper_[j]) continue;
    if (status_[j] == ColStatus::kAtLower && d_[j] < -options_.dual_tolerance) {
      status_[j] = ColStatus::kAtUpper;
      changed = true;
    } else if (status_[j] == ColStatus::kAtUpper && d_[j] > options_.dual_tolerance) {
      status_[j] = ColStatus::kAtLower;
      changed = true;
    }
  }
  if (changed) compute_primal();
}

void SimplexSolver::perturb_costs() {
  // Deterministic: the same model and basis always get the same
  // perturbation.
  std::mt19937 rng(12345u + static_cast<unsigned>(n_ * 31 + m_));
  std::uniform_real_distribution<double> unit(0.5, 1.0);
  double scale = 1;
  for (int j = 0; j < n_; ++j) scale = std::max(scale, std::abs(cost_[j]));
  const double base = 1e-7 * scale;
  for (int j = 0; j < n_ + m_; ++j) {
    perturbation_[j] = 0;
    if (lower_[j] == upper_[j]) continue;
    const double mag = base * unit(rng) * (1 + std::abs(cost_[j]) / scale);
    if (status_[j] == ColStatus::kAtLower) perturbation_[j] = mag;
    else if (status_[j] == ColStatus::kAtUpper) perturbation_[j] = -mag;
  }
  perturbed_ = true;
}

void SimplexSolver::clear_perturbation() {
  perturbed_ = false;
  std::fill(perturbation_.begin(), perturbation_.end(), 0.0);
}

bool SimplexSolver::out_of_time() {
  if (total_iterations_ >= iteration_budget_) return true;
  if ((total_iterations_ & 63) == 0 && std::chrono::steady_clock::now() > deadline_) return true;
  return false;
}

void SimplexSolver::pivot_row(int r, std::vector<double>& rho,
                              std::vector<double>& alpha_row,
                              std::vector<int>& touched) {
  std::fill(rho.begin(), rho.end(), 0.0);
  rho[r] = 1.0;
  factor_->btran(rho);
  for (int j : touched) alpha_row[j] = 0.0;
  touched.clear();
  for (int i = 0; i < m_; ++i) {
    const double ri = rho[i];
    if (std::abs(ri) <= kDropTolerance) continue;
    for (int k = row_start_[i]; k < row_start_[i + 1]; ++k) {
      const int j = row_col_[k];
      if (alpha_row[j] == 0.0) touched.push_back(j);
      alpha_row[j] += ri * row_val_[k];
      // Keep j in touched even if the sum cancels to zero.
      if (alpha_row[j] == 0.0) alpha_row[j] = 1e-300;
    }
    const int act = n_ + i;
    alpha_row[act] = -ri;
    touched.push_back(act);
  }
}

void SimplexSolver::replace_basic(int r, int entering,
                                  const std::vector<double>& alpha_col) {
  const int leaving = head_[r];
  head_[r] = entering;
  basis_pos_[entering] = r;
  basis_pos_[leaving] = -1;
  status_[entering] = ColStatus::kBasic;
  factor_->update(r, alpha_col);
  ++total_iterations_;
}

SimplexSolver::Outcome SimplexSolver::dual_simplex(Phase phase) {
  const double ptol = options_.primal_tolerance;
  const double dtol = options_.dual_tolerance;
  std::vector<double> rho(m_), alpha_row(n_ + m_, 0.0), alpha_col(m_);
  std::vector<int> touched;
  int numerical_restarts = 0;
  degenerate_streak_ = 0;
  bland_ = false;
  while (true) {
    if (out_of_time()) return Outcome::kLimit;
    // Leaving row: largest bound violation.
    int r = -1;
    double best = ptol;
    for (int pos = 0; pos < m_; ++pos) {
      const int j = head_[pos];
      const double infeas = std::max(lower_[j] - x_[j], x_[j] - upper_[j]);
      if (infeas <= ptol) continue;
      if (bland_) {
        if (r < 0 || j < head_[r]) r = pos;
      } else if (infeas > best) {
        best = infeas;
        r = pos;
      }
    }
    if (r < 0) return Outcome::kOptimal;
    const int p = head_[r];
    const bool to_upper = x_[p] > upper_[p];
    const double bound = to_upper ? upper_[p] : lower_[p];
    const double s = to_upper ? 1.0 : -1.0;

    pivot_row(r, rho, alpha_row, touched);

    // Harris two-pass ratio test.
    double tmax = kInf;
    for (int j : touched) {
      const ColStatus st = status_[j];
      if (st == ColStatus::kBasic || lower_[j] == upper_[j]) continue;
      const double ab = s * alpha_row[j];
      if (std::abs(ab) < kPivotTolerance) continue;
      if (st == ColStatus::kAtLower && ab > 0) {
        tmax = std::min(tmax, (d_[j] + dtol) / ab);
      } else if (st == ColStatus::kAtUpper && ab < 0) {
        tmax = std::min(tmax, (d_[j] - dtol) / ab);
      } else if (st == ColStatus::kFree) {
        tmax = std::min(tmax, dtol / std::abs(ab));
      }
    }
    if (tmax == kInf) return Outcome::kInfeasible;
    int q = -1;
    double q_ratio = 0;
    double q_mag = 0;
    for (int j : touched) {
      const ColStatus st = status_[j];
      if (st == ColStatus::kBasic || lower_[j] == upper_[j]) continue;
      const double ab = s * alpha_row[j];
      if (std::abs(ab) < kPivotTolerance) continue;
      double ratio;
      if (st == ColStatus::kAtLower && ab > 0) ratio = d_[j] / ab;
      else if (st == ColStatus::kAtUpper && ab < 0) ratio = d_[j] / ab;
      else if (st == ColStatus::kFree) ratio = std::abs(d_[j]) / std::abs(ab);
      else continue;
      if (ratio > tmax) continue;
      const bool better = bland_ ? (q < 0 || j < q) : std::abs(ab) > q_mag;
      if (better) {
        q = j;
        q_ratio = ratio;
        q_mag = std::abs(ab);
      }
    }
    if (q < 0) return Outcome::kInfeasible;
    const double t = std::max(0.0, q_ratio);

    load_column(q, alpha_col);
    factor_->ftran(alpha_col);
    const double pivot = alpha_col[r];
    if (std::abs(pivot - alpha_row[q]) > 1e-7 * (1 + std::abs(pivot)) ||
        std::abs(pivot) < kPivotTolerance) {
      if (++numerical_restarts > 5) {
        std::ostringstream msg;
        msg << "dual simplex: unstable pivot (row value " << alpha_row[q]
            << ", column value " << pivot << ") with " << m_ << " rows after "
            << total_iterations_ << " iterations";
        throw MilpError(msg.str());
      }
      if (!refactor()) return Outcome::kRestart;
      compute_primal();
      compute_duals(phase);
      continue;
    }

    // Primal step.
    const double delta = x_[p] - bound;
    const double step = delta / pivot;
    for (int pos = 0; pos < m_; ++pos) {
      if (alpha_col[pos] != 0) x_[head_[pos]] -= step * alpha_col[pos];
    }
    x_[q] += step;
    x_[p] = bound;

    // Dual step.
    if (t > 0) {
      for (int j : touched) {
        if (status_[j] == ColStatus::kBasic) continue;
        d_[j] -= t * s * alpha_row[j];
      }
    }
    d_[p] = -s * t;
    d_[q] = 0;

    replace_basic(r, q, alpha_col);
    status_[p] = to_upper ? ColStatus::kAtUpper : ColStatus::kAtLower;

    if (t <= 1e-12) {
      if (++degenerate_streak_ > kDegenerateStreakForBland) bland_ = true;
    } else {
      degenerate_streak_ = 0;
      bland_ = false;
    }

    if (factor_->num_updates() >= kRefactorInterval) {
      if (!refactor()) return Outcome::kRestart;
      compute_primal();
      compute_duals(phase);
    }
  }
}

SimplexSolver::Outcome SimplexSolver::primal_simplex() {
  const double ptol = options_.primal_tolerance;
  const double dtol = options_.dual_tolerance;
  std::vector<double> alpha_col(m_);
  degenerate_streak_ = 0;
  bland_ = false;
  while (true) {
    if (out_of_time()) return Outcome::kLimit;
    compute_duals(Phase::kCosts);
    int q = -1;
    double best = 0;
    for (int j = 0; j < n_ + m_; ++j) {
      const ColStatus st = status_[j];
      if (st == ColStatus::kBasic || lower_[j] == upper_[j]) continue;
      double score = 0;
      if (st == ColStatus::kAtLower && d_[j] < -dtol) score = -d_[j];
      else if (st == ColStatus::kAtUpper && d_[j] > dtol) score = d_[j];
      else if (st == ColStatus::kFree && std::abs(d_[j]) > dtol) score = std::abs(d_[j]);
      if (score == 0) continue;
      if (bland_) {
        q = j;
        break;
      }
      if (score > best) {
        best = score;
        q = j;
      }
    }
    if (q < 0) return Outcome::kOptimal;
    const double dir = d_[q] < 0 ? 1.0 : -1.0;
    load_column(q, alpha_col);
    factor_->ftran(alpha_col);

    double tmax = kInf;
    for (int pos = 0; pos < m_; ++pos) {
      const double a = alpha_col[pos];
      if (std::abs(a) < kPivotTolerance) continue;
      const int j = head_[pos];
      const double rate = -dir * a;
      if (rate < 0 && finite(lower_[j])) {
        tmax = std::min(tmax, (x_[j] - lower_[j] + ptol) / -rate);
      } else if (rate > 0 && finite(upper_[j])) {
        tmax = std::min(tmax, (upper_[j] + ptol - x_[j]) / rate);
      }
    }
    const double flip = upper_[q] - lower_[q];
    if (finite(flip) && flip <= tmax) {
      // Bound flip: q moves across its box without a basis change.
      const double step = dir * flip;
      for (int pos = 0; pos < m_; ++pos) {
        if (alpha_col[pos] != 0) x_[head_[pos]] -= step * alpha_col[pos];
      }
      status_[q] = dir > 0 ? ColStatus::kAtUpper : ColStatus::kAtLower;
      x_[q] = value_at_status(q);
      ++total_iterations_;
      continue;
    }
    if (tmax == kInf) return Outcome::kUnbounded;
    int r = -1;
    double r_mag = 0;
    double r_ratio = 0;
    for (int pos = 0; pos < m_; ++pos) {
      const double a = alpha_col[pos];
      if (std::abs(a) < kPivotTolerance) continue;
      const int j = head_[pos];
      const double rate = -dir * a;
      double ratio;
      if (rate < 0 && finite(lower_[j])) ratio = (x_[j] - lower_[j]) / -rate;
      else if (rate > 0 && finite(upper_[j])) ratio = (upper_[j] - x_[j]) / rate;
      else continue;
      if (ratio > tmax) continue;
      const bool better = bland_ ? (r < 0 || j < head_[r]) : std::abs(a) > r_mag;
      if (better) {
        r = pos;
        r_mag = std::abs(a);
        r_ratio = ratio;
      }
    }
    if (r < 0) return Outcome::kUnbounded;
    const double t = std::max(0.0, r_ratio);
    const int p = head_[r];
    const bool to_lower = -dir * alpha_col[r] < 0;
    const double step = dir * t;
    for (int pos = 0; pos < m_; ++pos) {
      if (alpha_col[pos] != 0) x_[head_[pos]] -= step * alpha_col[pos];
    }
    x_[q] += step;
    x_[p] = to_lower ? lower_[p] : upper_[p];
    replace_basic(r, q, alpha_col);
    status_[p] = to_lower ? ColStatus::kAtLower : ColStatus::kAtUpper;

    if (t <= 1e-12) {
      if (++degenerate_streak_ > kDegenerateStreakForBland) bland_ = true;
    } else {
      degenerate_streak_ = 0;
      bland_ = false;
    }
    if (factor_->num_updates() >= kRefactorInterval) {
      if (!refactor()) return Outcome::kRestart;
      compute_primal();
    }
  }
}

LpStatus SimplexSolver::solve(std::chrono::steady_clock::time_point deadline) {
  deadline_ = deadline;
  if (finite(options_.time_limit_s)) {
    const auto own = std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                         std::chrono::duration<double>(options_.time_limit_s));
    deadline_ = std::min(deadline_, own);
  }
  iteration_budget_ = total_iterations_ +
                      (options_.iteration_limit >= 0
                           ? options_.iteration_limit
                           : 200LL * (n_ + m_) + 10000);
  const double ptol = options_.primal_tolerance;
  int restarts = 0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (!factor_valid_ && !refactor()) {
      slack_basis();
      if (!refactor()) throw MilpError("simplex: cannot factor the activity basis");
      ++restarts;
    }
    compute_primal();
    compute_duals(Phase::kCosts);
    flip_boxed_to_dual_feasible();

    Outcome out;
    if (dual_feasible(Phase::kCosts)) {
      perturb_costs();
      compute_duals(Phase::kCosts);
      out = dual_simplex(Phase::kCosts);
      clear_perturbation();
      if (out == Outcome::kOptimal) {
        compute_duals(Phase::kCosts);
        if (!dual_feasible(Phase::kCosts)) out = primal_simplex();
      }
    } else {
      out = Outcome::kOptimal;
      if (max_primal_infeasibility() > ptol) {
        perturb_costs();
        compute_duals(Phase::kZeroCosts);
        out = dual_simplex(Phase::kZeroCosts);
        clear_perturbation();
      }
      if (out == Outcome::kOptimal) out = primal_simplex();
    }

    switch (out) {
      case Outcome::kLimit:
        return total_iterations_ >= iteration_budget_ ? LpStatus::kIterationLimit
                                                       : LpStatus::kTimeLimit;
      case Outcome::kRestart:
        factor_valid_ = false;
        continue;
      case Outcome::kInfeasible:
        return LpStatus::kInfeasible;
      case Outcome::kUnbounded:
        return LpStatus::kUnbounded;
      case Outcome::kOptimal:
        break;
    }
    // Confirm on a fresh factorization; iterate again if drift crept in.
    if (!refactor()) continue;
    compute_primal();
    compute_duals(Phase::kCosts);
    if (max_primal_infeasibility() <= ptol && dual_feasible(Phase::kCosts)) {
      return LpStatus::kOptimal;
    }
  }
  std::ostringstream msg;
  msg << "simplex: no stable optimum after repeated refactorization (" << m_
      << " rows, " << n_ << " columns, primal infeasibility "
      << max_primal_infeasibility() << ", " << restarts << " basis resets)";
  throw MilpError(msg.str());
}

double SimplexSolver::objective() const {
  double obj = 0;
  for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
  return obj;
}

std::vector<double> SimplexSolver::primal() const {
  return std::vector<double>(x_.begin(), x_.begin() + n_);
}

std::vector<double> SimplexSolver::duals() const {
  std::vector<double> y(m_);
  for (int i = 0; i < m_; ++i) y[i] = status_[n_ + i] == ColStatus::kBasic ? 0.0 : d_[n_ + i];
  return y;
}

Basis SimplexSolver::basis() const { return Basis{status_}; }

void SimplexSolver::set_basis(const Basis& basis) {
  if (static_cast<int>(basis.status.size()) != n_ + m_) {
    slack_basis();
    return;
  }
  int basic = 0;
  for (ColStatus st : basis.status) basic += st == ColStatus::kBasic;
  if (basic != m_) {
    slack_basis();
    return;
  }
  status_ = basis.status;
  basis_pos_.assign(n_ + m_, -1);
  int pos = 0;
  for (int j = 0; j < n_ + m_; ++j) {
    if (status_[j] == ColStatus::kBasic) {
      head_[pos] = j;
      basis_pos_[j] = pos++;
    } else {
      set_bounds(j < n_ ? j : j, lower_[j], upper_[j]);
    }
  }
  if (!refactor()) slack_basis();
}

// ---------------------------------------------------------------------------

LpSolution solve_lp(const MilpModel& model, const LpOptions& options) {
  SimplexSolver solver(model, options);
  LpSolution out;
  out.status = solver.solve();
  out.iterations = solver.iterations();
  if (out.status == LpStatus::kOptimal) {
    out.values = solver.primal();
    out.duals = solver.duals();
    out.objective = model.objective(out.values);
  }
  return out;
}

}  // namespace lcmin::milp
