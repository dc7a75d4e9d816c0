#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>

#include "lcmin/milp.h"
#include "lcmin/simplex.h"

namespace lcmin::milp {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kClosedGap = 1e-6;

struct Node {
  double bound = -kInf;
  int depth = 0;
  long long id = 0;
  long long parent = -1;
  std::vector<double> lower;  // integer variables only
  std::vector<double> upper;
  std::shared_ptr<const Basis> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const MilpModel& model, const MilpBudget& budget)
      : model_(model), budget_(budget), lp_(model) {
    for (VarId j = 0; j < model.num_vars(); ++j) {
      if (model.var(j).is_integer()) int_vars_.push_back(j);
    }
    integral_objective_ = true;
    for (VarId j = 0; j < model.num_vars(); ++j) {
      const double c = model.var(j).cost;
      if (c == 0) continue;
      if (!model.var(j).is_integer() || c != std::round(c)) {
        integral_objective_ = false;
        break;
      }
    }
  }

  MilpSolution run();

 private:
  // Lowest objective a node with LP bound `bound` could still reach.
  double effective_bound(double bound) const {
    if (integral_objective_ && std::isfinite(bound)) return std::ceil(bound - kClosedGap);
    return bound;
  }
  bool can_prune(double bound) const {
    if (!std::isfinite(incumbent_)) return false;
    const double b = effective_bound(bound);
    if (integral_objective_) return b >= incumbent_ - 0.5;
    return b >= incumbent_ - kClosedGap * std::max(1.0, std::abs(incumbent_));
  }
  bool gap_closed(double bound, double tolerance) const {
    if (!std::isfinite(incumbent_)) return false;
    return incumbent_ - effective_bound(bound) <=
           tolerance * std::max(1.0, std::abs(incumbent_));
  }
  void offer(std::vector<double> x);
  int branching_variable(const std::vector<double>& x) const;

  const MilpModel& model_;
  const MilpBudget& budget_;
  SimplexSolver lp_;
  std::vector<VarId> int_vars_;
  bool integral_objective_ = false;
  double incumbent_ = kInf;
  std::vector<double> best_;
  long long nodes_ = 0;
};

void BranchAndBound::offer(std::vector<double> x) {
  std::vector<double> rounded = x;
  for (VarId j : int_vars_) rounded[j] = std::round(rounded[j]);
  if (model_.max_violation(rounded) <= budget_.feasibility_tolerance) {
    x = std::move(rounded);
  } else if (model_.max_violation(x) > budget_.feasibility_tolerance ||
             model_.max_integrality_violation(x) > budget_.integrality_tolerance) {
    return;
  }
  const double obj = model_.objective(x);
  if (obj >= incumbent_) return;
  incumbent_ = obj;
  best_ = std::move(x);
  if (budget_.on_incumbent) budget_.on_incumbent(incumbent_, -kInf, nodes_);
}

int BranchAndBound::branching_variable(const std::vector<double>& x) const {
  int best = -1;
  double best_dist = budget_.integrality_tolerance;
  for (VarId j : int_vars_) {
    const double frac = x[j] - std::floor(x[j]);
    const double dist = std::min(frac, 1 - frac);
    if (dist > best_dist + 1e-12) {
      best = j;
      best_dist = dist;
    }
  }
  return best;
}

MilpSolution BranchAndBound::run() {
  const auto start = Clock::now();
  const auto deadline =
      std::isfinite(budget_.time_limit_s)
          ? start + std::chrono::duration_cast<Clock::duration>(
                        std::chrono::duration<double>(budget_.time_limit_s))
          : Clock::time_point::max();

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  Node root;
  for (VarId j : int_vars_) {
    root.lower.push_back(model_.var(j).lower);
    root.upper.push_back(model_.var(j).upper);
  }
  open.push(std::move(root));
  long long next_id = 1;
  long long last_solved = -1;
  bool stopped = false;
  double interrupted_bound = kInf;

  while (!open.empty()) {
    if (Clock::now() >= deadline ||
        (budget_.node_limit >= 0 && nodes_ >= budget_.node_limit)) {
      stopped = true;
      break;
    }
    if (budget_.relative_gap > 0 && gap_closed(open.top().bound, budget_.relative_gap)) {
      stopped = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (can_prune(node.bound)) continue;

    for (std::size_t k = 0; k < int_vars_.size(); ++k) {
      const VarId j = int_vars_[k];
      if (lp_.lower(j) != node.lower[k] || lp_.upper(j) != node.upper[k]) {
        lp_.set_bounds(j, node.lower[k], node.upper[k]);
      }
    }
    if (node.basis && node.parent != last_solved) lp_.set_basis(*node.basis);

    const LpStatus status = lp_.solve(deadline);
    ++nodes_;
    last_solved = node.id;
    if (status == LpStatus::kTimeLimit) {
      interrupted_bound = node.bound;
      stopped = true;
      break;
    }
    if (status == LpStatus::kIterationLimit) {
      throw MilpError("LP relaxation stalled in model " + model_.name());
    }
    if (status == LpStatus::kInfeasible) continue;
    if (status == LpStatus::kUnbounded) {
      if (node.depth == 0) throw MilpError("LP relaxation of " + model_.name() + " is unbounded");
      continue;
    }

    const double obj = std::max(lp_.objective(), node.bound);
    if (can_prune(obj)) continue;
    std::vector<double> x = lp_.primal();
    const int branch = branching_variable(x);
    if (branch < 0) {
      offer(std::move(x));
      continue;
    }
    if (budget_.rounding) {
      if (auto candidate = budget_.rounding(x)) {
        if (static_cast<int>(candidate->size()) == model_.num_vars()) {
          offer(std::move(*candidate));
        }
      }
      if (can_prune(obj)) continue;
    }

    const auto basis = std::make_shared<const Basis>(lp_.basis());
    const auto k = static_cast<std::size_t>(
        std::find(int_vars_.begin(), int_vars_.end(), branch) - int_vars_.begin());
    Node down{obj, node.depth + 1, next_id++, node.id, node.lower, node.upper, basis};
    down.upper[k] = std::floor(x[branch]);
    Node up{obj, node.depth + 1, next_id++, node.id, std::move(node.lower),
            std::move(node.upper), basis};
    up.lower[k] = std::ceil(x[branch]);
    open.push(std::move(down));
    open.push(std::move(up));
  }

  MilpSolution out;
  out.nodes = nodes_;
  out.lp_iterations = lp_.iterations();
  double bound = stopped ? interrupted_bound : kInf;
  if (stopped && !open.empty()) bound = std::min(bound, open.top().bound);
  bound = std::min(effective_bound(bound), incumbent_);
  out.best_bound = bound;
  if (std::isfinite(incumbent_)) {
    out.values = std::move(best_);
    out.objective = incumbent_;
    out.status = !stopped || gap_closed(bound, kClosedGap) ? MilpStatus::kOptimal
                                                           : MilpStatus::kFeasible;
  } else {
    out.status = stopped ? MilpStatus::kTimeLimit : MilpStatus::kInfeasible;
    if (!stopped) out.best_bound = kInf;
  }
  out.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace

MilpSolution solve_milp(const MilpModel& model, const MilpBudget& budget) {
  model.require_valid();
  BranchAndBound bnb(model, budget);
  return bnb.run();
}

}  // namespace lcmin::milp
