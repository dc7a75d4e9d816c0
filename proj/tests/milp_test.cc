#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <unistd.h>

#include "lcmin/milp.h"
#include "lcmin/simplex.h"
#include "support/oracles.h"

namespace lcmin::milp {
namespace {

TEST(SolveLp, LowerBoundedVariable) {
  MilpModel m;
  const VarId x = m.add_variable("x", VarKind::kContinuous, -kInf, kInf, 1);
  m.add_constraint("atleast", {{x, 1}}, RowSense::kGreaterEqual, 3);
  const LpSolution s = solve_lp(m);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.values[x], 3, 1e-9);
  EXPECT_NEAR(s.objective, 3, 1e-9);
}

TEST(SolveLp, ContradictoryBoundsAreInfeasible) {
  MilpModel m;
  const VarId x = m.add_variable("x", VarKind::kContinuous, 0, kInf, 0);
  m.add_constraint("neg", {{x, 1}}, RowSense::kLessEqual, -1);
  EXPECT_EQ(solve_lp(m).status, LpStatus::kInfeasible);
}

TEST(SolveLp, UnboundedIsDetected) {
  MilpModel m;
  const VarId x = m.add_variable("x", VarKind::kContinuous, 0, kInf, -1);
  const VarId y = m.add_variable("y", VarKind::kContinuous, 0, kInf, 0);
  m.add_constraint("r", {{x, 1}, {y, -1}}, RowSense::kLessEqual, 2);
  EXPECT_EQ(solve_lp(m).status, LpStatus::kUnbounded);
}

// Two sources (supply 3 and 4) feed one sink of demand 5; costs 2 and 1.
TEST(SolveLp, TwoVariableTransportMatchesVertexEnumeration) {
  MilpModel m("transport");
  const VarId a = m.add_variable("a", VarKind::kContinuous, 0, 3, 2);
  const VarId b = m.add_variable("b", VarKind::kContinuous, 0, 4, 1);
  m.add_constraint("sink", {{a, 1}, {b, 1}}, RowSense::kEqual, 5);
  const auto oracle = testing::vertex_enumeration_lp(m);
  ASSERT_TRUE(oracle.has_value());
  EXPECT_DOUBLE_EQ(*oracle, 6.0);
  const LpSolution s = solve_lp(m);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, *oracle, 1e-9);
  EXPECT_NEAR(s.values[a], 1, 1e-9);
  EXPECT_NEAR(s.values[b], 4, 1e-9);
}

TEST(SolveLp, DualsCertifyOptimality) {
  // min -x - 2y s.t. x + y <= 4, x + 3y <= 6, x, y >= 0: optimum at (3, 1).
  MilpModel m;
  const VarId x = m.add_variable("x", VarKind::kContinuous, 0, kInf, -1);
  const VarId y = m.add_variable("y", VarKind::kContinuous, 0, kInf, -2);
  m.add_constraint("r0", {{x, 1}, {y, 1}}, RowSense::kLessEqual, 4);
  m.add_constraint("r1", {{x, 1}, {y, 3}}, RowSense::kLessEqual, 6);
  const LpSolution s = solve_lp(m);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -5, 1e-9);
  ASSERT_EQ(s.duals.size(), 2u);
  // b'y equals the primal objective.
  EXPECT_NEAR(4 * s.duals[0] + 6 * s.duals[1], -5, 1e-9);
}

TEST(SolveLp, RandomBoxedModelsMatchVertexEnumeration) {
  for (std::uint32_t seed = 1; seed <= 300; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const MilpModel m = testing::random_boxed_model(seed, n, 2 + seed % 3, false);
    const auto oracle = testing::vertex_enumeration_lp(m);
    const LpSolution s = solve_lp(m);
    if (!oracle) {
      EXPECT_EQ(s.status, LpStatus::kInfeasible) << "seed " << seed;
      continue;
    }
    ASSERT_EQ(s.status, LpStatus::kOptimal) << "seed " << seed;
    EXPECT_NEAR(s.objective, *oracle, 1e-7 * std::max(1.0, std::abs(*oracle))) << "seed " << seed;
    EXPECT_LE(m.max_violation(s.values), 1e-7) << "seed " << seed;
  }
}

TEST(SimplexSolver, WarmStartAfterBoundChange) {
  MilpModel m;
  const VarId x = m.add_variable("x", VarKind::kContinuous, 0, 10, -1);
  const VarId y = m.add_variable("y", VarKind::kContinuous, 0, 10, -1);
  m.add_constraint("r", {{x, 1}, {y, 2}}, RowSense::kLessEqual, 8);
  SimplexSolver lp(m);
  ASSERT_EQ(lp.solve(), LpStatus::kOptimal);
  EXPECT_NEAR(lp.objective(), -8, 1e-9);
  lp.set_bounds(x, 0, 2);
  ASSERT_EQ(lp.solve(), LpStatus::kOptimal);
  EXPECT_NEAR(lp.objective(), -5, 1e-9);
  lp.set_bounds(y, 4, 10);
  lp.set_bounds(x, 1, 2);
  EXPECT_EQ(lp.solve(), LpStatus::kInfeasible);
  lp.set_bounds(y, 0, 10);
  ASSERT_EQ(lp.solve(), LpStatus::kOptimal);
  EXPECT_NEAR(lp.objective(), -5, 1e-9);
}

TEST(SolveMilp, ThreeItemKnapsackMatchesSubsetEnumeration) {
  const double value[] = {6, 10, 12};
  const double weight[] = {1, 2, 3};
  const double cap = 5;
  double best = 0;
  for (int mask = 0; mask < 8; ++mask) {
    double v = 0, w = 0;
    for (int i = 0; i < 3; ++i) {
      if (mask >> i & 1) {
        v += value[i];
        w += weight[i];
      }
    }
    if (w <= cap) best = std::max(best, v);
  }
  EXPECT_EQ(best, 22);

  MilpModel m("knapsack");
  std::vector<Term> row;
  for (int i = 0; i < 3; ++i) {
    const VarId v = m.add_variable("take" + std::to_string(i), VarKind::kBinary, 0, 1, -value[i]);
    row.push_back({v, weight[i]});
  }
  m.add_constraint("capacity", row, RowSense::kLessEqual, cap);
  const MilpSolution s = solve_milp(m);
  ASSERT_EQ(s.status, MilpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -best, 1e-9);
  EXPECT_LE(m.max_violation(s.values), 1e-6);
  EXPECT_LE(m.max_integrality_violation(s.values), 1e-6);
}

TEST(SolveMilp, IntegralFlowMatchesRelaxation) {
  // Two-path flow of 5 units from s to t, integer flows, conservation only.
  MilpModel m;
  const VarId a = m.add_variable("sa", VarKind::kInteger, 0, 3, 1);
  const VarId b = m.add_variable("sb", VarKind::kInteger, 0, 4, 2);
  const VarId c = m.add_variable("at", VarKind::kInteger, 0, 10, 1);
  const VarId d = m.add_variable("bt", VarKind::kInteger, 0, 10, 1);
  m.add_constraint("s", {{a, 1}, {b, 1}}, RowSense::kEqual, 5);
  m.add_constraint("a", {{a, 1}, {c, -1}}, RowSense::kEqual, 0);
  m.add_constraint("b", {{b, 1}, {d, -1}}, RowSense::kEqual, 0);
  const LpSolution relaxed = solve_lp(m);
  const MilpSolution s = solve_milp(m);
  ASSERT_EQ(relaxed.status, LpStatus::kOptimal);
  ASSERT_EQ(s.status, MilpStatus::kOptimal);
  EXPECT_NEAR(s.objective, relaxed.objective, 1e-9);
  EXPECT_EQ(s.nodes, 1);
}

TEST(SolveMilp, InfeasibleBinaries) {
  MilpModel m;
  const VarId x1 = m.add_variable("x1", VarKind::kBinary, 0, 1, 1);
  const VarId x2 = m.add_variable("x2", VarKind::kBinary, 0, 1, 1);
  m.add_constraint("three", {{x1, 1}, {x2, 1}}, RowSense::kGreaterEqual, 3);
  const MilpSolution s = solve_milp(m);
  EXPECT_EQ(s.status, MilpStatus::kInfeasible);
  EXPECT_TRUE(s.values.empty());
}

TEST(SolveMilp, FractionalRelaxationNeedsBranching) {
  // max x + y s.t. 2x + 2y <= 3 over binaries: LP gives 1.5, MILP 1.
  MilpModel m;
  const VarId x = m.add_variable("x", VarKind::kBinary, 0, 1, -1);
  const VarId y = m.add_variable("y", VarKind::kBinary, 0, 1, -1);
  m.add_constraint("r", {{x, 2}, {y, 2}}, RowSense::kLessEqual, 3);
  const MilpSolution s = solve_milp(m);
  ASSERT_EQ(s.status, MilpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -1, 1e-9);
  EXPECT_NEAR(s.best_bound, -1, 1e-9);
  EXPECT_GT(s.nodes, 1);
}

TEST(SolveMilp, NodeLimitWithoutIncumbentReportsTimeLimit) {
  MilpModel m;
  const VarId x = m.add_variable("x", VarKind::kInteger, 0, 10, -1);
  const VarId y = m.add_variable("y", VarKind::kInteger, 0, 10, -1);
  m.add_constraint("r", {{x, 2}, {y, 2}}, RowSense::kLessEqual, 7);
  MilpBudget budget;
  budget.node_limit = 1;
  const MilpSolution s = solve_milp(m, budget);
  EXPECT_EQ(s.status, MilpStatus::kTimeLimit);
  EXPECT_TRUE(s.values.empty());
  EXPECT_FALSE(s.has_solution());
}

TEST(SolveMilp, RoundingHeuristicSuppliesIncumbent) {
  MilpModel m;
  const VarId x = m.add_variable("x", VarKind::kInteger, 0, 10, 1);
  const VarId y = m.add_variable("y", VarKind::kInteger, 0, 10, 1);
  m.add_constraint("r", {{x, 2}, {y, 2}}, RowSense::kGreaterEqual, 7);
  MilpBudget budget;
  int calls = 0;
  budget.rounding = [&](std::span<const double> lp) -> std::optional<std::vector<double>> {
    ++calls;
    return std::vector<double>{std::ceil(lp[0] - 1e-9), std::ceil(lp[1] - 1e-9)};
  };
  budget.node_limit = 1;
  const MilpSolution s = solve_milp(m, budget);
  EXPECT_GE(calls, 1);
  ASSERT_TRUE(s.has_solution());
  EXPECT_NEAR(s.objective, 4, 1e-9);
  // Integral objective: the bound 3.5 rounds up to 4, which closes the gap.
  EXPECT_EQ(s.status, MilpStatus::kOptimal);
}

TEST(SolveMilp, RandomModelsMatchExhaustiveEnumeration) {
  int compared = 0;
  for (std::uint32_t seed = 1; seed <= 200; ++seed) {
    const MilpModel m = testing::random_boxed_model(seed * 7919, 4 + seed % 3, 2 + seed % 3, true);
    ASSERT_LE(m.num_integer_vars(), 12);
    const auto oracle = testing::exhaustive_milp(m);
    const MilpSolution s = solve_milp(m);
    if (!oracle) {
      EXPECT_EQ(s.status, MilpStatus::kInfeasible) << "seed " << seed;
      continue;
    }
    ++compared;
    ASSERT_EQ(s.status, MilpStatus::kOptimal) << "seed " << seed;
    EXPECT_NEAR(s.objective, *oracle, 1e-6 * std::max(1.0, std::abs(*oracle))) << "seed " << seed;
    EXPECT_LE(m.max_violation(s.values), 1e-6);
    EXPECT_LE(m.max_integrality_violation(s.values), 1e-6);
    EXPECT_LE(s.best_bound, s.objective + 1e-9);
  }
  EXPECT_GT(compared, 50);
}

TEST(SolveMilp, PureIntegerModelsWithTwelveIntegers) {
  for (std::uint32_t seed = 1; seed <= 30; ++seed) {
    const MilpModel m = testing::random_boxed_model(seed * 104729, 12, 3, false);
    MilpModel ints("ints");
    for (const auto& v : m.vars()) {
      const double lo = std::max(v.lower, -1.0);
      ints.add_variable(v.name, VarKind::kInteger, lo, lo + 1, v.cost);
    }
    for (const auto& r : m.rows()) ints.add_constraint(r.name, r.terms, r.sense, r.rhs);
    const auto oracle = testing::exhaustive_milp(ints);
    const MilpSolution s = solve_milp(ints);
    if (!oracle) {
      EXPECT_EQ(s.status, MilpStatus::kInfeasible) << "seed " << seed;
      continue;
    }
    ASSERT_EQ(s.status, MilpStatus::kOptimal) << "seed " << seed;
    EXPECT_NEAR(s.objective, *oracle, 1e-6) << "seed " << seed;
  }
}

TEST(SolveMilp, DeterministicAcrossRuns) {
  const MilpModel m = testing::random_boxed_model(4242, 6, 4, true);
  const MilpSolution a = solve_milp(m);
  const MilpSolution b = solve_milp(m);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.nodes, b.nodes);
  EXPECT_EQ(a.values, b.values);
}

TEST(MilpModel, ValidateReportsStructuralProblems) {
  MilpModel m;
  m.add_variable("x", VarKind::kContinuous, 2, 1);
  m.add_constraint("bad", {{5, 1.0}}, RowSense::kLessEqual, 0);
  EXPECT_EQ(m.validate().size(), 2u);
  EXPECT_THROW(m.require_valid(), MilpError);
  EXPECT_THROW(solve_milp(m), MilpError);
}

TEST(MilpModel, BinaryBoundsAreClamped) {
  MilpModel m;
  const VarId b = m.add_variable("b", VarKind::kBinary, -3, 7);
  EXPECT_EQ(m.var(b).lower, 0);
  EXPECT_EQ(m.var(b).upper, 1);
}

TEST(ExportLp, OneVariableModelHasAllSections) {
  MilpModel m("tiny");
  m.add_variable("x", VarKind::kContinuous, 0, kInf, 1);
  const std::string text = export_lp_text(m);
  for (const char* section : {"Minimize", "Subject To", "Bounds", "Generals", "Binaries", "End"}) {
    EXPECT_NE(text.find(section), std::string::npos) << section;
  }
}

TEST(ExportLp, BinaryListedUnderBinaries) {
  MilpModel m;
  m.add_variable("on_port", VarKind::kBinary, 0, 1, 1);
  m.add_variable("count", VarKind::kInteger, 0, 4, 1);
  const std::string text = export_lp_text(m);
  const auto bin = text.find("Binaries");
  const auto gen = text.find("Generals");
  ASSERT_NE(bin, std::string::npos);
  EXPECT_GT(text.find("on_port", bin), bin);
  EXPECT_GT(text.find("count", gen), gen);
  EXPECT_LT(text.find("count", gen), bin);
}

TEST(ExportLp, NameCollisionThrows) {
  MilpModel m;
  m.add_variable("a b", VarKind::kContinuous, 0, 1);
  m.add_variable("a_b", VarKind::kContinuous, 0, 1);
  EXPECT_THROW(export_lp_text(m), MilpError);
}

TEST(ExportLp, SafeNames) {
  EXPECT_EQ(lp_safe_name("f[0,1]"), "f_0,1_");
  EXPECT_EQ(lp_safe_name("1x"), "_1x");
  EXPECT_EQ(lp_safe_name("e5"), "_e5");
  EXPECT_EQ(lp_safe_name(std::string(400, 'a')).size(), 255u);
}

TEST(SolutionText, RoundTrip) {
  MilpModel m;
  m.add_variable("x", VarKind::kContinuous, 0, 10);
  m.add_variable("y[1]", VarKind::kInteger, 0, 10);
  const std::vector<double> values = {2.5, 7};
  const std::string text = write_solution_text(m, values);
  EXPECT_EQ(read_solution_text(m, text), values);
  EXPECT_EQ(read_solution_text(m, "# comment\n\ny[1] 3\n"), (std::vector<double>{0, 3}));
  EXPECT_THROW(read_solution_text(m, "z 1\n"), MilpError);
  EXPECT_THROW(read_solution_text(m, "x one\n"), MilpError);
}

MilpModel small_knapsack() {
  MilpModel m("knapsack");
  const VarId a = m.add_variable("take0", VarKind::kBinary, 0, 1, -6);
  const VarId b = m.add_variable("take1", VarKind::kBinary, 0, 1, -10);
  const VarId c = m.add_variable("take2", VarKind::kBinary, 0, 1, -12);
  m.add_constraint("capacity", {{a, 1}, {b, 2}, {c, 3}}, RowSense::kLessEqual, 5);
  return m;
}

std::string scratch_dir(const std::string& tag) {
  return (std::filesystem::temp_directory_path() /
          ("lcmin_" + tag + "_" + std::to_string(::getpid())))
      .string();
}

TEST(SolverInterface, InternalSolverMatchesSolveMilp) {
  BranchAndBoundSolver solver;
  const MilpSolution s = solver.solve(small_knapsack(), {});
  EXPECT_EQ(s.status, MilpStatus::kOptimal);
  EXPECT_DOUBLE_EQ(s.objective, -22);
}

TEST(SolverInterface, LpFileSolverReadsDeclaredOptimum) {
  const std::string dir = scratch_dir("lpfile_opt");
  LpFileSolver solver("grep -q Binaries {lp} && printf '# status optimal\\ntake1 1\\ntake2 1\\n' > {sol}", dir);
  const MilpSolution s = solver.solve(small_knapsack(), {});
  EXPECT_EQ(s.status, MilpStatus::kOptimal);
  EXPECT_DOUBLE_EQ(s.objective, -22);
  EXPECT_DOUBLE_EQ(s.best_bound, -22);
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(dir) / "knapsack.lp"));
  std::filesystem::remove_all(dir);
}

TEST(SolverInterface, LpFileSolverWithoutStatusIsFeasible) {
  const std::string dir = scratch_dir("lpfile_feas");
  LpFileSolver solver("printf 'take0 1\\n' > {sol}", dir);
  const MilpSolution s = solver.solve(small_knapsack(), {});
  EXPECT_EQ(s.status, MilpStatus::kFeasible);
  EXPECT_DOUBLE_EQ(s.objective, -6);
  std::filesystem::remove_all(dir);
}

TEST(SolverInterface, LpFileSolverMissingSolutionIsInfeasible) {
  const std::string dir = scratch_dir("lpfile_none");
  LpFileSolver solver("true", dir);
  EXPECT_EQ(solver.solve(small_knapsack(), {}).status, MilpStatus::kInfeasible);
  std::filesystem::remove_all(dir);
}

TEST(SolverInterface, LpFileSolverRejectsViolatingSolution) {
  const std::string dir = scratch_dir("lpfile_bad");
  LpFileSolver solver("printf 'take0 1\\ntake1 1\\ntake2 1\\n' > {sol}", dir);
  EXPECT_THROW(solver.solve(small_knapsack(), {}), MilpError);
  LpFileSolver failing("exit 3", dir);
  EXPECT_THROW(failing.solve(small_knapsack(), {}), MilpError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace lcmin::milp
