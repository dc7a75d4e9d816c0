#include <gtest/gtest.h>

#include "lcmin/lc_problems.h"
#include "lcmin/oracle.h"
#include "support/networks.h"

namespace lcmin::oracle {
namespace {

using testing::ports;

Network diamond(double capacity) {
  return Network({"s", "a", "b", "t"},
                 {ArcPair{0, 1, ports(1, capacity)}, ArcPair{1, 3, ports(1, capacity)},
                  ArcPair{0, 2, ports(1, capacity)}, ArcPair{2, 3, ports(1, capacity)}});
}

int milp_objective(const Network& net, const TrafficMatrix& tm, double theta, int k) {
  const auto m = build_mcf_lc(net, tm, {theta, k});
  milp::MilpBudget budget;
  budget.rounding = port_rounding(m.model, m.ports, net, k);
  const auto sol = milp::solve_milp(m.model, budget);
  if (sol.status == milp::MilpStatus::kInfeasible) return -1;
  EXPECT_EQ(sol.status, milp::MilpStatus::kOptimal);
  return static_cast<int>(std::lround(sol.objective));
}

TEST(McfFeasible, ZeroDemandsAlwaysFit) {
  const Network net = diamond(10);
  EXPECT_TRUE(mcf_feasible(net, no_ports_active(net), TrafficMatrix(4), 0.7));
}

TEST(McfFeasible, DemandAboveItsOnlyCutFails) {
  const Network net({"a", "b"}, {ArcPair{0, 1, ports(2, 10)}});
  TrafficMatrix tm(2);
  tm.set(0, 1, 14.5);
  EXPECT_FALSE(mcf_feasible(net, all_ports_active(net), tm, 0.7));
  tm.set(0, 1, 14);
  EXPECT_TRUE(mcf_feasible(net, all_ports_active(net), tm, 0.7));
}

TEST(McfFeasible, DiamondNeedsBothBranches) {
  const Network net = diamond(10);
  TrafficMatrix tm(4);
  tm.set(0, 3, 1.4 * 0.7 * 10);
  EXPECT_TRUE(mcf_feasible(net, all_ports_active(net), tm, 0.7));
  ActivePorts one_branch = all_ports_active(net);
  one_branch[2][0] = false;
  EXPECT_FALSE(mcf_feasible(net, one_branch, tm, 0.7));
}

TEST(BruteForce, TwoRoutersSixtyFive) {
  const Network net({"a", "b"}, {ArcPair{0, 1, ports(4, 100)}});
  TrafficMatrix tm(2);
  tm.set(0, 1, 65);
  const auto best = brute_force_lc_mcfs(net, tm, 0.7, 8);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->objective, 2);
  // The witness is maximal within its level: all four ports still need one
  // card per side.
  EXPECT_TRUE(mcf_feasible(net, best->witness, tm, 0.7));
}

TEST(BruteForce, ZeroDemandsCostNothing) {
  const Network net = testing::random_network(2, 5, 2, 2, 3, 10);
  const auto best = brute_force_lc_mcfs(net, TrafficMatrix(5), 0.7, 2);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->objective, 0);
}

TEST(BruteForce, InfeasibleEvenWithEverythingOn) {
  const Network net({"a", "b"}, {ArcPair{0, 1, ports(1, 10)}});
  TrafficMatrix tm(2);
  tm.set(0, 1, 11);
  EXPECT_FALSE(brute_force_lc_mcfs(net, tm, 1.0, 1).has_value());
}

TEST(BruteForce, HeterogeneousPortsAreEnumeratedAsSubsets) {
  const Network net({"a", "b"}, {ArcPair{0, 1, PortGroup{{50, 100}}}});
  TrafficMatrix tm(2);
  tm.set(0, 1, 60);
  const auto best = brute_force_lc_mcfs(net, tm, 0.7, 1);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->objective, 2);
  EXPECT_EQ(best->witness[0], (PortMask{false, true}));
}

TEST(BruteForce, RefusesOversizedInstances) {
  const SetCoverInstance sc = parse_set_cover("universe a b c d\na b c\nc d\nb c\n");
  const ReducedInstance r = reduce_set_cover(sc, 8);
  EXPECT_THROW(brute_force_lc_mcfs(r.network, r.demands, 1.0, 8), OracleRefusal);
}

TEST(BruteForce, SmallReductionMatchesTheSolver) {
  const SetCoverInstance sc = parse_set_cover("universe a b\na b\nb\n");
  for (int k : {1, 2}) {
    const ReducedInstance r = reduce_set_cover(sc, k);
    const auto best = brute_force_lc_mcfs(r.network, r.demands, 1.0, k, 1e9);
    ASSERT_TRUE(best.has_value());
    EXPECT_EQ(best->objective, milp_objective(r.network, r.demands, 1.0, k));
    EXPECT_EQ(recover_cover(r, best->witness).cover, std::vector<int>{0});
  }
}

TEST(BruteForce, AgreesWithTheSolverOnRandomNetworks) {
  for (std::uint32_t seed = 1; seed <= 25; ++seed) {
    const int n = 3 + static_cast<int>(seed % 3);
    const Network net = testing::random_network(seed, n, 1 + seed % 3, 3, 1 + seed % 3, 10);
    const TrafficMatrix tm = testing::random_demands(seed, n, 0.4, 8);
    const double theta = 0.7;
    const int k = 1 + static_cast<int>(seed % 4);
    const auto best = brute_force_lc_mcfs(net, tm, theta, k);
    const int solver = milp_objective(net, tm, theta, k);
    if (!best) {
      EXPECT_EQ(solver, -1) << seed;
      continue;
    }
    EXPECT_EQ(best->objective, solver) << "seed " << seed;
    EXPECT_TRUE(mcf_feasible(net, best->witness, tm, theta));
  }
}

TEST(BruteForce, MoreDemandNeverLowersTheOptimum) {
  for (std::uint32_t seed = 30; seed < 40; ++seed) {
    const Network net = testing::random_network(seed, 4, 2, 2, 2, 10);
    TrafficMatrix tm = testing::random_demands(seed, 4, 0.3, 5);
    auto previous = brute_force_lc_mcfs(net, tm, 0.7, 2);
    for (int step = 0; step < 3 && previous; ++step) {
      tm.add(step % 4, (step + 2) % 4, 2);
      const auto next = brute_force_lc_mcfs(net, tm, 0.7, 2);
      if (!next) break;
      EXPECT_GE(next->objective, previous->objective) << seed;
      previous = next;
    }
  }
}

TEST(SetCoverOracle, FourItemFamilyFamilyNeedsTwo) {
  EXPECT_EQ(brute_force_set_cover(parse_set_cover("universe a b c d\na b c\nc d\nb c\n")), 2);
}

TEST(SetCoverOracle, WholeUniverseNeedsOne) {
  EXPECT_EQ(brute_force_set_cover(parse_set_cover("a b c d\n")), 1);
}

TEST(SetCoverOracle, DisjointSingletonsNeedAll) {
  EXPECT_EQ(brute_force_set_cover(parse_set_cover("a\nb\nc\nd\ne\n")), 5);
}

TEST(SetCoverOracle, UncoverableFamilyHasNoCover) {
  EXPECT_FALSE(brute_force_set_cover(parse_set_cover("universe a b\na\n")).has_value());
}

}  // namespace
}  // namespace lcmin::oracle
