#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "lcmin/igp_routing.h"
#include "support/networks.h"

namespace lcmin {
namespace {

using testing::ports;

Network path3() {
  return Network({"u", "v", "w"}, {ArcPair{0, 1, ports(1, 100)}, ArcPair{1, 2, ports(1, 100)}});
}

Network diamond() {
  return Network({"u", "a", "b", "w"},
                 {ArcPair{0, 1, ports(1, 100)}, ArcPair{0, 2, ports(1, 100)},
                  ArcPair{1, 3, ports(1, 100)}, ArcPair{2, 3, ports(1, 100)}});
}

TEST(ShortestPathDag, PathGraph) {
  const Network net = path3();
  const SpDag dag = shortest_path_dag(net, 0);
  EXPECT_EQ(dag.dist[2], 2);
  EXPECT_TRUE(dag.member[net.link_arcs(0).first]);
  EXPECT_TRUE(dag.member[net.link_arcs(1).first]);
  EXPECT_FALSE(dag.member[net.link_arcs(0).second]);
}

TEST(ShortestPathDag, DiamondMarksAllFourArcs) {
  const Network net = diamond();
  const SpDag dag = shortest_path_dag(net, 0);
  for (LinkId l = 0; l < 4; ++l) EXPECT_TRUE(dag.member[net.link_arcs(l).first]) << l;
  EXPECT_EQ(dag.dist[3], 2);
}

TEST(ShortestPathDag, ParallelLinksOnlyCheapestIsMember) {
  ArcPair cheap{0, 1, ports(1, 100)};
  ArcPair dear{0, 1, ports(1, 100)};
  dear.weight = 2;
  const Network net({"u", "w"}, {cheap, dear});
  const SpDag dag = shortest_path_dag(net, 0);
  EXPECT_TRUE(dag.member[net.link_arcs(0).first]);
  EXPECT_FALSE(dag.member[net.link_arcs(1).first]);
}

TEST(ShortestPathDag, UnreachableIsInfinite) {
  ArcPair p{0, 1, ports(1, 1)};
  p.one_way = true;
  const Network net({"a", "b", "c"}, {p});
  const SpDag dag = shortest_path_dag(net, 1);
  EXPECT_FALSE(dag.reachable(0));
  EXPECT_FALSE(dag.reachable(2));
  EXPECT_EQ(dag.dist[1], 0);
}

TEST(ShortestPathDag, MemberArcsAreTight) {
  for (std::uint32_t seed = 1; seed <= 20; ++seed) {
    const Network net = testing::random_network(seed, 8, 6, 3, 1, 10);
    const SpDag dag = shortest_path_dag(net, 0);
    for (ArcId a = 0; a < net.num_arcs(); ++a) {
      if (!dag.member[a]) continue;
      const auto& arc = net.arc(a);
      EXPECT_EQ(dag.dist[arc.tail] + net.link(arc.link).weight, dag.dist[arc.head]);
    }
  }
}

TEST(EcmpFractions, PathGraphCarriesWholeUnit) {
  const Network net = path3();
  const auto table = compute_fraction_table<double>(net);
  EXPECT_EQ(table.fraction(0, 2, net.link_arcs(0).first), 1.0);
  EXPECT_EQ(table.fraction(0, 2, net.link_arcs(1).first), 1.0);
  EXPECT_EQ(table.unit_flow(0, 2).size(), 2u);
}

TEST(EcmpFractions, DiamondSplitsInHalf) {
  const Network net = diamond();
  const auto table = compute_fraction_table<double>(net);
  for (LinkId l = 0; l < 4; ++l) EXPECT_EQ(table.fraction(0, 3, net.link_arcs(l).first), 0.5);
}

TEST(EcmpFractions, EqualParallelArcsMatchPathEnumeration) {
  const Network net({"u", "w"}, {ArcPair{0, 1, ports(1, 100)}, ArcPair{0, 1, ports(1, 100)}});
  const auto oracle = testing::path_enumeration_fractions(net, 0, 1);
  ASSERT_EQ(oracle.size(), 2u);
  for (const auto& [a, f] : oracle) EXPECT_EQ(f, Rational(1, 2));
  const auto exact = compute_fraction_table<Rational>(net);
  for (const auto& [a, f] : oracle) EXPECT_EQ(exact.fraction(0, 1, a), f);
}

TEST(EcmpFractions, PerHopNotPerPathSplitting) {
  // u splits to a and b; a splits again to w over two arcs. Per-hop gives
  // 1/4 on each of a's arcs, per-path would give 1/3.
  const Network net({"u", "a", "b", "w"},
                    {ArcPair{0, 1, ports(1, 1)}, ArcPair{0, 2, ports(1, 1)},
                     ArcPair{1, 3, ports(1, 1)}, ArcPair{1, 3, ports(1, 1)},
                     ArcPair{2, 3, ports(1, 1)}});
  const auto exact = compute_fraction_table<Rational>(net);
  EXPECT_EQ(exact.fraction(0, 3, net.link_arcs(2).first), Rational(1, 4));
  EXPECT_EQ(exact.fraction(0, 3, net.link_arcs(4).first), Rational(1, 2));
}

TEST(EcmpFractions, ExactMatchesPathEnumerationOnRandomGraphs) {
  int compared = 0;
  for (std::uint32_t seed = 1; seed <= 60; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const Network net = testing::random_network(seed * 31, n, n, 3, 1, 10);
    const auto exact = compute_fraction_table<Rational>(net);
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId w = 0; w < n; ++w) {
        const auto oracle = testing::path_enumeration_fractions(net, u, w);
        const auto flow = exact.unit_flow(u, w);
        ASSERT_EQ(flow.size(), oracle.size()) << "seed " << seed;
        for (const auto& s : flow) {
          ASSERT_TRUE(oracle.count(s.arc));
          EXPECT_EQ(s.fraction, oracle.at(s.arc)) << "seed " << seed << " " << u << "->" << w;
        }
        ++compared;
      }
    }
  }
  EXPECT_GT(compared, 500);
}

TEST(EcmpFractions, FloatingTableWithinToleranceOfExact) {
  for (std::uint32_t seed = 1; seed <= 20; ++seed) {
    const Network net = testing::random_network(seed, 12, 14, 2, 1, 10);
    const auto exact = compute_fraction_table<Rational>(net);
    const auto approx = compute_fraction_table<double>(net);
    for (VertexId u = 0; u < 12; ++u) {
      for (VertexId w = 0; w < 12; ++w) {
        const auto e = exact.unit_flow(u, w);
        const auto f = approx.unit_flow(u, w);
        ASSERT_EQ(e.size(), f.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
          EXPECT_EQ(e[i].arc, f[i].arc);
          EXPECT_NEAR(e[i].fraction.convert_to<double>(), f[i].fraction, 1e-12);
        }
      }
    }
  }
}

TEST(EcmpFractions, ConservationOnRandomGraphs) {
  for (std::uint32_t seed = 1; seed <= 30; ++seed) {
    const int n = 10;
    const Network net = testing::random_network(seed * 7, n, 12, 4, 1, 10);
    const auto table = compute_fraction_table<double>(net);
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId w = 0; w < n; ++w) {
        if (u == w) continue;
        std::vector<double> balance(n, 0.0);
        for (const auto& s : table.unit_flow(u, w)) {
          EXPECT_GE(s.fraction, 0);
          EXPECT_LE(s.fraction, 1 + 1e-12);
          balance[net.arc(s.arc).tail] -= s.fraction;
          balance[net.arc(s.arc).head] += s.fraction;
        }
        for (VertexId x = 0; x < n; ++x) {
          const double expected = x == u ? -1 : x == w ? 1 : 0;
          EXPECT_NEAR(balance[x], expected, 1e-9);
        }
      }
    }
  }
}

TEST(EcmpFractions, SingleSourceRowMatchesTable) {
  const Network net = testing::random_network(5, 9, 8, 3, 1, 10);
  const auto table = compute_fraction_table<Rational>(net);
  const auto dist = all_pairs_distances(net);
  const auto row = ecmp_fractions<Rational>(net, dist, 4);
  for (VertexId w = 0; w < 9; ++w) {
    const auto expected = table.unit_flow(4, w);
    ASSERT_EQ(row[w].size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(row[w][i].fraction, expected[i].fraction);
  }
}

TEST(GCoefficient, FirstSegmentOnly) {
  const Network net = path3();
  const auto table = compute_fraction_table<double>(net);
  TrafficMatrix tm(3);
  tm.set(0, 2, 10);
  // Route 0 -> 1 -> 2 via 1: arc 0->1 is in the first segment only.
  EXPECT_DOUBLE_EQ(g_coefficient(tm, table, 0, 2, 1, net.link_arcs(0).first), 10);
}

TEST(GCoefficient, DirectRouteSplitsOverDiamond) {
  const Network net = diamond();
  const auto table = compute_fraction_table<double>(net);
  TrafficMatrix tm(4);
  tm.set(0, 3, 10);
  const ArcId ua = net.link_arcs(0).first;
  EXPECT_DOUBLE_EQ(g_coefficient(tm, table, 0, 3, 3, ua), 5);
  EXPECT_DOUBLE_EQ(g_coefficient(tm, table, 0, 3, 1, ua), 10);
  EXPECT_DOUBLE_EQ(g_coefficient(tm, table, 0, 3, 2, ua), 0);
}

ArcPair one_way(VertexId a, VertexId b) {
  ArcPair p{a, b, ports(1, 1)};
  p.one_way = true;
  return p;
}

TEST(GCoefficient, OverlappingSegmentsAddUp) {
  // u reaches w over p->q or over r1 r2; w reaches v over p->q or over s1 s2.
  // Both segments put half a unit on p->q.
  enum { u, p, q, w, v, r1, r2, s1, s2 };
  const Network net({"u", "p", "q", "w", "v", "r1", "r2", "s1", "s2"},
                    {one_way(u, p), one_way(p, q), one_way(q, w), one_way(u, r1),
                     one_way(r1, r2), one_way(r2, w), one_way(w, p), one_way(q, v),
                     one_way(w, s1), one_way(s1, s2), one_way(s2, v)});
  const auto table = compute_fraction_table<double>(net);
  const ArcId pq = net.link_arcs(1).first;
  EXPECT_DOUBLE_EQ(table.fraction(u, w, pq), 0.5);
  EXPECT_DOUBLE_EQ(table.fraction(w, v, pq), 0.5);
  TrafficMatrix tm(9);
  tm.set(u, v, 10);
  EXPECT_DOUBLE_EQ(g_coefficient(tm, table, u, v, w, pq), 10);
}

TEST(GCoefficient, OneSegmentCase) {
  const Network net = path3();
  const auto table = compute_fraction_table<double>(net);
  TrafficMatrix tm(3);
  tm.set(0, 1, 7);
  EXPECT_DOUBLE_EQ(g_coefficient(tm, table, 0, 1, 0, net.link_arcs(0).first), 7);
  EXPECT_DOUBLE_EQ(g_coefficient(tm, table, 0, 1, 1, net.link_arcs(0).first), 7);
}

TEST(GCoefficient, UnreachableSegmentThrows) {
  ArcPair p{0, 1, ports(1, 1)};
  p.one_way = true;
  ArcPair q{1, 2, ports(1, 1)};
  q.one_way = true;
  const Network net({"a", "b", "c"}, {p, q});
  const auto table = compute_fraction_table<double>(net);
  TrafficMatrix tm(3);
  tm.set(0, 1, 1);
  EXPECT_FALSE(segment_route_exists(table, 0, 1, 2));
  EXPECT_TRUE(segment_route_exists(table, 0, 2, 1));
  EXPECT_THROW(g_coefficient(tm, table, 0, 1, 2, 0), RoutingError);
}

TEST(PolicyArcLoads, SingleViaOnPath) {
  const Network net = path3();
  const auto table = compute_fraction_table<double>(net);
  TrafficMatrix tm(3);
  tm.set(0, 2, 40);
  const ArcLoads loads = policy_arc_loads(net, tm, {{0, 2, 1, 1.0}}, table);
  EXPECT_DOUBLE_EQ(loads[net.link_arcs(0).first], 40);
  EXPECT_DOUBLE_EQ(loads[net.link_arcs(1).first], 40);
  EXPECT_DOUBLE_EQ(loads[net.link_arcs(0).second], 0);
}

TEST(PolicyArcLoads, EvenSplitOverDisjointIntermediates) {
  // Ring u-a-w-b-u with a heavier u-a so the direct route prefers b; routing
  // via a and via b halves the demand on each side.
  ArcPair ua{0, 1, ports(1, 1)};
  ArcPair aw{1, 2, ports(1, 1)};
  ArcPair wb{2, 3, ports(1, 1)};
  ArcPair bu{3, 0, ports(1, 1)};
  ua.weight = 2;
  const Network net({"u", "a", "w", "b"}, {ua, aw, wb, bu});
  const auto table = compute_fraction_table<double>(net);
  TrafficMatrix tm(4);
  tm.set(0, 2, 30);
  const ArcLoads loads = policy_arc_loads(net, tm, {{0, 2, 1, 0.5}, {0, 2, 3, 0.5}}, table);
  // Manual expansion: via a: u->a, a->w get 15; via b: u->b (reverse of
  // b-u), b->w (reverse of w-b) get 15.
  EXPECT_DOUBLE_EQ(loads[net.link_arcs(0).first], 15);
  EXPECT_DOUBLE_EQ(loads[net.link_arcs(1).first], 15);
  EXPECT_DOUBLE_EQ(loads[net.link_arcs(3).second], 15);
  EXPECT_DOUBLE_EQ(loads[net.link_arcs(2).second], 15);
  double total = 0;
  for (double l : loads) total += l;
  EXPECT_DOUBLE_EQ(total, 60);
}

TEST(PolicyArcLoads, ZeroTraffic) {
  const Network net = diamond();
  const auto table = compute_fraction_table<double>(net);
  const ArcLoads loads = policy_arc_loads(net, TrafficMatrix(4), {}, table);
  for (double l : loads) EXPECT_EQ(l, 0);
}

TEST(PolicyArcLoads, FractionsMustSumToOne) {
  const Network net = path3();
  const auto table = compute_fraction_table<double>(net);
  TrafficMatrix tm(3);
  tm.set(0, 2, 40);
  EXPECT_THROW(policy_arc_loads(net, tm, {{0, 2, 1, 0.6}}, table), RoutingError);
  EXPECT_THROW(policy_arc_loads(net, tm, {}, table), RoutingError);
}

TEST(PolicyArcLoads, IdentityPolicyEqualsShortestPathLoads) {
  for (std::uint32_t seed = 1; seed <= 20; ++seed) {
    const Network net = testing::random_network(seed, 9, 7, 3, 1, 10);
    const TrafficMatrix tm = testing::random_demands(seed, 9, 0.5, 50);
    const auto table = compute_fraction_table<double>(net);
    const ArcLoads a = policy_arc_loads(net, tm, shortest_path_policy(tm), table);
    const ArcLoads b = shortest_path_loads(net, tm, table);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
  }
}

TEST(FractionCache, RoundTripAndFingerprintCheck) {
  const Network net = testing::random_network(3, 7, 5, 3, 1, 10);
  const auto table = compute_fraction_table<double>(net);
  const auto path = std::filesystem::temp_directory_path() / "lcmin_fraction_cache_test.txt";
  write_fraction_cache(path.string(), net, table);
  FractionTable loaded;
  ASSERT_TRUE(read_fraction_cache(path.string(), net, loaded));
  for (VertexId u = 0; u < 7; ++u) {
    for (VertexId w = 0; w < 7; ++w) {
      EXPECT_EQ(loaded.distance(u, w), table.distance(u, w));
      const auto a = loaded.unit_flow(u, w);
      const auto b = table.unit_flow(u, w);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].fraction, b[i].fraction);
    }
  }
  const Network other = testing::random_network(4, 7, 5, 3, 1, 10);
  EXPECT_FALSE(read_fraction_cache(path.string(), other, loaded));
  std::filesystem::remove(path);
  EXPECT_FALSE(read_fraction_cache(path.string(), net, loaded));
}

}  // namespace
}  // namespace lcmin
