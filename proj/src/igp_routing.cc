#include "lcmin/igp_routing.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <queue>
#include <sstream>

namespace lcmin {

namespace {

std::vector<long long> dijkstra(const Network& network, VertexId source) {
  std::vector<long long> dist(network.num_vertices(), kUnreachable);
  using Item = std::pair<long long, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0;
  heap.push({0, source});
  while (!heap.empty()) {
    const auto [d, x] = heap.top();
    heap.pop();
    if (d != dist[x]) continue;
    for (ArcId a : network.out_arcs(x)) {
      const DirectedArc& arc = network.arc(a);
      const long long nd = d + network.link(arc.link).weight;
      if (nd < dist[arc.head]) {
        dist[arc.head] = nd;
        heap.push({nd, arc.head});
      }
    }
  }
  return dist;
}

void require_positive_weights(const Network& network) {
  for (const ArcPair& p : network.links()) {
    if (p.weight <= 0) throw RoutingError("IGP weights must be positive");
  }
}

// Next-hop arcs toward w for every vertex, plus the vertices that can reach w
// ordered by decreasing distance to w (a topological order of the DAG).
template <class Scalar>
struct TowardDestination {
  std::vector<std::vector<ArcId>> next_hops;
  std::vector<VertexId> order;
  std::vector<int> position;

  TowardDestination(const Network& network,
                    const std::vector<std::vector<long long>>& dist, VertexId w) {
    const int n = network.num_vertices();
    next_hops.resize(n);
    position.assign(n, -1);
    for (VertexId x = 0; x < n; ++x) {
      if (dist[x][w] == kUnreachable || x == w) continue;
      for (ArcId a : network.out_arcs(x)) {
        const DirectedArc& arc = network.arc(a);
        const long long rest = dist[arc.head][w];
        if (rest == kUnreachable) continue;
        if (network.link(arc.link).weight + rest == dist[x][w]) next_hops[x].push_back(a);
      }
    }
    for (VertexId x = 0; x < n; ++x) {
      if (dist[x][w] != kUnreachable) order.push_back(x);
    }
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
      return dist[a][w] > dist[b][w];
    });
    for (int i = 0; i < static_cast<int>(order.size()); ++i) position[order[i]] = i;
  }

  UnitFlow<Scalar> route(const Network& network, VertexId u, VertexId w,
                         std::vector<Scalar>& inflow) const {
    UnitFlow<Scalar> out;
    if (u == w || position[u] < 0) return out;
    inflow[u] = Scalar(1);
    for (int i = position[u]; i < static_cast<int>(order.size()); ++i) {
      const VertexId x = order[i];
      if (inflow[x] == Scalar(0)) continue;
      if (x != w) {
        const auto& hops = next_hops[x];
        const Scalar share = inflow[x] / Scalar(static_cast<long long>(hops.size()));
        for (ArcId a : hops) {
          out.push_back({a, share});
          inflow[network.arc(a).head] += share;
        }
      }
      inflow[x] = Scalar(0);
    }
    std::sort(out.begin(), out.end(),
              [](const ArcShare<Scalar>& a, const ArcShare<Scalar>& b) { return a.arc < b.arc; });
    return out;
  }
};

}  // namespace

SpDag shortest_path_dag(const Network& network, VertexId source) {
  require_positive_weights(network);
  if (source < 0 || source >= network.num_vertices()) {
    throw RoutingError("source vertex out of range");
  }
  SpDag dag;
  dag.source = source;
  dag.dist = dijkstra(network, source);
  dag.member.assign(network.num_arcs(), false);
  for (ArcId a = 0; a < network.num_arcs(); ++a) {
    const DirectedArc& arc = network.arc(a);
    const long long d = dag.dist[arc.tail];
    if (d == kUnreachable) continue;
    dag.member[a] = d + network.link(arc.link).weight == dag.dist[arc.head];
  }
  return dag;
}

std::vector<std::vector<long long>> all_pairs_distances(const Network& network) {
  require_positive_weights(network);
  std::vector<std::vector<long long>> dist;
  dist.reserve(network.num_vertices());
  for (VertexId s = 0; s < network.num_vertices(); ++s) dist.push_back(dijkstra(network, s));
  return dist;
}

template <class Scalar>
std::vector<UnitFlow<Scalar>> ecmp_fractions(
    const Network& network, const std::vector<std::vector<long long>>& dist,
    VertexId u) {
  const int n = network.num_vertices();
  std::vector<UnitFlow<Scalar>> out(n);
  std::vector<Scalar> inflow(n, Scalar(0));
  for (VertexId w = 0; w < n; ++w) {
    if (w == u || dist[u][w] == kUnreachable) continue;
    const TowardDestination<Scalar> dag(network, dist, w);
    out[w] = dag.route(network, u, w, inflow);
  }
  return out;
}

template <class Scalar>
BasicFractionTable<Scalar>::BasicFractionTable(int num_vertices,
                                               std::vector<std::vector<long long>> dist,
                                               std::vector<UnitFlow<Scalar>> flows)
    : n_(num_vertices), dist_(std::move(dist)), flows_(std::move(flows)) {
  if (static_cast<int>(dist_.size()) != n_ ||
      flows_.size() != static_cast<std::size_t>(n_) * n_) {
    throw RoutingError("fraction table shape mismatch");
  }
}

template <class Scalar>
Scalar BasicFractionTable<Scalar>::fraction(VertexId u, VertexId w, ArcId a) const {
  const auto flow = unit_flow(u, w);
  const auto it = std::lower_bound(
      flow.begin(), flow.end(), a,
      [](const ArcShare<Scalar>& s, ArcId arc) { return s.arc < arc; });
  if (it == flow.end() || it->arc != a) return Scalar(0);
  return it->fraction;
}

template <class Scalar>
BasicFractionTable<Scalar> compute_fraction_table(const Network& network) {
  const int n = network.num_vertices();
  auto dist = all_pairs_distances(network);
  std::vector<UnitFlow<Scalar>> flows(static_cast<std::size_t>(n) * n);
  std::vector<Scalar> inflow(n, Scalar(0));
  for (VertexId w = 0; w < n; ++w) {
    const TowardDestination<Scalar> dag(network, dist, w);
    for (VertexId u = 0; u < n; ++u) {
      if (u == w || dist[u][w] == kUnreachable) continue;
      flows[static_cast<std::size_t>(u) * n + w] = dag.route(network, u, w, inflow);
    }
  }
  return BasicFractionTable<Scalar>(n, std::move(dist), std::move(flows));
}

template std::vector<UnitFlow<double>> ecmp_fractions<double>(
    const Network&, const std::vector<std::vector<long long>>&, VertexId);
template std::vector<UnitFlow<Rational>> ecmp_fractions<Rational>(
    const Network&, const std::vector<std::vector<long long>>&, VertexId);
template class BasicFractionTable<double>;
template class BasicFractionTable<Rational>;
template FractionTable compute_fraction_table<double>(const Network&);
template ExactFractionTable compute_fraction_table<Rational>(const Network&);

bool segment_route_exists(const FractionTable& table, VertexId u, VertexId v,
                          VertexId w) {
  if (w == u || w == v) return table.reachable(u, v);
  return table.reachable(u, w) && table.reachable(w, v);
}

UnitFlow<double> segment_route_flow(const FractionTable& table, VertexId u,
                                    VertexId v, VertexId w) {
  if (!segment_route_exists(table, u, v, w)) {
    throw RoutingError("no route from " + std::to_string(u) + " to " +
                       std::to_string(v) + " via " + std::to_string(w));
  }
  if (w == u || w == v) {
    const auto f = table.unit_flow(u, v);
    return UnitFlow<double>(f.begin(), f.end());
  }
  const auto first = table.unit_flow(u, w);
  const auto second = table.unit_flow(w, v);
  UnitFlow<double> out;
  out.reserve(first.size() + second.size());
  std::size_t i = 0, j = 0;
  while (i < first.size() || j < second.size()) {
    if (j == second.size() || (i < first.size() && first[i].arc < second[j].arc)) {
      out.push_back(first[i++]);
    } else if (i == first.size() || second[j].arc < first[i].arc) {
      out.push_back(second[j++]);
    } else {
      out.push_back({first[i].arc, first[i].fraction + second[j].fraction});
      ++i;
      ++j;
    }
  }
  return out;
}

double g_coefficient(const TrafficMatrix& tm, const FractionTable& table,
                     VertexId u, VertexId v, VertexId w, ArcId a) {
  if (!segment_route_exists(table, u, v, w)) {
    throw RoutingError("no route from " + std::to_string(u) + " to " +
                       std::to_string(v) + " via " + std::to_string(w));
  }
  return tm.demand(u, v) * (table.fraction(u, w, a) + table.fraction(w, v, a));
}

SrPolicy shortest_path_policy(const TrafficMatrix& tm) {
  SrPolicy policy;
  for (const auto& e : tm.entries()) policy.push_back({e.src, e.dst, e.dst, 1.0});
  return policy;
}

ArcLoads policy_arc_loads(const Network& network, const TrafficMatrix& tm,
                          const SrPolicy& policy, const FractionTable& table) {
  ArcLoads loads(network.num_arcs(), 0.0);
  std::map<std::pair<VertexId, VertexId>, double> share;
  for (const SrPolicyEntry& e : policy) {
    if (e.fraction < 0) throw RoutingError("negative policy fraction");
    share[{e.src, e.dst}] += e.fraction;
    if (e.fraction == 0) continue;
    const double d = tm.demand(e.src, e.dst);
    if (d == 0) continue;
    for (const auto& s : segment_route_flow(table, e.src, e.dst, e.via)) {
      loads[s.arc] += d * e.fraction * s.fraction;
    }
  }
  for (const auto& e : tm.entries()) {
    const auto it = share.find({e.src, e.dst});
    const double total = it == share.end() ? 0.0 : it->second;
    if (std::abs(total - 1) > 1e-6) {
      throw RoutingError("policy fractions for demand " + std::to_string(e.src) + "->" +
                         std::to_string(e.dst) + " sum to " + std::to_string(total));
    }
  }
  return loads;
}

ArcLoads shortest_path_loads(const Network& network, const TrafficMatrix& tm,
                             const FractionTable& table) {
  ArcLoads loads(network.num_arcs(), 0.0);
  for (const auto& e : tm.entries()) {
    if (!table.reachable(e.src, e.dst)) {
      throw RoutingError("demand " + std::to_string(e.src) + "->" +
                         std::to_string(e.dst) + " has no path");
    }
    for (const auto& s : table.unit_flow(e.src, e.dst)) loads[s.arc] += e.volume * s.fraction;
  }
  return loads;
}

std::uint64_t routing_fingerprint(const Network& network) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](long long v) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint64_t>(v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(network.num_vertices());
  mix(network.num_arcs());
  for (const DirectedArc& a : network.arcs()) {
    mix(a.tail);
    mix(a.head);
    mix(network.link(a.link).weight);
  }
  return h;
}

void write_fraction_cache(const std::string& path, const Network& network,
                          const FractionTable& table) {
  std::ofstream out(path);
  if (!out) throw RoutingError("cannot write fraction cache " + path);
  const int n = table.num_vertices();
  out << "lcmin-fractions 1 " << routing_fingerprint(network) << " " << n << "\n";
  char buf[40];
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId w = 0; w < n; ++w) {
      const long long d = table.distance(u, w);
      out << "D " << u << " " << w << " " << (d == kUnreachable ? -1 : d) << "\n";
      for (const auto& s : table.unit_flow(u, w)) {
        std::snprintf(buf, sizeof buf, "%.17g", s.fraction);
        out << "F " << u << " " << w << " " << s.arc << " " << buf << "\n";
      }
    }
  }
}

bool read_fraction_cache(const std::string& path, const Network& network,
                         FractionTable& table) {
  std::ifstream in(path);
  if (!in) return false;
  std::string magic;
  int version = 0, n = 0;
  std::uint64_t fingerprint = 0;
  if (!(in >> magic >> version >> fingerprint >> n) || magic != "lcmin-fractions" ||
      version != 1 || fingerprint != routing_fingerprint(network) ||
      n != network.num_vertices()) {
    return false;
  }
  std::vector<std::vector<long long>> dist(n, std::vector<long long>(n, kUnreachable));
  std::vector<UnitFlow<double>> flows(static_cast<std::size_t>(n) * n);
  std::string tag;
  while (in >> tag) {
    int u = 0, w = 0;
    if (!(in >> u >> w) || u < 0 || u >= n || w < 0 || w >= n) return false;
    if (tag == "D") {
      long long d = 0;
      if (!(in >> d)) return false;
      dist[u][w] = d < 0 ? kUnreachable : d;
    } else if (tag == "F") {
      ArcId a = 0;
      double f = 0;
      if (!(in >> a >> f) || a < 0 || a >= network.num_arcs()) return false;
      flows[static_cast<std::size_t>(u) * n + w].push_back({a, f});
    } else {
      return false;
    }
  }
  table = FractionTable(n, std::move(dist), std::move(flows));
  return true;
}

}  // namespace lcmin
