#include "support/networks.h"

#include <random>

namespace lcmin::testing {

PortGroup ports(int count, double capacity) {
  return PortGroup{std::vector<double>(count, capacity)};
}

Network random_network(std::uint32_t seed, int n, int extra, int max_weight,
                       int port_count, double capacity) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::vector<std::string> labels;
  for (int v = 0; v < n; ++v) labels.push_back("r" + std::to_string(v));
  std::vector<ArcPair> links;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    ArcPair p{parent(rng), v, ports(port_count, capacity)};
    p.weight = weight(rng);
    links.push_back(p);
  }
  std::uniform_int_distribution<int> vertex(0, n - 1);
  for (int i = 0; i < extra && n > 1; ++i) {
    int a = vertex(rng), b = vertex(rng);
    while (b == a) b = vertex(rng);
    ArcPair p{a, b, ports(port_count, capacity)};
    p.weight = weight(rng);
    links.push_back(p);
  }
  return Network(labels, links);
}

TrafficMatrix random_demands(std::uint32_t seed, int n, double density, int max_volume) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<int> volume(1, max_volume);
  TrafficMatrix tm(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x != y && coin(rng) < density) tm.set(x, y, volume(rng));
    }
  }
  return tm;
}

namespace {

// Minimum weight of a simple path from x to w avoiding `visited`; -1 if none.
long long best_simple(const Network& net, VertexId x, VertexId w, std::vector<bool>& visited) {
  if (x == w) return 0;
  long long best = -1;
  visited[x] = true;
  for (ArcId a : net.out_arcs(x)) {
    const VertexId y = net.arc(a).head;
    if (visited[y]) continue;
    const long long rest = best_simple(net, y, w, visited);
    if (rest < 0) continue;
    const long long len = rest + net.link(net.arc(a).link).weight;
    if (best < 0 || len < best) best = len;
  }
  visited[x] = false;
  return best;
}

void spread(const Network& net, VertexId x, VertexId w, const Rational& mass,
            std::map<ArcId, Rational>& out) {
  if (x == w) return;
  std::vector<bool> visited(net.num_vertices(), false);
  const long long best = best_simple(net, x, w, visited);
  std::vector<ArcId> firsts;
  for (ArcId a : net.out_arcs(x)) {
    const VertexId y = net.arc(a).head;
    std::vector<bool> seen(net.num_vertices(), false);
    seen[x] = true;
    const long long rest = best_simple(net, y, w, seen);
    if (rest >= 0 && rest + net.link(net.arc(a).link).weight == best) firsts.push_back(a);
  }
  const Rational share = mass / static_cast<long long>(firsts.size());
  for (ArcId a : firsts) {
    out[a] += share;
    spread(net, net.arc(a).head, w, share, out);
  }
}

}  // namespace

std::map<ArcId, Rational> path_enumeration_fractions(const Network& network, VertexId u,
                                                     VertexId w) {
  std::map<ArcId, Rational> out;
  if (u == w) return out;
  std::vector<bool> visited(network.num_vertices(), false);
  if (best_simple(network, u, w, visited) < 0) return out;
  spread(network, u, w, Rational(1), out);
  return out;
}

}  // namespace lcmin::testing
