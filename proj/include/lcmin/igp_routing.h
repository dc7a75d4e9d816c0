#ifndef LCMIN_IGP_ROUTING_H
#define LCMIN_IGP_ROUTING_H

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcmin/netmodel.h"

namespace lcmin {

inline constexpr long long kUnreachable = std::numeric_limits<long long>::max();

using Rational = boost::multiprecision::cpp_rational;

class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest paths out of one source. member[a] is set for every arc that lies
// on some shortest path from the source, parallel equal-cost arcs included.
struct SpDag {
  VertexId source = 0;
  std::vector<long long> dist;  // kUnreachable when there is no path
  std::vector<bool> member;     // per ArcId

  bool reachable(VertexId v) const { return dist[v] != kUnreachable; }
};

SpDag shortest_path_dag(const Network& network, VertexId source);

// dist[x][y] for every ordered pair, by one Dijkstra per source.
std::vector<std::vector<long long>> all_pairs_distances(const Network& network);

template <class Scalar>
struct ArcShare {
  ArcId arc;
  Scalar fraction;
};

template <class Scalar>
using UnitFlow = std::vector<ArcShare<Scalar>>;  // sorted by arc

// ECMP routing of a unit flow from u to every w: at each vertex the flow
// toward w splits evenly over the outgoing arcs that continue a shortest path
// to w. Entry w holds the nonzero arc fractions; the entry for w == u and for
// unreachable w is empty.
template <class Scalar>
std::vector<UnitFlow<Scalar>> ecmp_fractions(
    const Network& network, const std::vector<std::vector<long long>>& dist,
    VertexId u);

// F_uw(a) for all ordered pairs, computed once on the full topology.
template <class Scalar>
class BasicFractionTable {
 public:
  BasicFractionTable() = default;
  BasicFractionTable(int num_vertices, std::vector<std::vector<long long>> dist,
                     std::vector<UnitFlow<Scalar>> flows);

  int num_vertices() const { return n_; }
  long long distance(VertexId u, VertexId w) const { return dist_[u][w]; }
  bool reachable(VertexId u, VertexId w) const {
    return dist_[u][w] != kUnreachable;
  }
  // Sparse F_uw; empty for u == w.
  std::span<const ArcShare<Scalar>> unit_flow(VertexId u, VertexId w) const {
    return flows_[static_cast<std::size_t>(u) * n_ + w];
  }
  Scalar fraction(VertexId u, VertexId w, ArcId a) const;
  const std::vector<std::vector<long long>>& distances() const { return dist_; }

 private:
  int n_ = 0;
  std::vector<std::vector<long long>> dist_;
  std::vector<UnitFlow<Scalar>> flows_;  // n * n, row-major by (u, w)
};

using FractionTable = BasicFractionTable<double>;
using ExactFractionTable = BasicFractionTable<Rational>;

template <class Scalar>
BasicFractionTable<Scalar> compute_fraction_table(const Network& network);

// A 2-segment route u -> w -> v exists when both segments are connected.
// w == u and w == v are the one-segment route and need only u -> v.
bool segment_route_exists(const FractionTable& table, VertexId u, VertexId v,
                          VertexId w);

// Volume of the u->v demand on arc a when routed via w:
// d_uv * (F_uw(a) + F_wv(a)). Throws RoutingError when the route does not
// exist.
double g_coefficient(const TrafficMatrix& tm, const FractionTable& table,
                     VertexId u, VertexId v, VertexId w, ArcId a);

// Per arc, the sum of F_uw(a) + F_wv(a), sparse and sorted by arc.
UnitFlow<double> segment_route_flow(const FractionTable& table, VertexId u,
                                    VertexId v, VertexId w);

// Share of demand (src, dst) sent via intermediate `via`.
struct SrPolicyEntry {
  VertexId src;
  VertexId dst;
  VertexId via;
  double fraction;
  bool operator==(const SrPolicyEntry&) const = default;
};
using SrPolicy = std::vector<SrPolicyEntry>;

// Every positive demand routed directly (via = dst).
SrPolicy shortest_path_policy(const TrafficMatrix& tm);

// Loads under a policy: sum over demands and intermediates of
// g_uv^w(a) * x_uv^w. Throws RoutingError when a demand's fractions do not sum
// to 1 (within 1e-6) or an entry uses an unreachable segment.
ArcLoads policy_arc_loads(const Network& network, const TrafficMatrix& tm,
                          const SrPolicy& policy, const FractionTable& table);

// Plain ECMP shortest-path loads.
ArcLoads shortest_path_loads(const Network& network, const TrafficMatrix& tm,
                             const FractionTable& table);

// Hash of everything the table depends on: vertex count, arcs and weights.
std::uint64_t routing_fingerprint(const Network& network);

// Text cache of a FractionTable. read returns false when the file is missing
// or was written for a different network.
void write_fraction_cache(const std::string& path, const Network& network,
                          const FractionTable& table);
bool read_fraction_cache(const std::string& path, const Network& network,
                         FractionTable& table);

}  // namespace lcmin

#endif  // LCMIN_IGP_ROUTING_H
