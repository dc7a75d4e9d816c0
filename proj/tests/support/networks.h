#ifndef LCMIN_TESTS_SUPPORT_NETWORKS_H
#define LCMIN_TESTS_SUPPORT_NETWORKS_H

#include <cstdint>
#include <map>

#include "lcmin/igp_routing.h"
#include "lcmin/netmodel.h"

namespace lcmin::testing {

PortGroup ports(int count, double capacity);

// Connected random network: a random spanning tree plus `extra` links,
// weights in [1, max_weight], `port_count` ports of `capacity` per link.
// Parallel links may appear.
Network random_network(std::uint32_t seed, int n, int extra, int max_weight,
                       int port_count, double capacity);

// Random demands on about `density` of the ordered pairs, volumes in
// [1, max_volume].
TrafficMatrix random_demands(std::uint32_t seed, int n, double density,
                             int max_volume);

// F_uw by walking every simple u->w path: at each vertex the mass splits
// evenly over the first arcs of the minimum-weight simple paths that remain.
std::map<ArcId, Rational> path_enumeration_fractions(const Network& network,
                                                     VertexId u, VertexId w);

}  // namespace lcmin::testing

#endif  // LCMIN_TESTS_SUPPORT_NETWORKS_H
