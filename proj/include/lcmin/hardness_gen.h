#ifndef LCMIN_HARDNESS_GEN_H
#define LCMIN_HARDNESS_GEN_H

#include <stdexcept>
#include <string>
#include <vector>

#include "lcmin/netmodel.h"
#include "lcmin/repetita_io.h"

namespace lcmin {

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Items are indices into universe; sets list item indices.
struct SetCoverInstance {
  std::vector<std::string> universe;
  std::vector<std::vector<int>> sets;
};

// Text form: an optional "universe <items...>" line, then one set per line
// with whitespace-separated item names. '#' starts a comment. Without the
// universe line the universe is every item that appears, in order of first
// appearance.
SetCoverInstance parse_set_cover(const std::string& text);
std::string write_set_cover(const SetCoverInstance& sc);

// Throws ReductionError for an empty family, an empty universe, an item index
// out of range, or an item no set covers.
void require_coverable(const SetCoverInstance& sc);

bool is_cover(const SetCoverInstance& sc, const std::vector<int>& chosen);

// How the duplex variant blocks the back arcs.
//   kBackArcBlocking: one unit from the head of each chain to each item of its
//     set, which saturates exactly the back arcs into the item vertices.
//   kLiteral: one unit from every chain vertex to every item vertex and |U|
//     from the sink to every chain vertex. Generally infeasible, kept for
//     comparison.
enum class DuplexDemands { kBackArcBlocking, kLiteral };

struct ReducedInstance {
  Network network;
  TrafficMatrix demands;
  int k = 1;
  double theta = 1;
  int chain_length = 0;                          // q
  bool duplex = false;
  std::vector<VertexId> item_vertices;           // per item
  std::vector<std::vector<VertexId>> chain_vertices;  // per set: q + 1 vertices
  VertexId sink = 0;
  std::vector<LinkId> item_links;                // item -> chain head, |U| of them per covering set
  std::vector<std::vector<LinkId>> chain_links;  // per set: q + 1 links ending at the sink
};

// Acyclic instance: items feed the chain heads of their sets, every chain of
// length q + 1 ends at the sink, each item sends one unit to the sink. Item
// links have one port of capacity 1, chain links one port of capacity |U|.
ReducedInstance reduce_set_cover(const SetCoverInstance& sc, int k);

// Same graph with duplex links and extra demands occupying the back arcs.
ReducedInstance reduce_set_cover_duplex(const SetCoverInstance& sc, int k,
                                        DuplexDemands mode = DuplexDemands::kBackArcBlocking);

struct CoverRecovery {
  std::vector<int> cover;           // sets whose whole chain is active
  std::vector<int> partial_chains;  // sets with some but not all chain links active
};

CoverRecovery recover_cover(const ReducedInstance& instance, const ActivePorts& active);

// GRAPH form of the instance: one edge per direction, bandwidth = port
// capacity. Read it back with ExpandOptions{parallel_count 1, one_way set for
// the acyclic instance}.
RawTopology to_raw_topology(const ReducedInstance& instance);

}  // namespace lcmin

#endif  // LCMIN_HARDNESS_GEN_H
