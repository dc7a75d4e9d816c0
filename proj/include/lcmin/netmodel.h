#ifndef LCMIN_NETMODEL_H
#define LCMIN_NETMODEL_H

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lcmin {

using VertexId = int;
// Index of an ArcPair (one physical duplex link) in Network::links().
using LinkId = int;
// Index of a directed arc in Network::arcs().
using ArcId = int;

inline constexpr int kNoArc = -1;

// Thrown when a model object is malformed or an operation receives inputs of
// the wrong shape.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a state routes traffic over an arc that has no active capacity.
class InfeasibleStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The ports that make up one duplex link. Both directions share the same
// ports, so the capacity is symmetric.
struct PortGroup {
  std::vector<double> capacities;

  int size() const { return static_cast<int>(capacities.size()); }
  double total_capacity() const;
  // True when every port has the same capacity (and there is at least one).
  bool uniform() const;
};

// A duplex link between u and v. Represents the arcs u->v and v->u, unless
// one_way is set, in which case only u->v exists. One-way links only occur in
// the acyclic instances produced by the hardness reduction.
struct ArcPair {
  VertexId u = 0;
  VertexId v = 0;
  PortGroup ports;
  long long weight = 1;
  bool one_way = false;
};

struct DirectedArc {
  LinkId link = 0;
  VertexId tail = 0;
  VertexId head = 0;
  bool reverse = false;  // true for the v->u direction of its link
};

// Per link, one activation flag per port.
using PortMask = std::vector<bool>;
using ActivePorts = std::vector<PortMask>;

// Directed multigraph of routers joined by duplex port groups. Immutable once
// constructed.
class Network {
 public:
  Network() = default;
  Network(std::vector<std::string> vertex_labels, std::vector<ArcPair> links,
          std::vector<int> customer_ports = {});

  int num_vertices() const { return static_cast<int>(labels_.size()); }
  int num_links() const { return static_cast<int>(links_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }

  const std::string& label(VertexId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<ArcPair>& links() const { return links_; }
  const ArcPair& link(LinkId l) const { return links_[l]; }
  const std::vector<DirectedArc>& arcs() const { return arcs_; }
  const DirectedArc& arc(ArcId a) const { return arcs_[a]; }

  // Directed arcs belonging to a link: {u->v, v->u}; the second is kNoArc for
  // one-way links.
  std::pair<ArcId, ArcId> link_arcs(LinkId l) const { return link_arcs_[l]; }

  std::span<const ArcId> out_arcs(VertexId v) const { return out_[v]; }
  std::span<const ArcId> in_arcs(VertexId v) const { return in_[v]; }
  std::span<const LinkId> incident_links(VertexId v) const {
    return incident_[v];
  }

  int customer_ports(VertexId v) const { return customer_ports_[v]; }
  const std::vector<int>& customer_ports() const { return customer_ports_; }
  // Number of backbone ports at v: every incident link contributes its port
  // count once.
  int backbone_ports(VertexId v) const;
  int total_ports() const;

 private:
  std::vector<std::string> labels_;
  std::vector<ArcPair> links_;
  std::vector<int> customer_ports_;
  std::vector<DirectedArc> arcs_;
  std::vector<std::pair<ArcId, ArcId>> link_arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
  std::vector<std::vector<LinkId>> incident_;
};

// Demand volume per ordered vertex pair. Stored densely.
class TrafficMatrix {
 public:
  TrafficMatrix() = default;
  explicit TrafficMatrix(int num_vertices);

  int num_vertices() const { return n_; }
  double demand(VertexId x, VertexId y) const {
    return d_[static_cast<std::size_t>(x) * n_ + y];
  }
  // Throws ModelError on x == y, out-of-range ids, or a negative or
  // non-finite volume.
  void set(VertexId x, VertexId y, double volume);
  void add(VertexId x, VertexId y, double volume);

  struct Entry {
    VertexId src;
    VertexId dst;
    double volume;
  };
  // Positive demands in (src, dst) lexicographic order.
  std::vector<Entry> entries() const;
  double total() const;
  bool operator==(const TrafficMatrix&) const = default;

 private:
  void check_pair(VertexId x, VertexId y) const;

  int n_ = 0;
  std::vector<double> d_;
};

struct LinecardConfig {
  int ports_per_card = 8;
};

// Routed volume per directed arc, indexed by ArcId.
using ArcLoads = std::vector<double>;

// All ports active for every link.
ActivePorts all_ports_active(const Network& network);
// No port active.
ActivePorts no_ports_active(const Network& network);
int count_active(const PortMask& mask);

// Sum of the capacities of the active ports of a link. The value holds for
// both directions of the link.
double arc_capacity(const Network& network, LinkId link,
                    const PortMask& active);

// Active linecards at a vertex: ceil(active backbone ports / k), with ports
// packed onto as few cards as possible. masks holds one mask per incident
// link, in Network::incident_links order.
int vertex_active_linecards(const Network& network, VertexId vertex,
                            std::span<const PortMask> masks, int k);

// Same count, taken from a full network-wide state.
int active_linecards_at(const Network& network, const ActivePorts& state,
                        VertexId vertex, int k);

// Maximum of load / active capacity over directed arcs. Arcs without load or
// capacity are skipped; a loaded arc without capacity throws
// InfeasibleStateError.
double mlu(const Network& network, const ArcLoads& loads,
           const ActivePorts& active);

struct Violation {
  enum class Kind {
    kDanglingEndpoint,
    kSelfLoop,
    kNonpositiveWeight,
    kNonpositiveCapacity,
    kEmptyPortGroup,
    kNegativeCustomerPorts,
  };
  Kind kind;
  int index;  // link or vertex the violation refers to
  std::string message;
};

const char* to_string(Violation::Kind kind);

std::vector<Violation> validate_network(const Network& network);

// Throws ModelError listing the violations, if there are any.
void require_valid(const Network& network);

// Checks that masks match the port groups of the network.
void check_state_shape(const Network& network, const ActivePorts& state);

}  // namespace lcmin

#endif  // LCMIN_NETMODEL_H
