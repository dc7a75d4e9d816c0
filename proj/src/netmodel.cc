#include "lcmin/netmodel.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lcmin {

double PortGroup::total_capacity() const {
  double total = 0;
  for (double c : capacities) total += c;
  return total;
}

bool PortGroup::uniform() const {
  if (capacities.empty()) return false;
  return std::all_of(capacities.begin(), capacities.end(),
                     [&](double c) { return c == capacities.front(); });
}

Network::Network(std::vector<std::string> vertex_labels,
                 std::vector<ArcPair> links, std::vector<int> customer_ports)
    : labels_(std::move(vertex_labels)),
      links_(std::move(links)),
      customer_ports_(std::move(customer_ports)) {
  const int n = num_vertices();
  if (customer_ports_.empty()) customer_ports_.assign(n, 0);
  if (static_cast<int>(customer_ports_.size()) != n) {
    throw ModelError("customer port counts do not match the vertex count");
  }
  out_.resize(n);
  in_.resize(n);
  incident_.resize(n);
  link_arcs_.assign(links_.size(), {kNoArc, kNoArc});
  auto in_range = [n](VertexId v) { return v >= 0 && v < n; };
  for (LinkId l = 0; l < num_links(); ++l) {
    const ArcPair& p = links_[l];
    // Dangling links stay in the list so validate_network can report them,
    // but they get no arcs.
    if (!in_range(p.u) || !in_range(p.v)) continue;
    auto add_arc = [&](VertexId tail, VertexId head, bool reverse) {
      const ArcId id = num_arcs();
      arcs_.push_back({l, tail, head, reverse});
      out_[tail].push_back(id);
      in_[head].push_back(id);
      return id;
    };
    link_arcs_[l].first = add_arc(p.u, p.v, false);
    if (!p.one_way) link_arcs_[l].second = add_arc(p.v, p.u, true);
    incident_[p.u].push_back(l);
    if (p.v != p.u) incident_[p.v].push_back(l);
  }
}

int Network::backbone_ports(VertexId v) const {
  int ports = 0;
  for (LinkId l : incident_[v]) ports += links_[l].ports.size();
  return ports;
}

int Network::total_ports() const {
  int ports = 0;
  for (VertexId v = 0; v < num_vertices(); ++v) ports += backbone_ports(v);
  return ports;
}

TrafficMatrix::TrafficMatrix(int num_vertices)
    : n_(num_vertices),
      d_(static_cast<std::size_t>(num_vertices) * num_vertices, 0.0) {}

void TrafficMatrix::check_pair(VertexId x, VertexId y) const {
  if (x < 0 || x >= n_ || y < 0 || y >= n_) {
    throw ModelError("demand endpoint out of range");
  }
  if (x == y) throw ModelError("demand from a vertex to itself");
}

void TrafficMatrix::set(VertexId x, VertexId y, double volume) {
  check_pair(x, y);
  if (!std::isfinite(volume) || volume < 0) {
    throw ModelError("demand volume must be finite and nonnegative");
  }
  d_[static_cast<std::size_t>(x) * n_ + y] = volume;
}

void TrafficMatrix::add(VertexId x, VertexId y, double volume) {
  check_pair(x, y);
  set(x, y, demand(x, y) + volume);
}

std::vector<TrafficMatrix::Entry> TrafficMatrix::entries() const {
  std::vector<Entry> out;
  for (VertexId x = 0; x < n_; ++x) {
    for (VertexId y = 0; y < n_; ++y) {
      const double d = demand(x, y);
      if (d > 0) out.push_back({x, y, d});
    }
  }
  return out;
}

double TrafficMatrix::total() const {
  double t = 0;
  for (double d : d_) t += d;
  return t;
}

ActivePorts all_ports_active(const Network& network) {
  ActivePorts state;
  state.reserve(network.num_links());
  for (const ArcPair& p : network.links()) state.emplace_back(p.ports.size(), true);
  return state;
}

ActivePorts no_ports_active(const Network& network) {
  ActivePorts state;
  state.reserve(network.num_links());
  for (const ArcPair& p : network.links()) state.emplace_back(p.ports.size(), false);
  return state;
}

int count_active(const PortMask& mask) {
  return static_cast<int>(std::count(mask.begin(), mask.end(), true));
}

double arc_capacity(const Network& network, LinkId link,
                    const PortMask& active) {
  const PortGroup& group = network.link(link).ports;
  if (static_cast<int>(active.size()) != group.size()) {
    throw ModelError("port mask length does not match the port group of link " +
                     std::to_string(link));
  }
  double cap = 0;
  for (int p = 0; p < group.size(); ++p) {
    if (active[p]) cap += group.capacities[p];
  }
  return cap;
}

namespace {

int ceil_div(int a, int k) { return (a + k - 1) / k; }

}  // namespace

int vertex_active_linecards(const Network& network, VertexId vertex,
                            std::span<const PortMask> masks, int k) {
  if (k < 1) throw ModelError("ports per linecard must be at least 1");
  const auto links = network.incident_links(vertex);
  if (masks.size() != links.size()) {
    throw ModelError("expected one mask per incident link of vertex " +
                     std::to_string(vertex));
  }
  int active = 0;
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (static_cast<int>(masks[i].size()) != network.link(links[i]).ports.size()) {
      throw ModelError("port mask length does not match link " +
                       std::to_string(links[i]));
    }
    active += count_active(masks[i]);
  }
  return ceil_div(active, k);
}

int active_linecards_at(const Network& network, const ActivePorts& state,
                        VertexId vertex, int k) {
  check_state_shape(network, state);
  std::vector<PortMask> masks;
  for (LinkId l : network.incident_links(vertex)) masks.push_back(state[l]);
  return vertex_active_linecards(network, vertex, std::span<const PortMask>(masks), k);
}

double mlu(const Network& network, const ArcLoads& loads,
           const ActivePorts& active) {
  check_state_shape(network, active);
  if (static_cast<int>(loads.size()) != network.num_arcs()) {
    throw ModelError("arc load vector does not match the arc count");
  }
  double worst = 0;
  for (ArcId a = 0; a < network.num_arcs(); ++a) {
    const double load = loads[a];
    if (load < 0) throw ModelError("negative arc load");
    const LinkId l = network.arc(a).link;
    const double cap = arc_capacity(network, l, active[l]);
    if (cap <= 0) {
      if (load > 0) {
        std::ostringstream msg;
        msg << "arc " << network.label(network.arc(a).tail) << "->"
            << network.label(network.arc(a).head) << " carries " << load
            << " without active capacity";
        throw InfeasibleStateError(msg.str());
      }
      continue;
    }
    worst = std::max(worst, load / cap);
  }
  return worst;
}

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kDanglingEndpoint: return "dangling-endpoint";
    case Violation::Kind::kSelfLoop: return "self-loop";
    case Violation::Kind::kNonpositiveWeight: return "nonpositive-weight";
    case Violation::Kind::kNonpositiveCapacity: return "nonpositive-capacity";
    case Violation::Kind::kEmptyPortGroup: return "empty-port-group";
    case Violation::Kind::kNegativeCustomerPorts: return "negative-customer-ports";
  }
  return "unknown";
}

std::vector<Violation> validate_network(const Network& network) {
  std::vector<Violation> out;
  const int n = network.num_vertices();
  for (LinkId l = 0; l < network.num_links(); ++l) {
    const ArcPair& p = network.link(l);
    const std::string where = "link " + std::to_string(l);
    if (p.u < 0 || p.u >= n || p.v < 0 || p.v >= n) {
      out.push_back({Violation::Kind::kDanglingEndpoint, l,
                     where + " references an unknown vertex"});
    } else if (p.u == p.v) {
      out.push_back({Violation::Kind::kSelfLoop, l, where + " is a self-loop"});
    }
    if (p.weight <= 0) {
      out.push_back({Violation::Kind::kNonpositiveWeight, l,
                     where + " has weight " + std::to_string(p.weight)});
    }
    if (p.ports.capacities.empty()) {
      out.push_back({Violation::Kind::kEmptyPortGroup, l, where + " has no ports"});
    }
    for (double c : p.ports.capacities) {
      if (!(c > 0) || !std::isfinite(c)) {
        out.push_back({Violation::Kind::kNonpositiveCapacity, l,
                       where + " has a port of capacity " + std::to_string(c)});
        break;
      }
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (network.customer_ports(v) < 0) {
      out.push_back({Violation::Kind::kNegativeCustomerPorts, v,
                     "vertex " + std::to_string(v) + " has negative customer ports"});
    }
  }
  return out;
}

void require_valid(const Network& network) {
  const auto violations = validate_network(network);
  if (violations.empty()) return;
  std::string msg = "invalid network:";
  for (const Violation& v : violations) msg += " [" + std::string(to_string(v.kind)) + "] " + v.message + ";";
  throw ModelError(msg);
}

void check_state_shape(const Network& network, const ActivePorts& state) {
  if (static_cast<int>(state.size()) != network.num_links()) {
    throw ModelError("state has " + std::to_string(state.size()) +
                     " masks for " + std::to_string(network.num_links()) +
                     " links");
  }
  for (LinkId l = 0; l < network.num_links(); ++l) {
    if (static_cast<int>(state[l].size()) != network.link(l).ports.size()) {
      throw ModelError("port mask length does not match link " +
                       std::to_string(l));
    }
  }
}

}  // namespace lcmin
