#include "lcmin/hardness_gen.h"

#include <map>
#include <set>
#include <sstream>

namespace lcmin {

namespace {

std::vector<std::vector<std::string>> content_lines(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> words;
    for (std::string w; fields >> w;) words.push_back(w);
    if (!words.empty()) out.push_back(std::move(words));
  }
  return out;
}

}  // namespace

SetCoverInstance parse_set_cover(const std::string& text) {
  SetCoverInstance sc;
  std::map<std::string, int> index;
  auto item = [&](const std::string& name, bool declare) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    if (!declare) throw ReductionError("item '" + name + "' is not in the declared universe");
    sc.universe.push_back(name);
    return index[name] = static_cast<int>(sc.universe.size()) - 1;
  };
  bool declared = false;
  for (const auto& words : content_lines(text)) {
    if (words.front() == "universe") {
      if (declared || !sc.sets.empty()) throw ReductionError("universe line must come first");
      declared = true;
      for (std::size_t i = 1; i < words.size(); ++i) item(words[i], true);
      continue;
    }
    std::set<int> members;
    for (const auto& w : words) members.insert(item(w, !declared));
    sc.sets.emplace_back(members.begin(), members.end());
  }
  return sc;
}

std::string write_set_cover(const SetCoverInstance& sc) {
  std::ostringstream out;
  out << "universe";
  for (const auto& u : sc.universe) out << " " << u;
  out << "\n";
  for (const auto& s : sc.sets) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << sc.universe.at(s[i]);
    out << "\n";
  }
  return out.str();
}

void require_coverable(const SetCoverInstance& sc) {
  if (sc.sets.empty()) throw ReductionError("set family is empty");
  if (sc.universe.empty()) throw ReductionError("universe is empty");
  std::vector<bool> covered(sc.universe.size(), false);
  for (const auto& s : sc.sets) {
    if (s.empty()) throw ReductionError("family contains an empty set");
    for (int u : s) {
      if (u < 0 || u >= static_cast<int>(sc.universe.size())) {
        throw ReductionError("set refers to item " + std::to_string(u) + " outside the universe");
      }
      covered[u] = true;
    }
  }
  for (std::size_t u = 0; u < covered.size(); ++u) {
    if (!covered[u]) throw ReductionError("item '" + sc.universe[u] + "' is in no set");
  }
}

bool is_cover(const SetCoverInstance& sc, const std::vector<int>& chosen) {
  std::vector<bool> covered(sc.universe.size(), false);
  for (int s : chosen) {
    for (int u : sc.sets.at(s)) covered[u] = true;
  }
  for (bool c : covered) {
    if (!c) return false;
  }
  return true;
}

namespace {

ReducedInstance build(const SetCoverInstance& sc, int k, bool duplex) {
  require_coverable(sc);
  if (k < 1) throw ReductionError("ports per linecard must be at least 1");
  const int num_items = static_cast<int>(sc.universe.size());
  int incidences = 0;
  for (const auto& s : sc.sets) incidences += static_cast<int>(s.size());
  const int sigma = static_cast<int>(sc.sets.size());

  ReducedInstance r;
  r.k = k;
  r.duplex = duplex;
  r.chain_length = 2 * (sigma + incidences) + 1;
  const int q = r.chain_length;

  std::vector<std::string> labels;
  for (int u = 0; u < num_items; ++u) {
    r.item_vertices.push_back(static_cast<VertexId>(labels.size()));
    labels.push_back("item_" + sc.universe[u]);
  }
  for (int s = 0; s < sigma; ++s) {
    std::vector<VertexId> chain;
    for (int i = 0; i <= q; ++i) {
      chain.push_back(static_cast<VertexId>(labels.size()));
      labels.push_back("set" + std::to_string(s) + "_" + std::to_string(i));
    }
    r.chain_vertices.push_back(std::move(chain));
  }
  r.sink = static_cast<VertexId>(labels.size());
  labels.push_back("sink");

  std::vector<ArcPair> links;
  auto add = [&](VertexId from, VertexId to, double capacity) {
    links.push_back(ArcPair{from, to, PortGroup{{capacity}}, 1, !duplex});
    return static_cast<LinkId>(links.size()) - 1;
  };
  for (int s = 0; s < sigma; ++s) {
    for (int u : sc.sets[s]) r.item_links.push_back(add(r.item_vertices[u], r.chain_vertices[s][0], 1));
  }
  r.chain_links.resize(sigma);
  for (int s = 0; s < sigma; ++s) {
    const auto& chain = r.chain_vertices[s];
    for (int i = 0; i < q; ++i) r.chain_links[s].push_back(add(chain[i], chain[i + 1], num_items));
    r.chain_links[s].push_back(add(chain[q], r.sink, num_items));
  }
  r.network = Network(std::move(labels), std::move(links));

  // The ports outside the chain interiors must stay below one chain's worth
  // of linecards, otherwise dropping a chain might not pay off.
  int outside = r.network.backbone_ports(r.sink);
  for (VertexId v : r.item_vertices) outside += r.network.backbone_ports(v);
  for (const auto& chain : r.chain_vertices) outside += r.network.backbone_ports(chain[0]);
  if (outside >= q) throw ReductionError("chain length does not dominate the other ports");

  r.demands = TrafficMatrix(r.network.num_vertices());
  for (VertexId v : r.item_vertices) r.demands.set(v, r.sink, 1);
  return r;
}

}  // namespace

ReducedInstance reduce_set_cover(const SetCoverInstance& sc, int k) {
  return build(sc, k, false);
}

ReducedInstance reduce_set_cover_duplex(const SetCoverInstance& sc, int k, DuplexDemands mode) {
  ReducedInstance r = build(sc, k, true);
  const double num_items = static_cast<double>(sc.universe.size());
  if (mode == DuplexDemands::kBackArcBlocking) {
    for (std::size_t s = 0; s < sc.sets.size(); ++s) {
      for (int u : sc.sets[s]) r.demands.add(r.chain_vertices[s][0], r.item_vertices[u], 1);
    }
  } else {
    for (const auto& chain : r.chain_vertices) {
      for (VertexId x : chain) {
        for (VertexId y : r.item_vertices) r.demands.add(x, y, 1);
        r.demands.add(r.sink, x, num_items);
      }
    }
  }
  return r;
}

CoverRecovery recover_cover(const ReducedInstance& instance, const ActivePorts& active) {
  check_state_shape(instance.network, active);
  CoverRecovery out;
  for (std::size_t s = 0; s < instance.chain_links.size(); ++s) {
    int on = 0;
    for (LinkId l : instance.chain_links[s]) on += count_active(active[l]) > 0 ? 1 : 0;
    if (on == static_cast<int>(instance.chain_links[s].size())) {
      out.cover.push_back(static_cast<int>(s));
    } else if (on > 0) {
      out.partial_chains.push_back(static_cast<int>(s));
    }
  }
  return out;
}

RawTopology to_raw_topology(const ReducedInstance& instance) {
  const Network& net = instance.network;
  RawTopology raw;
  for (VertexId v = 0; v < net.num_vertices(); ++v) raw.nodes.push_back({net.label(v), 0, 0});
  for (ArcId a = 0; a < net.num_arcs(); ++a) {
    const DirectedArc& arc = net.arc(a);
    const ArcPair& link = net.link(arc.link);
    raw.edges.push_back({"link" + std::to_string(arc.link) + (arc.reverse ? "_back" : ""), arc.tail,
                         arc.head, link.weight, link.ports.total_capacity(), 0});
  }
  return raw;
}

}  // namespace lcmin
