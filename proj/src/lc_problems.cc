#include "lcmin/lc_problems.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <set>

namespace lcmin {

using milp::MilpModel;
using milp::RowSense;
using milp::Term;
using milp::VarId;
using milp::VarKind;

namespace {

int ceil_div(int a, int k) { return (a + k - 1) / k; }

bool use_counts(const PortGroup& ports, PortEncoding encoding, LinkId l) {
  switch (encoding) {
    case PortEncoding::kPerPort: return false;
    case PortEncoding::kAuto: return ports.uniform();
    case PortEncoding::kAggregated:
      if (!ports.uniform()) {
        throw BuildError("link " + std::to_string(l) +
                         " has ports of different capacity and cannot be aggregated");
      }
      return true;
  }
  return false;
}

// Port and linecard variables, the linecard rows, and per link the terms of
// theta times its active capacity (negated, ready for a capacity row).
//
// Linecard lower bounds come from the cut around a single vertex: its
// outgoing (incoming) demand has to fit on theta times its active ports, so
// it needs at least that many ports, rounded up, and their cards.
PortVarMap add_port_structure(MilpModel& m, const Network& net, const TrafficMatrix& tm,
                              const LcParams& params, PortEncoding encoding,
                              std::vector<std::vector<Term>>& capacity_terms) {
  if (!(params.theta > 0) || params.theta > 1) throw BuildError("theta must lie in (0, 1]");
  if (params.k < 1) throw BuildError("ports per linecard must be at least 1");
  PortVarMap map;
  map.port_vars.resize(net.num_links());
  map.count_vars.assign(net.num_links(), -1);
  capacity_terms.assign(net.num_links(), {});
  std::vector<std::vector<Term>> vertex_ports(net.num_vertices());
  for (LinkId l = 0; l < net.num_links(); ++l) {
    const PortGroup& ports = net.link(l).ports;
    const std::string tag = std::to_string(l);
    if (use_counts(ports, encoding, l)) {
      const VarId n = m.add_variable("n_" + tag, VarKind::kInteger, 0, ports.size());
      map.count_vars[l] = n;
      capacity_terms[l].push_back({n, -params.theta * ports.capacities.front()});
      vertex_ports[net.link(l).u].push_back({n, -1});
      vertex_ports[net.link(l).v].push_back({n, -1});
    } else {
      for (int p = 0; p < ports.size(); ++p) {
        const VarId pi = m.add_variable("p_" + tag + "_" + std::to_string(p), VarKind::kBinary, 0, 1);
        map.port_vars[l].push_back(pi);
        capacity_terms[l].push_back({pi, -params.theta * ports.capacities[p]});
        vertex_ports[net.link(l).u].push_back({pi, -1});
        vertex_ports[net.link(l).v].push_back({pi, -1});
      }
    }
  }
  map.linecard_vars.assign(net.num_vertices(), -1);
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    const int ports = net.backbone_ports(v);
    if (ports == 0) continue;
    double out = 0, in = 0, widest = 0;
    for (VertexId w = 0; w < net.num_vertices(); ++w) {
      if (w == v) continue;
      out += tm.demand(v, w);
      in += tm.demand(w, v);
    }
    for (LinkId l : net.incident_links(v)) {
      for (double c : net.link(l).ports.capacities) widest = std::max(widest, c);
    }
    int needed = 0;
    if (std::max(out, in) > 0 && widest > 0) {
      needed = static_cast<int>(std::ceil(std::max(out, in) / (params.theta * widest) - 1e-9));
      needed = std::clamp(needed, 1, ports);
    }
    const VarId lc = m.add_variable("L_" + std::to_string(v), VarKind::kInteger,
                                    ceil_div(needed, params.k), ceil_div(ports, params.k), 1);
    map.linecard_vars[v] = lc;
    std::vector<Term> terms = vertex_ports[v];
    terms.push_back({lc, static_cast<double>(params.k)});
    m.add_constraint("cards_" + std::to_string(v), std::move(terms), RowSense::kGreaterEqual, 0);
  }
  return map;
}

// Equal port counts for the two links at a transit vertex: no demand, exactly
// two incident links, same port capacity. Whatever enters such a vertex on one
// link leaves on the other, so the two links need the same capacity, and
// lowering the larger count to the smaller one keeps the routing feasible
// without adding cards. An optimum with equal counts therefore exists. For
// fractional flows this holds once flow cycles are cancelled. Fixed 2SR paths
// can turn around at a waypoint on a duplex link, so 2SR ties one-way links
// only, and only when one enters the vertex and the other leaves it.
void tie_transit_links(MilpModel& m, const Network& net, const TrafficMatrix& tm,
                       const PortVarMap& ports, bool one_way_only) {
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    const auto links = net.incident_links(v);
    if (links.size() != 2 || links[0] == links[1]) continue;
    const LinkId a = links[0], b = links[1];
    if (ports.count_vars[a] < 0 || ports.count_vars[b] < 0) continue;
    if (net.link(a).ports.capacities.front() != net.link(b).ports.capacities.front()) continue;
    bool has_demand = false;
    for (VertexId w = 0; w < net.num_vertices() && !has_demand; ++w) {
      has_demand = w != v && (tm.demand(v, w) > 0 || tm.demand(w, v) > 0);
    }
    if (has_demand) continue;
    if (one_way_only) {
      const ArcPair& la = net.link(a);
      const ArcPair& lb = net.link(b);
      if (!la.one_way || !lb.one_way) continue;
      if (!((la.v == v && lb.u == v) || (la.u == v && lb.v == v))) continue;
    }
    m.add_constraint("transit_" + std::to_string(v),
                     {{ports.count_vars[a], 1}, {ports.count_vars[b], -1}}, RowSense::kEqual, 0);
  }
}

// Vertices reachable from root along arcs (forward) or able to reach it.
std::vector<bool> reach(const Network& net, VertexId root, bool forward) {
  std::vector<bool> seen(net.num_vertices(), false);
  std::queue<VertexId> todo;
  seen[root] = true;
  todo.push(root);
  while (!todo.empty()) {
    const VertexId x = todo.front();
    todo.pop();
    for (ArcId a : forward ? net.out_arcs(x) : net.in_arcs(x)) {
      const VertexId y = forward ? net.arc(a).head : net.arc(a).tail;
      if (!seen[y]) {
        seen[y] = true;
        todo.push(y);
      }
    }
  }
  return seen;
}

void require_connected_demands(const Network& net, const TrafficMatrix& tm) {
  if (tm.num_vertices() != net.num_vertices()) {
    throw BuildError("traffic matrix size does not match the network");
  }
  std::map<VertexId, std::vector<bool>> cache;
  for (const auto& e : tm.entries()) {
    auto it = cache.find(e.src);
    if (it == cache.end()) it = cache.emplace(e.src, reach(net, e.src, true)).first;
    if (!it->second[e.dst]) {
      throw BuildError("demand " + net.label(e.src) + " -> " + net.label(e.dst) +
                       " connects vertices without a path");
    }
  }
}

// Aggregated multicommodity flow: flow variables, conservation rows and per
// arc the flow terms for capacity rows.
McfFlowMap add_flow_structure(MilpModel& m, const Network& net, const TrafficMatrix& tm,
                              double flow_cost, std::vector<std::vector<Term>>& arc_terms) {
  const auto entries = tm.entries();
  std::set<VertexId> sources, sinks;
  for (const auto& e : entries) {
    sources.insert(e.src);
    sinks.insert(e.dst);
  }
  McfFlowMap map;
  map.per_source = sources.size() <= sinks.size();
  const auto& roots = map.per_source ? sources : sinks;
  map.roots.assign(roots.begin(), roots.end());
  arc_terms.assign(net.num_arcs(), {});
  for (std::size_t c = 0; c < map.roots.size(); ++c) {
    const VertexId root = map.roots[c];
    const auto inside = reach(net, root, map.per_source);
    std::vector<VarId> vars(net.num_arcs(), -1);
    std::vector<std::vector<Term>> balance(net.num_vertices());
    for (ArcId a = 0; a < net.num_arcs(); ++a) {
      const DirectedArc& arc = net.arc(a);
      // Flow never needs to re-enter a source or leave a sink.
      if (map.per_source ? (!inside[arc.tail] || arc.head == root)
                         : (!inside[arc.head] || arc.tail == root)) {
        continue;
      }
      const VarId f = m.add_variable("f_" + std::to_string(root) + "_" + std::to_string(a),
                                     VarKind::kContinuous, 0, milp::kInf, flow_cost);
      vars[a] = f;
      arc_terms[a].push_back({f, 1});
      balance[arc.tail].push_back({f, 1});
      balance[arc.head].push_back({f, -1});
    }
    for (VertexId v = 0; v < net.num_vertices(); ++v) {
      if (v == root || !inside[v]) continue;
      // Net outflow: a source commodity delivers d(root, v) at v, a sink
      // commodity collects d(v, root) from v.
      const double rhs = map.per_source ? -tm.demand(root, v) : tm.demand(v, root);
      m.add_constraint("flow_" + std::to_string(root) + "_" + std::to_string(v),
                       std::move(balance[v]), RowSense::kEqual, rhs);
    }
    map.flow.push_back(std::move(vars));
  }
  return map;
}

std::vector<Term> capacity_row(const Network& net, ArcId a, std::vector<Term> load_terms,
                               const std::vector<std::vector<Term>>& capacity_terms) {
  const auto& cap = capacity_terms[net.arc(a).link];
  load_terms.insert(load_terms.end(), cap.begin(), cap.end());
  return load_terms;
}

}  // namespace

McfLcModel build_mcf_lc(const Network& network, const TrafficMatrix& tm,
                        const LcParams& params, PortEncoding encoding) {
  require_valid(network);
  require_connected_demands(network, tm);
  McfLcModel out{MilpModel("mcf_lc"), {}, {}, {}};
  std::vector<std::vector<Term>> capacity_terms, arc_terms;
  out.ports = add_port_structure(out.model, network, tm, params, encoding, capacity_terms);
  tie_transit_links(out.model, network, tm, out.ports, false);
  out.flows = add_flow_structure(out.model, network, tm, 0, arc_terms);
  for (ArcId a = 0; a < network.num_arcs(); ++a) {
    out.capacity_rows.push_back(out.model.add_constraint(
        "cap_" + std::to_string(a), capacity_row(network, a, std::move(arc_terms[a]), capacity_terms),
        RowSense::kLessEqual, 0));
  }
  return out;
}

SrLcModel build_2sr_lc(const Network& network, const TrafficMatrix& tm,
                       const LcParams& params, const FractionTable& table,
                       PortEncoding encoding) {
  require_valid(network);
  if (table.num_vertices() != network.num_vertices()) {
    throw BuildError("fraction table does not match the network");
  }
  if (tm.num_vertices() != network.num_vertices()) {
    throw BuildError("traffic matrix size does not match the network");
  }
  SrLcModel out{MilpModel("sr_lc"), {}, {}, {}};
  std::vector<std::vector<Term>> capacity_terms;
  out.ports = add_port_structure(out.model, network, tm, params, encoding, capacity_terms);
  tie_transit_links(out.model, network, tm, out.ports, true);
  std::vector<std::vector<Term>> arc_terms(network.num_arcs());
  for (const auto& e : tm.entries()) {
    std::vector<Term> sum;
    for (VertexId w = 0; w < network.num_vertices(); ++w) {
      if (w == e.src || !segment_route_exists(table, e.src, e.dst, w)) continue;
      const VarId x = out.model.add_variable(
          "x_" + std::to_string(e.src) + "_" + std::to_string(e.dst) + "_" + std::to_string(w),
          VarKind::kContinuous, 0, 1);
      out.choices.push_back({e.src, e.dst, w, x});
      sum.push_back({x, 1});
      for (const auto& s : segment_route_flow(table, e.src, e.dst, w)) {
        arc_terms[s.arc].push_back({x, e.volume * s.fraction});
      }
    }
    if (sum.empty()) {
      throw BuildError("demand " + network.label(e.src) + " -> " + network.label(e.dst) +
                       " has no segment route");
    }
    out.model.add_constraint("split_" + std::to_string(e.src) + "_" + std::to_string(e.dst),
                             std::move(sum), RowSense::kEqual, 1);
  }
  out.capacity_rows.assign(network.num_arcs(), -1);
  for (ArcId a = 0; a < network.num_arcs(); ++a) {
    if (arc_terms[a].empty()) continue;
    out.capacity_rows[a] = out.model.add_constraint(
        "cap_" + std::to_string(a), capacity_row(network, a, std::move(arc_terms[a]), capacity_terms),
        RowSense::kLessEqual, 0);
  }
  return out;
}

milp::RoundingHeuristic port_rounding(const MilpModel& model, const PortVarMap& ports,
                                      const Network& network, int k) {
  return [&model, &ports, &network, k](std::span<const double> lp)
             -> std::optional<std::vector<double>> {
    std::vector<double> x(lp.begin(), lp.end());
    auto up = [&](VarId v) {
      x[v] = std::min(model.var(v).upper, std::ceil(x[v] - 1e-9));
      return x[v];
    };
    std::vector<double> active(network.num_vertices(), 0.0);
    for (LinkId l = 0; l < network.num_links(); ++l) {
      double count = 0;
      if (ports.count_vars[l] >= 0) {
        count = up(ports.count_vars[l]);
      } else {
        for (VarId p : ports.port_vars[l]) count += up(p);
      }
      active[network.link(l).u] += count;
      active[network.link(l).v] += count;
    }
    for (VertexId v = 0; v < network.num_vertices(); ++v) {
      const VarId lc = ports.linecard_vars[v];
      if (lc >= 0) x[lc] = std::ceil(active[v] / k - 1e-9);
    }
    return x;
  };
}

ActivePorts extract_ports(std::span<const double> values, const PortVarMap& ports,
                          const Network& network) {
  auto integral = [&](VarId v) {
    const double r = std::round(values[v]);
    if (std::abs(values[v] - r) > 1e-6) {
      throw ExtractionError("variable " + std::to_string(v) + " is not integral (" +
                            std::to_string(values[v]) + ")");
    }
    return static_cast<int>(r);
  };
  ActivePorts state = no_ports_active(network);
  for (LinkId l = 0; l < network.num_links(); ++l) {
    if (ports.count_vars[l] >= 0) {
      const int n = std::clamp(integral(ports.count_vars[l]), 0, network.link(l).ports.size());
      for (int p = 0; p < n; ++p) state[l][p] = true;
    } else {
      for (std::size_t p = 0; p < ports.port_vars[l].size(); ++p) {
        state[l][p] = integral(ports.port_vars[l][p]) == 1;
      }
    }
  }
  return state;
}

namespace {

void require_solution(const milp::MilpSolution& solution) {
  if (!solution.has_solution()) {
    throw ExtractionError(std::string("no solution to extract (status ") +
                          milp::to_string(solution.status) + ")");
  }
}

}  // namespace

LcState extract_state(const milp::MilpSolution& solution, const McfLcModel& model,
                      const Network& network) {
  require_solution(solution);
  LcState state;
  state.active = extract_ports(solution.values, model.ports, network);
  McfFlows flows;
  flows.per_source = model.flows.per_source;
  flows.roots = model.flows.roots;
  for (const auto& vars : model.flows.flow) {
    std::vector<double> values(network.num_arcs(), 0.0);
    for (ArcId a = 0; a < network.num_arcs(); ++a) {
      if (vars[a] >= 0) values[a] = solution.values[vars[a]];
    }
    flows.values.push_back(std::move(values));
  }
  state.flows = std::move(flows);
  return state;
}

std::vector<double> normalize_fractions(std::vector<double> fractions) {
  double sum = 0;
  for (double& f : fractions) {
    f = std::max(f, 0.0);
    sum += f;
  }
  if (std::abs(sum - 1) > 1e-6) {
    throw ExtractionError("split fractions sum to " + std::to_string(sum));
  }
  for (double& f : fractions) f /= sum;
  return fractions;
}

LcState extract_state(const milp::MilpSolution& solution, const SrLcModel& model,
                      const Network& network) {
  require_solution(solution);
  LcState state;
  state.active = extract_ports(solution.values, model.ports, network);
  SrPolicy policy;
  std::size_t i = 0;
  while (i < model.choices.size()) {
    std::size_t j = i;
    std::vector<double> raw;
    while (j < model.choices.size() && model.choices[j].src == model.choices[i].src &&
           model.choices[j].dst == model.choices[i].dst) {
      raw.push_back(solution.values[model.choices[j].var]);
      ++j;
    }
    const auto fractions = normalize_fractions(std::move(raw));
    for (std::size_t c = i; c < j; ++c) {
      if (fractions[c - i] > 0) {
        policy.push_back({model.choices[c].src, model.choices[c].dst, model.choices[c].via,
                          fractions[c - i]});
      }
    }
    i = j;
  }
  state.policy = std::move(policy);
  return state;
}

VerificationReport verify(const Network& network, const TrafficMatrix& tm,
                          const LcParams& params, const LcState& state,
                          const FractionTable* table) {
  VerificationReport report;
  try {
    check_state_shape(network, state.active);
  } catch (const ModelError& e) {
    report.findings.push_back(std::string("state-shape: ") + e.what());
    return report;
  }
  report.loads.assign(network.num_arcs(), 0.0);
  if (state.flows) {
    const McfFlows& flows = *state.flows;
    for (std::size_t c = 0; c < flows.roots.size(); ++c) {
      const VertexId root = flows.roots[c];
      const auto& values = flows.values[c];
      if (static_cast<int>(values.size()) != network.num_arcs()) {
        report.findings.push_back("flow-shape: commodity " + std::to_string(c));
        continue;
      }
      std::vector<double> expected(network.num_vertices(), 0.0);
      double scale = 0;
      for (VertexId v = 0; v < network.num_vertices(); ++v) {
        if (v == root) continue;
        const double d = flows.per_source ? tm.demand(root, v) : tm.demand(v, root);
        scale += d;
        expected[v] = flows.per_source ? -d : d;
        expected[root] += flows.per_source ? d : -d;
      }
      std::vector<double> net_out(network.num_vertices(), 0.0);
      for (ArcId a = 0; a < network.num_arcs(); ++a) {
        const double f = values[a];
        if (f < 0) {
          report.conservation_residual = std::max(report.conservation_residual, -f / std::max(1.0, scale));
        }
        report.loads[a] += std::max(f, 0.0);
        net_out[network.arc(a).tail] += f;
        net_out[network.arc(a).head] -= f;
      }
      for (VertexId v = 0; v < network.num_vertices(); ++v) {
        report.conservation_residual = std::max(
            report.conservation_residual, std::abs(net_out[v] - expected[v]) / std::max(1.0, scale));
      }
    }
    // Demands whose endpoints are not covered by any commodity root.
    std::set<VertexId> roots(flows.roots.begin(), flows.roots.end());
    for (const auto& e : tm.entries()) {
      if (!roots.count(flows.per_source ? e.src : e.dst)) {
        report.findings.push_back("unrouted-demand: " + network.label(e.src) + " -> " +
                                  network.label(e.dst));
      }
    }
  } else if (state.policy) {
    FractionTable own;
    if (table == nullptr) {
      own = compute_fraction_table<double>(network);
      table = &own;
    }
    std::map<std::pair<VertexId, VertexId>, double> sums;
    for (const SrPolicyEntry& e : *state.policy) {
      if (e.via == e.src) report.findings.push_back("policy-intermediate-is-source");
      sums[{e.src, e.dst}] += e.fraction;
    }
    for (const auto& e : tm.entries()) {
      const auto it = sums.find({e.src, e.dst});
      report.policy_residual =
          std::max(report.policy_residual, std::abs((it == sums.end() ? 0.0 : it->second) - 1));
    }
    if (report.policy_residual <= 1e-6) {
      try {
        report.loads = policy_arc_loads(network, tm, *state.policy, *table);
      } catch (const RoutingError& e) {
        report.findings.push_back(std::string("policy-route: ") + e.what());
      }
    }
  } else if (tm.total() > 0) {
    report.findings.push_back("state carries no routing");
  }
  // Solver round-off leaves loads of order 1e-15 on arcs that carry nothing.
  const double noise = 1e-9 * std::max(1.0, tm.total());
  for (double& load : report.loads) {
    if (std::abs(load) <= noise) load = 0;
  }
  try {
    report.mlu = mlu(network, report.loads, state.active);
    report.mlu_ok = report.mlu <= params.theta * (1 + 1e-9);
    if (!report.mlu_ok) {
      report.findings.push_back("mlu-above-threshold: " + std::to_string(report.mlu));
    }
  } catch (const InfeasibleStateError& e) {
    report.findings.push_back(std::string("infeasible-arc: ") + e.what());
    report.mlu_ok = false;
  }
  for (VertexId v = 0; v < network.num_vertices(); ++v) {
    report.active_linecards += active_linecards_at(network, state.active, v, params.k);
  }
  if (report.conservation_residual > 1e-6) report.findings.push_back("conservation-residual");
  if (report.policy_residual > 1e-6) report.findings.push_back("policy-residual");
  report.pass = report.findings.empty();
  return report;
}

LcMetrics metrics(const ActivePorts& active, const Network& network, int k,
                  double watts_per_linecard) {
  if (k < 1) throw ModelError("ports per linecard must be at least 1");
  check_state_shape(network, active);
  LcMetrics out;
  std::vector<int> active_ports(network.num_vertices(), 0);
  for (LinkId l = 0; l < network.num_links(); ++l) {
    const int n = count_active(active[l]);
    active_ports[network.link(l).u] += n;
    active_ports[network.link(l).v] += n;
  }
  for (VertexId v = 0; v < network.num_vertices(); ++v) {
    const int ports = network.backbone_ports(v);
    const int customer = network.customer_ports(v);
    const int baseline = ceil_div(ports + customer, k);
    const int deactivatable = std::min(ports / k, baseline - ceil_div(customer, k));
    const int needed = ceil_div(active_ports[v] + customer, k);
    out.objective_linecards += ceil_div(active_ports[v], k);
    out.baseline_linecards += baseline;
    out.deactivatable_linecards += deactivatable;
    out.inactive_linecards += std::clamp(baseline - needed, 0, deactivatable);
  }
  if (out.deactivatable_linecards > 0) {
    out.inactive_fraction =
        static_cast<double>(out.inactive_linecards) / out.deactivatable_linecards;
  }
  out.power_saving_w = out.inactive_linecards * watts_per_linecard;
  return out;
}

double min_mlu_mcf(const Network& network, const TrafficMatrix& tm) {
  require_connected_demands(network, tm);
  if (tm.total() == 0) return 0;
  MilpModel m("min_mlu");
  std::vector<std::vector<Term>> arc_terms;
  add_flow_structure(m, network, tm, 0, arc_terms);
  const VarId alpha = m.add_variable("mlu", VarKind::kContinuous, 0, milp::kInf, 1);
  for (ArcId a = 0; a < network.num_arcs(); ++a) {
    auto terms = std::move(arc_terms[a]);
    terms.push_back({alpha, -network.link(network.arc(a).link).ports.total_capacity()});
    m.add_constraint("cap_" + std::to_string(a), std::move(terms), RowSense::kLessEqual, 0);
  }
  const auto lp = milp::solve_lp(m);
  if (lp.status != milp::LpStatus::kOptimal) {
    throw BuildError(std::string("min-MLU LP ended with status ") + milp::to_string(lp.status));
  }
  return lp.values[alpha];
}

std::optional<McfFlows> route_mcf(const Network& network, const TrafficMatrix& tm,
                                  double theta, const ActivePorts& active) {
  check_state_shape(network, active);
  require_connected_demands(network, tm);
  MilpModel m("route");
  std::vector<std::vector<Term>> arc_terms;
  const McfFlowMap map = add_flow_structure(m, network, tm, 1, arc_terms);
  for (ArcId a = 0; a < network.num_arcs(); ++a) {
    const double cap = theta * arc_capacity(network, network.arc(a).link, active[network.arc(a).link]);
    if (arc_terms[a].empty()) continue;
    m.add_constraint("cap_" + std::to_string(a), std::move(arc_terms[a]), RowSense::kLessEqual, cap);
  }
  const auto lp = milp::solve_lp(m);
  if (lp.status != milp::LpStatus::kOptimal) return std::nullopt;
  McfFlows flows;
  flows.per_source = map.per_source;
  flows.roots = map.roots;
  for (const auto& vars : map.flow) {
    std::vector<double> values(network.num_arcs(), 0.0);
    for (ArcId a = 0; a < network.num_arcs(); ++a) {
      if (vars[a] >= 0) values[a] = std::max(0.0, lp.values[vars[a]]);
    }
    flows.values.push_back(std::move(values));
  }
  return flows;
}

TrafficMatrix gravity_demands(const Network& network, std::uint64_t seed, double target_mlu) {
  if (!(target_mlu > 0)) throw BuildError("target MLU must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> spread(0.5, 1.5);
  std::vector<double> mass(network.num_vertices(), 0.0);
  for (const ArcPair& link : network.links()) {
    mass[link.u] += link.ports.total_capacity();
    mass[link.v] += link.ports.total_capacity();
  }
  for (double& m : mass) m *= spread(rng);
  TrafficMatrix tm(network.num_vertices());
  for (VertexId x = 0; x < network.num_vertices(); ++x) {
    for (VertexId y = 0; y < network.num_vertices(); ++y) {
      if (x != y && mass[x] > 0 && mass[y] > 0) tm.set(x, y, mass[x] * mass[y]);
    }
  }
  const double mlu = min_mlu_mcf(network, tm);
  if (mlu <= 0) return tm;
  TrafficMatrix scaled(network.num_vertices());
  for (const auto& e : tm.entries()) scaled.set(e.src, e.dst, e.volume * target_mlu / mlu);
  return scaled;
}

}  // namespace lcmin
