#include "lcmin/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "lcmin/milp.h"

namespace lcmin::oracle {

bool mcf_feasible(const Network& network, const ActivePorts& active,
                  const TrafficMatrix& tm, double theta) {
  check_state_shape(network, active);
  const auto demands = tm.entries();
  if (demands.empty()) return true;
  milp::MilpModel m("feasibility");
  std::vector<std::vector<milp::Term>> load(network.num_arcs());
  for (std::size_t c = 0; c < demands.size(); ++c) {
    std::vector<std::vector<milp::Term>> balance(network.num_vertices());
    for (ArcId a = 0; a < network.num_arcs(); ++a) {
      const milp::VarId f = m.add_variable("f" + std::to_string(c) + "_" + std::to_string(a),
                                           milp::VarKind::kContinuous, 0, milp::kInf);
      load[a].push_back({f, 1});
      balance[network.arc(a).tail].push_back({f, 1});
      balance[network.arc(a).head].push_back({f, -1});
    }
    for (VertexId v = 0; v < network.num_vertices(); ++v) {
      double rhs = 0;
      if (v == demands[c].src) rhs = demands[c].volume;
      if (v == demands[c].dst) rhs = -demands[c].volume;
      m.add_constraint("b" + std::to_string(c) + "_" + std::to_string(v), std::move(balance[v]),
                       milp::RowSense::kEqual, rhs);
    }
  }
  for (ArcId a = 0; a < network.num_arcs(); ++a) {
    const LinkId l = network.arc(a).link;
    double cap = 0;
    for (int p = 0; p < network.link(l).ports.size(); ++p) {
      if (active[l][p]) cap += network.link(l).ports.capacities[p];
    }
    m.add_constraint("c" + std::to_string(a), std::move(load[a]), milp::RowSense::kLessEqual,
                     theta * cap);
  }
  const auto lp = milp::solve_lp(m);
  if (lp.status == milp::LpStatus::kOptimal) return true;
  if (lp.status == milp::LpStatus::kInfeasible) return false;
  throw milp::MilpError(std::string("feasibility LP ended with status ") + milp::to_string(lp.status));
}

namespace {

// One port subset per option; uniform links only need one subset per count.
struct LinkOptions {
  std::vector<PortMask> masks;
  std::vector<int> counts;
};

LinkOptions options_for(const PortGroup& ports) {
  LinkOptions out;
  const int n = ports.size();
  if (ports.uniform() || n == 0) {
    for (int c = 0; c <= n; ++c) {
      PortMask mask(n, false);
      std::fill(mask.begin(), mask.begin() + c, true);
      out.masks.push_back(std::move(mask));
      out.counts.push_back(c);
    }
    return out;
  }
  if (n > 20) throw OracleRefusal("link with too many distinct ports");
  for (unsigned bits = 0; bits < (1u << n); ++bits) {
    PortMask mask(n);
    for (int p = 0; p < n; ++p) mask[p] = (bits >> p & 1) != 0;
    out.masks.push_back(std::move(mask));
    out.counts.push_back(std::popcount(bits));
  }
  return out;
}

class Search {
 public:
  Search(const Network& network, const TrafficMatrix& tm, double theta, int k)
      : net_(network), tm_(tm), theta_(theta), k_(k), ports_(network.num_vertices(), 0),
        choice_(network.num_links(), 0) {
    for (LinkId l = 0; l < network.num_links(); ++l) options_.push_back(options_for(network.link(l).ports));
  }

  double states() const {
    double total = 1;
    for (const auto& o : options_) total *= static_cast<double>(o.masks.size());
    return total;
  }

  int cards(int ports) const { return (ports + k_ - 1) / k_; }

  int objective() const {
    int total = 0;
    for (int p : ports_) total += cards(p);
    return total;
  }

  std::optional<ActivePorts> level(int target) {
    target_ = target;
    found_.reset();
    visit(0, 0);
    return found_;
  }

 private:
  // Objective of the assigned links so far; unassigned links add nothing yet
  // and can only raise it.
  void visit(LinkId l, int partial) {
    if (found_ || partial > target_) return;
    if (l == net_.num_links()) {
      if (partial == target_ && maximal()) test();
      return;
    }
    const auto& link = net_.link(l);
    for (std::size_t o = 0; o < options_[l].masks.size() && !found_; ++o) {
      const int c = options_[l].counts[o];
      const int before = cards(ports_[link.u]) + cards(ports_[link.v]);
      ports_[link.u] += c;
      ports_[link.v] += c;
      const int after = cards(ports_[link.u]) + cards(ports_[link.v]);
      choice_[l] = static_cast<int>(o);
      // Adding ports never hurts, so if the links still open cannot rescue
      // this choice with all their ports on, no completion can.
      if (c == link.ports.size() || (partial - before + after <= target_ && completable(l))) {
        visit(l + 1, partial - before + after);
      }
      ports_[link.u] -= c;
      ports_[link.v] -= c;
    }
  }

  // No link can switch on another port without an extra linecard.
  bool maximal() const {
    for (LinkId l = 0; l < net_.num_links(); ++l) {
      const auto& link = net_.link(l);
      if (options_[l].counts[choice_[l]] == link.ports.size()) continue;
      if (cards(ports_[link.u] + 1) == cards(ports_[link.u]) &&
          cards(ports_[link.v] + 1) == cards(ports_[link.v])) {
        return false;
      }
    }
    return true;
  }

  bool completable(LinkId last) {
    ActivePorts state(net_.num_links());
    for (LinkId l = 0; l < net_.num_links(); ++l) {
      state[l] = l <= last ? options_[l].masks[choice_[l]] : PortMask(net_.link(l).ports.size(), true);
    }
    return mcf_feasible(net_, state, tm_, theta_);
  }

  void test() {
    ActivePorts state(net_.num_links());
    for (LinkId l = 0; l < net_.num_links(); ++l) state[l] = options_[l].masks[choice_[l]];
    if (mcf_feasible(net_, state, tm_, theta_)) found_ = std::move(state);
  }

  const Network& net_;
  const TrafficMatrix& tm_;
  double theta_;
  int k_;
  std::vector<LinkOptions> options_;
  std::vector<int> ports_;
  std::vector<int> choice_;
  int target_ = 0;
  std::optional<ActivePorts> found_;
};

}  // namespace

std::optional<LcOptimum> brute_force_lc_mcfs(const Network& network, const TrafficMatrix& tm,
                                             double theta, int k, double max_states) {
  if (k < 1) throw ModelError("ports per linecard must be at least 1");
  Search search(network, tm, theta, k);
  if (search.states() > max_states) {
    throw OracleRefusal("instance has " + std::to_string(search.states()) +
                        " port choices, over the budget");
  }
  ActivePorts all = all_ports_active(network);
  if (!mcf_feasible(network, all, tm, theta)) return std::nullopt;
  int top = 0;
  for (VertexId v = 0; v < network.num_vertices(); ++v) top += (network.backbone_ports(v) + k - 1) / k;
  for (int target = 0; target <= top; ++target) {
    if (auto state = search.level(target)) return LcOptimum{target, std::move(*state)};
  }
  return LcOptimum{top, std::move(all)};
}

std::optional<int> brute_force_set_cover(const SetCoverInstance& sc) {
  const int sigma = static_cast<int>(sc.sets.size());
  if (sigma > 20) throw OracleRefusal("set cover oracle handles at most 20 sets");
  const int items = static_cast<int>(sc.universe.size());
  std::vector<std::uint64_t> bits(sigma, 0);
  for (int s = 0; s < sigma; ++s) {
    for (int u : sc.sets[s]) bits[s] |= std::uint64_t{1} << u;
  }
  if (items > 64) throw OracleRefusal("set cover oracle handles at most 64 items");
  const std::uint64_t full = items == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << items) - 1;
  std::optional<int> best;
  for (std::uint32_t mask = 0; mask < (1u << sigma); ++mask) {
    const int size = std::popcount(mask);
    if (best && size >= *best) continue;
    std::uint64_t covered = 0;
    for (int s = 0; s < sigma; ++s) {
      if (mask >> s & 1) covered |= bits[s];
    }
    if (covered == full) best = size;
  }
  return best;
}

}  // namespace lcmin::oracle
