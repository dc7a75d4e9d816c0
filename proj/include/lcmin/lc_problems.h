#ifndef LCMIN_LC_PROBLEMS_H
#define LCMIN_LC_PROBLEMS_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcmin/igp_routing.h"
#include "lcmin/milp.h"
#include "lcmin/netmodel.h"

namespace lcmin {

class BuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExtractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LcParams {
  double theta = 0.7;
  int k = 8;
};

// kAggregated uses one integer active-port count per link and needs every
// port of the link to have the same capacity; kPerPort uses one binary per
// port; kAuto aggregates where possible.
enum class PortEncoding { kAuto, kPerPort, kAggregated };

struct PortVarMap {
  std::vector<std::vector<milp::VarId>> port_vars;  // per link, per port; empty when counted
  std::vector<milp::VarId> count_vars;              // per link; -1 when per port
  std::vector<milp::VarId> linecard_vars;           // per vertex; -1 without backbone ports
};

// One commodity per root vertex: a source whose demands are aggregated over
// destinations, or a sink aggregated over sources.
struct McfFlowMap {
  bool per_source = true;
  std::vector<VertexId> roots;
  std::vector<std::vector<milp::VarId>> flow;  // [commodity][arc], -1 when omitted
};

struct McfLcModel {
  milp::MilpModel model;
  PortVarMap ports;
  McfFlowMap flows;
  std::vector<milp::RowId> capacity_rows;  // per arc
};

struct SrChoice {
  VertexId src;
  VertexId dst;
  VertexId via;
  milp::VarId var;
};

struct SrLcModel {
  milp::MilpModel model;
  PortVarMap ports;
  std::vector<SrChoice> choices;  // grouped by demand
  std::vector<milp::RowId> capacity_rows;  // per arc, -1 when no load can reach the arc
};

McfLcModel build_mcf_lc(const Network& network, const TrafficMatrix& tm,
                        const LcParams& params,
                        PortEncoding encoding = PortEncoding::kAuto);

// Intermediates range over V \ {u}; via == v is the direct route. Routes
// through unreachable segments are left out.
SrLcModel build_2sr_lc(const Network& network, const TrafficMatrix& tm,
                       const LcParams& params, const FractionTable& table,
                       PortEncoding encoding = PortEncoding::kAuto);

// Rounds port counts up, recomputes linecard counts and keeps the routing
// part of the relaxation. Raising capacity never breaks a capacity row, so
// this is feasible whenever the routing part is.
milp::RoundingHeuristic port_rounding(const milp::MilpModel& model,
                                      const PortVarMap& ports,
                                      const Network& network, int k);

struct McfFlows {
  bool per_source = true;
  std::vector<VertexId> roots;
  std::vector<std::vector<double>> values;  // [commodity][arc]
};

struct LcState {
  ActivePorts active;
  std::optional<McfFlows> flows;
  std::optional<SrPolicy> policy;
};

ActivePorts extract_ports(std::span<const double> values, const PortVarMap& ports,
                          const Network& network);
LcState extract_state(const milp::MilpSolution& solution, const McfLcModel& model,
                      const Network& network);
LcState extract_state(const milp::MilpSolution& solution, const SrLcModel& model,
                      const Network& network);

// Fractions for one demand, negative values clamped, scaled to sum to 1.
// Throws ExtractionError when the raw sum is more than 1e-6 away from 1.
std::vector<double> normalize_fractions(std::vector<double> fractions);

struct VerificationReport {
  double conservation_residual = 0;  // MCF states
  double policy_residual = 0;        // 2SR states
  ArcLoads loads;
  double mlu = 0;
  bool mlu_ok = false;
  int active_linecards = 0;
  bool pass = false;
  std::vector<std::string> findings;
};

// Recomputes loads from the routing in the state and checks conservation (or
// policy sums), MLU <= theta * (1 + 1e-9) and arc activity. Never throws on
// a bad state; problems are listed in findings.
VerificationReport verify(const Network& network, const TrafficMatrix& tm,
                          const LcParams& params, const LcState& state,
                          const FractionTable* table = nullptr);

struct LcMetrics {
  int objective_linecards = 0;  // sum over vertices of ceil(active ports / k)
  int baseline_linecards = 0;
  int deactivatable_linecards = 0;
  int inactive_linecards = 0;
  std::optional<double> inactive_fraction;
  double power_saving_w = 0;
};

inline constexpr double kDefaultLinecardWatts = 1100;

// Baseline counts every card a vertex needs with all ports on, customer ports
// included. A card is deactivatable when it can hold backbone ports only.
// Inactive cards are the baseline minus the cards needed for the active
// backbone ports plus the always-on customer ports.
LcMetrics metrics(const ActivePorts& active, const Network& network, int k,
                  double watts_per_linecard = kDefaultLinecardWatts);

// Minimum achievable MLU with all ports active and unrestricted fractional
// routing. Throws BuildError when a demand has no path.
double min_mlu_mcf(const Network& network, const TrafficMatrix& tm);

// Fractional flows routing tm within theta times the active capacities, or
// nullopt when none exist.
std::optional<McfFlows> route_mcf(const Network& network, const TrafficMatrix& tm,
                                  double theta, const ActivePorts& active);

// Gravity-model demands for a topology without a traffic matrix: every
// vertex gets a random mass times its total incident capacity, d_xy is
// proportional to mass_x * mass_y, and the matrix is scaled so that
// min_mlu_mcf equals target_mlu. Deterministic for a given seed.
TrafficMatrix gravity_demands(const Network& network, std::uint64_t seed,
                              double target_mlu = 0.9);

}  // namespace lcmin

#endif  // LCMIN_LC_PROBLEMS_H
