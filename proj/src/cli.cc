#include "lcmin/cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "lcmin/hardness_gen.h"
#include "lcmin/igp_routing.h"

namespace lcmin::cli {

StageError::StageError(std::string stage, const std::string& message)
    : std::runtime_error("[" + stage + "] " + message), stage_(std::move(stage)) {}

double default_time_limit(double fallback) {
  const char* raw = std::getenv(kTimeLimitEnv);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const double value = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(value > 0)) {
    throw StageError("args", std::string(kTimeLimitEnv) + " must be a positive number of seconds, got '" +
                                 raw + "'");
  }
  return value;
}

namespace {

// Runs fn, rethrowing anything it throws as a StageError for `stage`.
template <class Fn>
auto in_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::string read_input(const std::string& path, const char* what) {
  if (path.empty()) throw StageError("parse", std::string("no ") + what + " file given");
  return in_stage("parse", [&] { return read_text_file(path); });
}

ExpandOptions expand_options(const ExpansionFlags& flags) {
  ExpandOptions options;
  options.parallel_count = flags.parallel;
  options.k = flags.k;
  options.capacity_multiplier = flags.capacity_multiplier;
  options.one_way = flags.one_way;
  if (!flags.port_overrides.empty()) {
    const std::string text = read_input(flags.port_overrides, "port override");
    options.overrides = in_stage("parse", [&] { return parse_port_overrides(text); });
  }
  return options;
}

const char* status_word(milp::MilpStatus status) {
  switch (status) {
    case milp::MilpStatus::kOptimal: return "optimal";
    case milp::MilpStatus::kFeasible: return "feasible";
    case milp::MilpStatus::kInfeasible: return "infeasible";
    case milp::MilpStatus::kTimeLimit: return "time_limit";
  }
  return "unknown";
}

std::vector<LinkReport> link_reports(const Network& net, const ActivePorts& active,
                                     const std::vector<std::string>& labels) {
  std::vector<LinkReport> out;
  for (LinkId l = 0; l < net.num_links(); ++l) {
    const ArcPair& link = net.link(l);
    LinkReport r;
    r.label = labels[l];
    r.src = net.label(link.u);
    r.dest = net.label(link.v);
    r.active_ports = count_active(active[l]);
    r.total_ports = link.ports.size();
    bool uniform = true;
    for (double c : link.ports.capacities) uniform = uniform && c == link.ports.capacities.front();
    if (!uniform) {
      std::string mask;
      for (bool on : active[l]) mask += on ? '1' : '0';
      r.mask = mask;
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Inverse of link_reports. Ports with equal capacity are interchangeable, so
// a count is enough for uniform links.
ActivePorts active_from_reports(const Network& net, const std::vector<LinkReport>& links,
                                const std::vector<std::string>& labels) {
  if (static_cast<int>(links.size()) != net.num_links()) {
    throw StageError("verify", "report lists " + std::to_string(links.size()) + " links, network has " +
                                   std::to_string(net.num_links()));
  }
  ActivePorts active(net.num_links());
  for (LinkId l = 0; l < net.num_links(); ++l) {
    const LinkReport& r = links[l];
    const int n = net.link(l).ports.size();
    if (r.label != labels[l]) {
      throw StageError("verify", "link " + std::to_string(l) + " is '" + labels[l] + "' but the report says '" +
                                     r.label + "'");
    }
    if (r.total_ports != n || r.active_ports < 0 || r.active_ports > n) {
      throw StageError("verify", "port counts of link '" + r.label + "' do not match the network");
    }
    PortMask mask(n, false);
    if (r.mask) {
      if (static_cast<int>(r.mask->size()) != n) {
        throw StageError("verify", "mask of link '" + r.label + "' has the wrong length");
      }
      for (int p = 0; p < n; ++p) mask[p] = (*r.mask)[p] == '1';
      if (count_active(mask) != r.active_ports) {
        throw StageError("verify", "mask of link '" + r.label + "' disagrees with its active count");
      }
    } else {
      std::fill(mask.begin(), mask.begin() + r.active_ports, true);
    }
    active[l] = std::move(mask);
  }
  return active;
}

VertexId vertex_by_label(const std::map<std::string, VertexId>& index, const std::string& label) {
  const auto it = index.find(label);
  if (it == index.end()) throw StageError("verify", "unknown vertex '" + label + "' in policy");
  return it->second;
}

std::unique_ptr<milp::MilpSolver> make_solver(const SolveOptions& options) {
  if (options.solver_command.empty()) return std::make_unique<milp::BranchAndBoundSolver>();
  std::string dir = options.work_dir;
  if (dir.empty()) dir = std::filesystem::temp_directory_path().string();
  return std::make_unique<milp::LpFileSolver>(options.solver_command, dir);
}

struct Solved {
  milp::MilpSolution solution;
};

}  // namespace

LoadedInstance load_instance(const std::string& graph_path, const std::string& demands_path,
                             double scale, const ExpansionFlags& flags) {
  LoadedInstance out;
  const std::string graph_text = read_input(graph_path, "graph");
  const std::string demand_text = read_input(demands_path, "demands");
  out.raw = in_stage("parse", [&] { return parse_repetita_graph(graph_text); });
  const TrafficMatrix raw_demands = in_stage(
      "parse", [&] { return parse_repetita_demands(demand_text, static_cast<int>(out.raw.nodes.size())); });
  out.demands = in_stage("scale", [&] { return scale_demands(raw_demands, scale); });
  const ExpandOptions options = expand_options(flags);
  out.network = in_stage("expand", [&] {
    Network net = expand_to_ports(out.raw, options);
    require_valid(net);
    return net;
  });
  out.link_labels = in_stage("expand", [&] { return link_labels(out.raw, flags.one_way); });
  return out;
}

SolveOutcome run_solve(const SolveOptions& options, std::ostream& log) {
  SolveOutcome outcome;
  try {
    if (options.algorithm != "mcf" && options.algorithm != "2sr") {
      throw StageError("args", "unknown algorithm '" + options.algorithm + "' (mcf or 2sr)");
    }
    const LoadedInstance inst = load_instance(options.graph, options.demands, options.scale, options.expansion);
    outcome.num_vertices = static_cast<int>(inst.raw.nodes.size());
    outcome.num_edges = static_cast<int>(inst.raw.edges.size());
    const Network& net = inst.network;
    const LcParams params{options.theta, options.expansion.k};
    const bool mcf = options.algorithm == "mcf";

    std::optional<McfLcModel> mcf_model;
    std::optional<SrLcModel> sr_model;
    std::optional<FractionTable> table;
    in_stage("build", [&] {
      if (mcf) {
        mcf_model = build_mcf_lc(net, inst.demands, params, options.encoding);
      } else {
        table = compute_fraction_table<double>(net);
        sr_model = build_2sr_lc(net, inst.demands, params, *table, options.encoding);
      }
      return 0;
    });
    const milp::MilpModel& model = mcf ? mcf_model->model : sr_model->model;
    const PortVarMap& ports = mcf ? mcf_model->ports : sr_model->ports;
    log << "[build] " << options.algorithm << ": " << model.num_vars() << " variables, "
        << model.num_rows() << " rows\n";

    if (!options.export_lp.empty()) {
      in_stage("write", [&] {
        write_text_file(options.export_lp, milp::export_lp_text(model));
        return 0;
      });
      log << "[write] LP model written to " << options.export_lp << "\n";
    }
    if (options.no_solve) {
      outcome.exit_code = kExitOk;
      outcome.message = "model built, solve skipped";
      return outcome;
    }

    const Solved solved = in_stage("solve", [&] {
      milp::MilpBudget budget;
      budget.time_limit_s = options.time_limit_s > 0 ? options.time_limit_s : milp::kInf;
      budget.rounding = port_rounding(model, ports, net, options.expansion.k);
      auto solver = make_solver(options);
      Solved s;
      s.solution = solver->solve(model, budget);
      return s;
    });
    const milp::MilpSolution& solution = solved.solution;
    outcome.status = solution.status;
    log << "[solve] " << status_word(solution.status) << " after " << solution.nodes << " nodes, "
        << solution.wall_time_s << " s\n";
    if (solution.status == milp::MilpStatus::kInfeasible) {
      outcome.exit_code = kExitInfeasible;
      outcome.message = "no port configuration meets the MLU bound";
      return outcome;
    }
    if (solution.status == milp::MilpStatus::kTimeLimit) {
      outcome.exit_code = kExitTimeLimit;
      outcome.message = "time limit reached without a feasible solution";
      return outcome;
    }

    const LcState state = in_stage("extract", [&] {
      return mcf ? extract_state(solution, *mcf_model, net) : extract_state(solution, *sr_model, net);
    });
    const VerificationReport check = in_stage("verify", [&] {
      return verify(net, inst.demands, params, state, table ? &*table : nullptr);
    });
    outcome.verification = check;
    if (!check.pass) {
      std::string joined;
      for (const auto& f : check.findings) joined += (joined.empty() ? "" : "; ") + f;
      throw StageError("verify", "solution failed verification: " + joined);
    }
    const LcMetrics m = in_stage("metrics", [&] {
      return metrics(state.active, net, options.expansion.k, options.watts);
    });

    SolveReportDocument doc;
    doc.instance = options.instance.empty() ? stem_of(options.graph) : options.instance;
    doc.algorithm = options.algorithm;
    doc.status = status_word(solution.status);
    doc.objective_linecards = m.objective_linecards;
    doc.baseline_linecards = m.baseline_linecards;
    doc.deactivatable_linecards = m.deactivatable_linecards;
    doc.inactive_fraction = m.inactive_fraction;
    doc.mlu = check.mlu;
    doc.theta = options.theta;
    doc.k = options.expansion.k;
    doc.scale = options.scale;
    doc.parallel = options.expansion.parallel;
    doc.runtime_s = solution.wall_time_s;
    if (std::isfinite(solution.best_bound)) doc.best_bound = solution.best_bound;
    doc.links = link_reports(net, state.active, inst.link_labels);
    if (state.policy) {
      std::vector<PolicyReport> policy;
      for (const SrPolicyEntry& e : *state.policy) {
        policy.push_back(PolicyReport{net.label(e.src), net.label(e.dst), net.label(e.via), e.fraction});
      }
      doc.policy = std::move(policy);
    }
    doc.power_saving_w = m.power_saving_w;
    outcome.report = doc;

    if (!options.out.empty()) {
      in_stage("write", [&] {
        write_text_file(options.out, write_report(doc));
        return 0;
      });
      log << "[write] report written to " << options.out << "\n";
    }
    outcome.exit_code = kExitOk;
    outcome.message = std::string(status_word(solution.status)) + ": " +
                      std::to_string(m.objective_linecards) + " linecards, mlu " + std::to_string(check.mlu);
  } catch (const StageError& e) {
    outcome.exit_code = kExitError;
    outcome.message = e.what();
  }
  return outcome;
}

ReportCheck check_report(const SolveReportDocument& report, const std::string& graph_path,
                         const std::string& demands_path, const ExpansionFlags& flags) {
  ExpansionFlags effective = flags;
  effective.parallel = report.parallel;
  effective.k = report.k;
  const LoadedInstance inst = load_instance(graph_path, demands_path, report.scale, effective);
  const Network& net = inst.network;
  const LcParams params{report.theta, report.k};

  LcState state;
  state.active = active_from_reports(net, report.links, inst.link_labels);
  std::optional<FractionTable> table;
  ReportCheck out;
  if (report.algorithm == "2sr") {
    if (!report.policy) throw StageError("verify", "2sr report without a policy");
    std::map<std::string, VertexId> index;
    for (VertexId v = 0; v < net.num_vertices(); ++v) index[net.label(v)] = v;
    SrPolicy policy;
    for (const PolicyReport& p : *report.policy) {
      policy.push_back(SrPolicyEntry{vertex_by_label(index, p.src), vertex_by_label(index, p.dst),
                                     vertex_by_label(index, p.via), p.fraction});
    }
    state.policy = std::move(policy);
    table = in_stage("verify", [&] { return compute_fraction_table<double>(net); });
  } else if (report.algorithm == "mcf") {
    // The report carries ports only; any routing within theta proves it.
    state.flows = in_stage("verify", [&] { return route_mcf(net, inst.demands, report.theta, state.active); });
    if (!state.flows) {
      out.findings.push_back("no flow routes the demands within theta on the reported ports");
    }
  } else {
    throw StageError("verify", "unknown algorithm '" + report.algorithm + "' in report");
  }

  if (report.algorithm == "2sr" || state.flows) {
    out.verification = verify(net, inst.demands, params, state, table ? &*table : nullptr);
    if (report.algorithm == "2sr" && std::abs(out.verification.mlu - report.mlu) > 1e-6) {
      out.findings.push_back("reported mlu " + std::to_string(report.mlu) + " but the policy gives " +
                             std::to_string(out.verification.mlu));
    }
  }
  const LcMetrics m = metrics(state.active, net, report.k);
  if (m.objective_linecards != report.objective_linecards) {
    out.findings.push_back("reported " + std::to_string(report.objective_linecards) +
                           " linecards but the ports need " + std::to_string(m.objective_linecards));
  }
  if (m.baseline_linecards != report.baseline_linecards ||
      m.deactivatable_linecards != report.deactivatable_linecards) {
    out.findings.push_back("baseline or deactivatable linecard counts do not match the network");
  }
  if (report.mlu > report.theta * (1 + 1e-9)) {
    out.findings.push_back("reported mlu exceeds theta");
  }
  out.pass = out.findings.empty() && out.verification.pass;
  return out;
}

std::string compare_row(const std::string& instance, const SolveOutcome& mcf, const SolveOutcome& sr) {
  auto cell = [](const SolveOutcome& o, auto&& field) -> std::string {
    if (o.report) return field(*o.report);
    std::string msg = o.message.empty() ? "error" : o.message;
    for (char& c : msg) {
      if (c == ',' || c == '\n' || c == '"') c = ' ';
    }
    return msg;
  };
  auto fmt = [](const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return std::string(buf);
  };
  const int vertices = std::max(mcf.num_vertices, sr.num_vertices);
  const int edges = std::max(mcf.num_edges, sr.num_edges);
  const bool both_optimal = mcf.report && sr.report && mcf.report->status == "optimal" &&
                            sr.report->status == "optimal" && mcf.report->objective_linecards > 0;
  std::string ratio = "NA";
  if (both_optimal) {
    ratio = fmt("%.4f", static_cast<double>(sr.report->objective_linecards) / mcf.report->objective_linecards);
  }
  std::ostringstream row;
  row << instance << ',' << vertices << ',' << edges << ','
      << cell(mcf, [](const SolveReportDocument& d) { return std::to_string(d.objective_linecards); }) << ','
      << cell(sr, [](const SolveReportDocument& d) { return std::to_string(d.objective_linecards); }) << ','
      << ratio << ','
      << cell(mcf, [&](const SolveReportDocument& d) { return fmt("%.3f", d.runtime_s); }) << ','
      << cell(sr, [&](const SolveReportDocument& d) { return fmt("%.3f", d.runtime_s); }) << ','
      << cell(mcf, [&](const SolveReportDocument& d) { return fmt("%.6f", d.mlu); }) << ','
      << cell(sr, [&](const SolveReportDocument& d) { return fmt("%.6f", d.mlu); });
  return row.str();
}

namespace {

void add_expansion_flags(CLI::App* cmd, ExpansionFlags& flags, bool with_layout) {
  if (with_layout) {
    cmd->add_option("--parallel", flags.parallel, "ports per link")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--k", flags.k, "ports per linecard")->check(CLI::PositiveNumber)->capture_default_str();
  }
  cmd->add_option("--capacity-multiplier", flags.capacity_multiplier, "factor applied to every bandwidth")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--one-way", flags.one_way, "every GRAPH edge is its own one-way link");
  cmd->add_option("--port-overrides", flags.port_overrides, "file of '<edge label> <ports>' lines");
}

void add_solve_flags(CLI::App* cmd, SolveOptions& o) {
  cmd->add_option("--theta", o.theta, "MLU bound")->check(CLI::Range(1e-9, 1.0))->capture_default_str();
  cmd->add_option("--scale", o.scale, "demand scaling factor")->check(CLI::NonNegativeNumber)->capture_default_str();
  add_expansion_flags(cmd, o.expansion, true);
  cmd->add_option("--watts", o.watts, "power per linecard")->capture_default_str();
  cmd->add_option("--time-limit", o.time_limit_s,
                  std::string("seconds per solve, 0 for none (default: $") + kTimeLimitEnv + " or 3600)");
  cmd->add_option("--encoding", o.encoding, "port variables: auto, per-port or aggregated")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, PortEncoding>{{"auto", PortEncoding::kAuto},
                                              {"per-port", PortEncoding::kPerPort},
                                              {"aggregated", PortEncoding::kAggregated}}));
  cmd->add_option("--solver-command", o.solver_command,
                  "external solver command; {lp}, {sol} and {time} are substituted");
  cmd->add_option("--work-dir", o.work_dir, "directory for external solver files");
}

int finish(const SolveOutcome& outcome, std::ostream& out, std::ostream& err) {
  (outcome.exit_code == kExitError ? err : out) << outcome.message << "\n";
  return outcome.exit_code;
}

int cmd_compare(const std::vector<std::string>& graphs, const SolveOptions& base, const std::string& csv_path,
                const std::string& report_dir, std::ostream& out, std::ostream& err) {
  std::ostringstream csv;
  csv << kCompareHeader << "\n";
  for (const std::string& graph : graphs) {
    const std::filesystem::path p(graph);
    const std::string demands = (p.parent_path() / (p.stem().string() + ".demands")).string();
    SolveOutcome outcomes[2];
    const char* algos[2] = {"mcf", "2sr"};
    for (int i = 0; i < 2; ++i) {
      SolveOptions o = base;
      o.graph = graph;
      o.demands = demands;
      o.algorithm = algos[i];
      o.instance = p.stem().string();
      if (!report_dir.empty()) {
        o.out = (std::filesystem::path(report_dir) / (o.instance + "." + algos[i] + ".json")).string();
      }
      outcomes[i] = run_solve(o, err);
      if (outcomes[i].exit_code != kExitOk) err << o.instance << " " << algos[i] << ": " << outcomes[i].message << "\n";
    }
    csv << compare_row(p.stem().string(), outcomes[0], outcomes[1]) << "\n";
  }
  if (csv_path.empty()) {
    out << csv.str();
  } else {
    try {
      write_text_file(csv_path, csv.str());
    } catch (const std::exception& e) {
      err << StageError("write", e.what()).what() << "\n";
      return kExitError;
    }
  }
  return kExitOk;
}

int cmd_gen_hardness(const std::string& sets_path, int k, bool duplex, bool literal, const std::string& graph_out,
                     const std::string& demands_out, std::ostream& out, std::ostream& err) {
  try {
    const std::string text = read_input(sets_path, "set cover");
    const SetCoverInstance sc = in_stage("parse", [&] { return parse_set_cover(text); });
    const ReducedInstance inst = in_stage("reduce", [&] {
      if (!duplex) return reduce_set_cover(sc, k);
      return reduce_set_cover_duplex(sc, k, literal ? DuplexDemands::kLiteral : DuplexDemands::kBackArcBlocking);
    });
    const RawTopology raw = to_raw_topology(inst);
    in_stage("write", [&] {
      write_text_file(graph_out, write_repetita_graph(raw));
      write_text_file(demands_out, write_repetita_demands(inst.demands));
      return 0;
    });
    int unit_links = 0;
    for (const ArcPair& l : inst.network.links()) unit_links += l.ports.capacities.front() == 1 ? 1 : 0;
    out << "vertices " << inst.network.num_vertices() << ", links " << inst.network.num_links()
        << " (" << unit_links << " unit capacity), chain length " << inst.chain_length << ", demands "
        << inst.demands.entries().size() << "\n";
    out << "solve with: --scale 1 --parallel 1 --theta 1 --k " << k << (duplex ? "" : " --one-way") << "\n";
    return kExitOk;
  } catch (const StageError& e) {
    err << e.what() << "\n";
    return kExitError;
  }
}

int cmd_verify(const std::string& report_path, const std::string& graph, const std::string& demands,
               const ExpansionFlags& flags, std::ostream& out, std::ostream& err) {
  try {
    const std::string text = read_input(report_path, "report");
    const SolveReportDocument report = in_stage("parse", [&] { return read_report(text); });
    const ReportCheck check = check_report(report, graph, demands, flags);
    for (const auto& f : check.verification.findings) out << "finding: " << f << "\n";
    for (const auto& f : check.findings) out << "finding: " << f << "\n";
    out << (check.pass ? "PASS" : "FAIL") << " " << report.instance << " " << report.algorithm
        << ": " << check.verification.active_linecards << " linecards, mlu " << check.verification.mlu << "\n";
    return check.pass ? kExitOk : kExitError;
  } catch (const StageError& e) {
    err << e.what() << "\n";
    return kExitError;
  }
}

int cmd_synth_demands(const std::string& graph, std::uint64_t seed, double target, const ExpansionFlags& flags,
                      const std::string& out_path, std::ostream& out, std::ostream& err) {
  try {
    const std::string text = read_input(graph, "graph");
    const RawTopology raw = in_stage("parse", [&] { return parse_repetita_graph(text); });
    const ExpandOptions options = expand_options(flags);
    const Network net = in_stage("expand", [&] { return expand_to_ports(raw, options); });
    const TrafficMatrix tm = in_stage("synth", [&] { return gravity_demands(net, seed, target); });
    const std::string body = write_repetita_demands(tm);
    if (out_path.empty()) {
      out << body;
    } else {
      in_stage("write", [&] {
        write_text_file(out_path, body);
        return 0;
      });
      out << tm.entries().size() << " demands, total " << tm.total() << "\n";
    }
    return kExitOk;
  } catch (const StageError& e) {
    err << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linecard minimization for backbone networks"};
  app.require_subcommand(1);

  SolveOptions solve_opts;
  bool quiet = false;
  try {
    solve_opts.time_limit_s = default_time_limit();
  } catch (const StageError& e) {
    err << e.what() << "\n";
    return kExitError;
  }

  auto* solve = app.add_subcommand("solve", "solve one instance and write a report");
  solve->add_option("--graph", solve_opts.graph, "GRAPH file")->required();
  solve->add_option("--demands", solve_opts.demands, "DEMANDS file")->required();
  solve->add_option("--algo", solve_opts.algorithm, "mcf or 2sr")
      ->check(CLI::IsMember({"mcf", "2sr"}))
      ->capture_default_str();
  solve->add_option("--out", solve_opts.out, "report JSON path");
  solve->add_option("--instance", solve_opts.instance, "instance name in the report");
  solve->add_option("--export-lp", solve_opts.export_lp, "write the model in LP format");
  solve->add_flag("--no-solve", solve_opts.no_solve, "stop after building (and exporting) the model");
  solve->add_flag("--quiet", quiet, "no progress lines");
  add_solve_flags(solve, solve_opts);

  SolveOptions compare_opts;
  compare_opts.time_limit_s = solve_opts.time_limit_s;
  std::vector<std::string> compare_graphs;
  std::string csv_path, report_dir;
  auto* compare = app.add_subcommand("compare", "solve both models per instance and write a CSV row each");
  compare->add_option("graphs", compare_graphs, "GRAPH files; demands are read from <stem>.demands alongside");
  compare->add_option("--csv", csv_path, "CSV path (default: stdout)");
  compare->add_option("--report-dir", report_dir, "also write per-instance reports here");
  add_solve_flags(compare, compare_opts);

  std::string sets_path, hard_graph, hard_demands;
  int hard_k = 8;
  bool duplex = false, literal = false;
  auto* gen = app.add_subcommand("gen-hardness", "build a linecard instance from a set cover instance");
  gen->add_option("--sets", sets_path, "set cover file, one set per line")->required();
  gen->add_option("--k", hard_k, "ports per linecard")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_flag("--duplex", duplex, "duplex links with back-arc blocking demands");
  gen->add_flag("--literal", literal, "with --duplex: block back arcs with all-pairs demands");
  gen->add_option("--graph-out", hard_graph, "GRAPH output")->required();
  gen->add_option("--demands-out", hard_demands, "DEMANDS output")->required();

  std::string report_path, verify_graph, verify_demands;
  ExpansionFlags verify_flags;
  auto* ver = app.add_subcommand("verify", "re-check a report against its instance");
  ver->add_option("--report", report_path, "report JSON")->required();
  ver->add_option("--graph", verify_graph, "GRAPH file")->required();
  ver->add_option("--demands", verify_demands, "DEMANDS file")->required();
  add_expansion_flags(ver, verify_flags, false);

  std::string synth_graph, synth_out;
  std::uint64_t seed = 1;
  double target = 0.9;
  ExpansionFlags synth_flags;
  auto* synth = app.add_subcommand("synth-demands", "gravity traffic matrix for a topology");
  synth->add_option("--graph", synth_graph, "GRAPH file")->required();
  synth->add_option("--seed", seed, "random seed")->capture_default_str();
  synth->add_option("--target-mlu", target, "minimum achievable MLU of the result")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--out", synth_out, "DEMANDS path (default: stdout)");
  add_expansion_flags(synth, synth_flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  if (*solve) {
    std::ostringstream sink;
    std::ostream& log = quiet ? static_cast<std::ostream&>(sink) : err;
    return finish(run_solve(solve_opts, log), out, err);
  }
  if (*compare) return cmd_compare(compare_graphs, compare_opts, csv_path, report_dir, out, err);
  if (*gen) {
    if (literal && !duplex) {
      err << "[args] --literal needs --duplex\n";
      return kExitError;
    }
    return cmd_gen_hardness(sets_path, hard_k, duplex, literal, hard_graph, hard_demands, out, err);
  }
  if (*ver) return cmd_verify(report_path, verify_graph, verify_demands, verify_flags, out, err);
  if (*synth) return cmd_synth_demands(synth_graph, seed, target, synth_flags, synth_out, out, err);
  return kExitError;
}

}  // namespace lcmin::cli
