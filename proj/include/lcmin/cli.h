#ifndef LCMIN_CLI_H
#define LCMIN_CLI_H

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcmin/lc_problems.h"
#include "lcmin/repetita_io.h"

namespace lcmin::cli {

// Error tagged with the pipeline stage it came from (parse, expand, build,
// solve, extract, verify, write, ...).
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitTimeLimit = 3;

inline constexpr const char* kTimeLimitEnv = "LCMIN_TIME_LIMIT";

// Time limit from the environment, or the fallback.
double default_time_limit(double fallback = 3600);

struct ExpansionFlags {
  int parallel = 4;
  int k = 8;
  double capacity_multiplier = 1;
  bool one_way = false;
  std::string port_overrides;  // path, empty for none
};

struct LoadedInstance {
  RawTopology raw;
  Network network;
  TrafficMatrix demands;  // already scaled
  std::vector<std::string> link_labels;
};

LoadedInstance load_instance(const std::string& graph_path, const std::string& demands_path,
                             double scale, const ExpansionFlags& flags);

struct SolveOptions {
  std::string graph;
  std::string demands;
  std::string instance;   // defaults to the graph file stem
  std::string algorithm = "2sr";
  double theta = 0.7;
  double scale = 0.5;
  ExpansionFlags expansion;
  double watts = kDefaultLinecardWatts;
  double time_limit_s = 3600;
  PortEncoding encoding = PortEncoding::kAuto;
  std::string export_lp;       // path
  bool no_solve = false;
  std::string solver_command;  // external solver template, empty for the internal one
  std::string work_dir;
  std::string out;             // report path, empty for none
};

struct SolveOutcome {
  int exit_code = kExitError;
  std::optional<milp::MilpStatus> status;
  std::optional<SolveReportDocument> report;
  std::optional<VerificationReport> verification;
  int num_vertices = 0;
  int num_edges = 0;  // directed edges of the GRAPH file
  std::string message;
};

// parse -> scale -> expand -> build -> solve -> extract -> verify -> metrics
// -> write. Stage errors are caught and turned into exit code 1 with a
// "[stage] message" in SolveOutcome::message.
SolveOutcome run_solve(const SolveOptions& options, std::ostream& log);

// Rebuilds the instance named in a report and checks the reported state
// from scratch.
struct ReportCheck {
  bool pass = false;
  VerificationReport verification;
  std::vector<std::string> findings;  // report-level mismatches
};
ReportCheck check_report(const SolveReportDocument& report, const std::string& graph_path,
                         const std::string& demands_path, const ExpansionFlags& flags);

inline constexpr const char* kCompareHeader =
    "instance,|V|,|E|,obj_mcf,obj_2sr,ratio,t_mcf_s,t_2sr_s,mlu_mcf,mlu_2sr";

// One CSV line for a pair of outcomes. The ratio is written only when both
// solves are proven optimal.
std::string compare_row(const std::string& instance, const SolveOutcome& mcf,
                        const SolveOutcome& sr);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lcmin::cli

#endif  // LCMIN_CLI_H
