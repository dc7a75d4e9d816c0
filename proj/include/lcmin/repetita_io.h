#ifndef LCMIN_REPETITA_IO_H
#define LCMIN_REPETITA_IO_H

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcmin/netmodel.h"

namespace lcmin {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

struct RawNode {
  std::string label;
  double x = 0;
  double y = 0;
};

struct RawEdge {
  std::string label;
  int src = 0;
  int dest = 0;
  long long weight = 1;
  double bandwidth = 0;
  double delay = 0;
};

struct RawTopology {
  std::vector<RawNode> nodes;
  std::vector<RawEdge> edges;  // directed, as in the file
  std::vector<std::string> warnings;
};

// GRAPH format:
//   NODES <n>
//   [label x y]                      optional column header
//   <label> <x> <y>                  n lines
//   EDGES <m>
//   [label src dest weight bw delay] optional column header
//   <label> <src> <dest> <weight> <bw> <delay>   m lines
// Whitespace separated; '#' starts a comment. Extra trailing columns are
// ignored with a warning.
RawTopology parse_repetita_graph(const std::string& text);

// DEMANDS format: "DEMANDS <d>", optional column header, then d rows
// "<label> <src> <dest> <volume>". Rows for the same pair are summed.
TrafficMatrix parse_repetita_demands(const std::string& text, int num_nodes);

std::string write_repetita_graph(const RawTopology& topology);
std::string write_repetita_demands(const TrafficMatrix& tm);

TrafficMatrix scale_demands(const TrafficMatrix& tm, double factor);

struct ExpandOptions {
  int parallel_count = 4;
  int k = 8;
  double capacity_multiplier = 1;
  // Per-link port counts keyed by edge label; override parallel_count.
  std::map<std::string, int> overrides;
  // Every edge becomes a one-way link of its own; used for the acyclic
  // instances of the hardness reduction.
  bool one_way = false;
};

// Turns the directed edges into duplex links. An edge u->v is merged with an
// unpaired v->u edge of equal weight and bandwidth; an edge without such a
// partner becomes a duplex link of its own. Each link gets parallel_count
// ports of capacity bandwidth / parallel_count. Customer ports top every
// vertex up to a multiple of k, so floor(backbone ports / k) cards can be
// switched off and the remainder card stays on.
Network expand_to_ports(const RawTopology& raw, const ExpandOptions& options);
Network expand_to_ports(const RawTopology& raw, int parallel_count, int k);

// Label of the edge each link was built from (the first one when merged).
std::vector<std::string> link_labels(const RawTopology& raw, bool one_way = false);

// "<edge_label> <count>" lines.
std::map<std::string, int> parse_port_overrides(const std::string& text);

struct LinkReport {
  std::string label;
  std::string src;
  std::string dest;
  int active_ports = 0;
  int total_ports = 0;
  // Per-port flags, written only for links whose ports differ in capacity.
  std::optional<std::string> mask;
  bool operator==(const LinkReport&) const = default;
};

struct PolicyReport {
  std::string src;
  std::string dst;
  std::string via;
  double fraction = 0;
  bool operator==(const PolicyReport&) const = default;
};

struct SolveReportDocument {
  std::string instance;
  std::string algorithm;
  std::string status;
  int objective_linecards = 0;
  int baseline_linecards = 0;
  int deactivatable_linecards = 0;
  std::optional<double> inactive_fraction;  // null when nothing is deactivatable
  double mlu = 0;
  double theta = 0;
  int k = 0;
  double scale = 1;
  int parallel = 1;
  double runtime_s = 0;
  std::optional<double> best_bound;
  std::vector<LinkReport> links;
  std::optional<std::vector<PolicyReport>> policy;
  std::optional<double> power_saving_w;
  bool operator==(const SolveReportDocument&) const = default;
};

// Key-sorted JSON.
std::string write_report(const SolveReportDocument& doc);
// Throws ParseError on malformed JSON or missing required keys.
SolveReportDocument read_report(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace lcmin

#endif  // LCMIN_REPETITA_IO_H
