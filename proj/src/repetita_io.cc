#include "lcmin/repetita_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <tuple>

namespace lcmin {

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : message),
      line_(line) {}

namespace {

struct Line {
  int number;
  std::vector<std::string> fields;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream fields(raw);
    Line line{number, {}};
    std::string f;
    while (fields >> f) line.fields.push_back(f);
    if (!line.fields.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

double to_double(const Line& line, std::size_t i, const char* what) {
  const std::string& s = line.fields[i];
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw ParseError(line.number, std::string("nonnumeric ") + what + " '" + s + "'");
  }
  return v;
}

long long to_integer(const Line& line, std::size_t i, const char* what) {
  const std::string& s = line.fields[i];
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw ParseError(line.number, std::string("nonnumeric ") + what + " '" + s + "'");
  }
  return v;
}

// Line number just past the end of the input, for truncated sections.
int end_line(const std::vector<Line>& lines) { return lines.empty() ? 1 : lines.back().number + 1; }

// Reads "<keyword> <count>" at lines[pos]; returns the count.
int section_header(const std::vector<Line>& lines, std::size_t pos, const char* keyword) {
  if (pos >= lines.size()) {
    throw ParseError(end_line(lines), std::string("missing ") + keyword + " header");
  }
  const Line& line = lines[pos];
  if (line.fields.size() != 2 || line.fields[0] != keyword) {
    throw ParseError(line.number, std::string("expected '") + keyword + " <count>'");
  }
  const long long n = to_integer(line, 1, "count");
  if (n < 0) throw ParseError(line.number, "negative count");
  return static_cast<int>(n);
}

bool is_column_header(const Line& line) { return line.fields[0] == "label"; }

void require_columns(const Line& line, std::size_t count, std::vector<std::string>& warnings) {
  if (line.fields.size() < count) {
    throw ParseError(line.number, "expected " + std::to_string(count) + " columns, found " +
                                      std::to_string(line.fields.size()));
  }
  if (line.fields.size() > count) {
    warnings.push_back("line " + std::to_string(line.number) + ": ignoring " +
                       std::to_string(line.fields.size() - count) + " trailing column(s)");
  }
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// For each raw edge, the link it belongs to; links are numbered in order of
// their first edge.
std::vector<int> pair_edges(const RawTopology& raw, int& num_links, bool one_way) {
  if (one_way) {
    num_links = static_cast<int>(raw.edges.size());
    std::vector<int> link_of(raw.edges.size());
    for (std::size_t i = 0; i < raw.edges.size(); ++i) link_of[i] = static_cast<int>(i);
    return link_of;
  }
  std::map<std::tuple<int, int, long long, double>, std::vector<int>> waiting;
  std::vector<int> link_of(raw.edges.size(), -1);
  num_links = 0;
  for (std::size_t i = 0; i < raw.edges.size(); ++i) {
    const RawEdge& e = raw.edges[i];
    auto it = waiting.find({e.dest, e.src, e.weight, e.bandwidth});
    if (it != waiting.end() && !it->second.empty()) {
      link_of[i] = link_of[it->second.front()];
      it->second.erase(it->second.begin());
      continue;
    }
    link_of[i] = num_links++;
    waiting[{e.src, e.dest, e.weight, e.bandwidth}].push_back(static_cast<int>(i));
  }
  return link_of;
}

}  // namespace

RawTopology parse_repetita_graph(const std::string& text) {
  const auto lines = tokenize(text);
  RawTopology raw;
  std::size_t pos = 0;
  const int n = section_header(lines, pos++, "NODES");
  if (pos < lines.size() && is_column_header(lines[pos])) ++pos;
  for (int i = 0; i < n; ++i, ++pos) {
    if (pos >= lines.size() || lines[pos].fields[0] == "EDGES") {
      throw ParseError(pos < lines.size() ? lines[pos].number : end_line(lines),
                       "expected " + std::to_string(n) + " node rows");
    }
    const Line& line = lines[pos];
    require_columns(line, 3, raw.warnings);
    raw.nodes.push_back({line.fields[0], to_double(line, 1, "x"), to_double(line, 2, "y")});
  }
  const int m = section_header(lines, pos++, "EDGES");
  if (pos < lines.size() && is_column_header(lines[pos])) ++pos;
  for (int i = 0; i < m; ++i, ++pos) {
    if (pos >= lines.size()) throw ParseError(end_line(lines), "expected " + std::to_string(m) + " edge rows");
    const Line& line = lines[pos];
    require_columns(line, 6, raw.warnings);
    RawEdge e;
    e.label = line.fields[0];
    e.src = static_cast<int>(to_integer(line, 1, "src"));
    e.dest = static_cast<int>(to_integer(line, 2, "dest"));
    e.weight = to_integer(line, 3, "weight");
    e.bandwidth = to_double(line, 4, "bandwidth");
    e.delay = to_double(line, 5, "delay");
    if (e.src < 0 || e.src >= n || e.dest < 0 || e.dest >= n) {
      throw ParseError(line.number, "edge endpoint out of range");
    }
    if (e.src == e.dest) throw ParseError(line.number, "self-loop edge");
    if (e.weight <= 0) throw ParseError(line.number, "weight must be positive");
    if (e.bandwidth <= 0) throw ParseError(line.number, "bandwidth must be positive");
    raw.edges.push_back(std::move(e));
  }
  if (pos < lines.size()) throw ParseError(lines[pos].number, "unexpected content after edges");
  return raw;
}

TrafficMatrix parse_repetita_demands(const std::string& text, int num_nodes) {
  const auto lines = tokenize(text);
  TrafficMatrix tm(num_nodes);
  if (lines.empty()) return tm;
  std::size_t pos = 0;
  const int d = section_header(lines, pos++, "DEMANDS");
  if (pos < lines.size() && is_column_header(lines[pos])) ++pos;
  std::vector<std::string> ignored;
  for (int i = 0; i < d; ++i, ++pos) {
    if (pos >= lines.size()) throw ParseError(end_line(lines), "expected " + std::to_string(d) + " demand rows");
    const Line& line = lines[pos];
    require_columns(line, 4, ignored);
    const long long src = to_integer(line, 1, "src");
    const long long dst = to_integer(line, 2, "dest");
    const double volume = to_double(line, 3, "volume");
    if (src < 0 || src >= num_nodes || dst < 0 || dst >= num_nodes) {
      throw ParseError(line.number, "unknown node index in demand");
    }
    if (src == dst) throw ParseError(line.number, "demand from a node to itself");
    if (volume < 0) throw ParseError(line.number, "negative demand volume");
    tm.add(static_cast<VertexId>(src), static_cast<VertexId>(dst), volume);
  }
  if (pos < lines.size()) throw ParseError(lines[pos].number, "unexpected content after demands");
  return tm;
}

std::string write_repetita_graph(const RawTopology& topology) {
  std::ostringstream out;
  out << "NODES " << topology.nodes.size() << "\nlabel x y\n";
  for (const RawNode& n : topology.nodes) {
    out << n.label << " " << number(n.x) << " " << number(n.y) << "\n";
  }
  out << "\nEDGES " << topology.edges.size() << "\nlabel src dest weight bw delay\n";
  for (const RawEdge& e : topology.edges) {
    out << e.label << " " << e.src << " " << e.dest << " " << e.weight << " "
        << number(e.bandwidth) << " " << number(e.delay) << "\n";
  }
  return out.str();
}

std::string write_repetita_demands(const TrafficMatrix& tm) {
  const auto entries = tm.entries();
  std::ostringstream out;
  out << "DEMANDS " << entries.size() << "\nlabel src dest bw\n";
  int i = 0;
  for (const auto& e : entries) {
    out << "demand_" << i++ << " " << e.src << " " << e.dst << " " << number(e.volume) << "\n";
  }
  return out.str();
}

TrafficMatrix scale_demands(const TrafficMatrix& tm, double factor) {
  if (!(factor >= 0) || !std::isfinite(factor)) {
    throw ModelError("scaling factor must be finite and nonnegative");
  }
  TrafficMatrix out(tm.num_vertices());
  for (const auto& e : tm.entries()) out.set(e.src, e.dst, e.volume * factor);
  return out;
}

Network expand_to_ports(const RawTopology& raw, const ExpandOptions& options) {
  if (options.parallel_count < 1) throw ModelError("parallel count must be at least 1");
  if (options.k < 1) throw ModelError("ports per linecard must be at least 1");
  if (!(options.capacity_multiplier > 0)) throw ModelError("capacity multiplier must be positive");
  int num_links = 0;
  const auto link_of = pair_edges(raw, num_links, options.one_way);
  std::vector<ArcPair> links(num_links);
  std::vector<bool> built(num_links, false);
  for (const auto& [label, count] : options.overrides) {
    if (count < 1) throw ModelError("port override for " + label + " must be at least 1");
  }
  for (std::size_t i = 0; i < raw.edges.size(); ++i) {
    const int l = link_of[i];
    if (built[l]) continue;
    built[l] = true;
    const RawEdge& e = raw.edges[i];
    int count = options.parallel_count;
    if (auto it = options.overrides.find(e.label); it != options.overrides.end()) count = it->second;
    const double cap = e.bandwidth * options.capacity_multiplier / count;
    links[l] = ArcPair{e.src, e.dest, PortGroup{std::vector<double>(count, cap)}, e.weight,
                       options.one_way};
  }
  std::vector<std::string> labels;
  for (const RawNode& n : raw.nodes) labels.push_back(n.label);
  std::vector<int> backbone(raw.nodes.size(), 0);
  for (const ArcPair& p : links) {
    backbone[p.u] += p.ports.size();
    backbone[p.v] += p.ports.size();
  }
  std::vector<int> customer(raw.nodes.size(), 0);
  for (std::size_t v = 0; v < backbone.size(); ++v) {
    customer[v] = (options.k - backbone[v] % options.k) % options.k;
  }
  return Network(std::move(labels), std::move(links), std::move(customer));
}

Network expand_to_ports(const RawTopology& raw, int parallel_count, int k) {
  ExpandOptions options;
  options.parallel_count = parallel_count;
  options.k = k;
  return expand_to_ports(raw, options);
}

std::vector<std::string> link_labels(const RawTopology& raw, bool one_way) {
  int num_links = 0;
  const auto link_of = pair_edges(raw, num_links, one_way);
  std::vector<std::string> labels(num_links);
  std::vector<bool> seen(num_links, false);
  for (std::size_t i = 0; i < raw.edges.size(); ++i) {
    if (!seen[link_of[i]]) {
      seen[link_of[i]] = true;
      labels[link_of[i]] = raw.edges[i].label;
    }
  }
  return labels;
}

std::map<std::string, int> parse_port_overrides(const std::string& text) {
  std::map<std::string, int> out;
  for (const Line& line : tokenize(text)) {
    if (line.fields.size() != 2) throw ParseError(line.number, "expected '<edge_label> <count>'");
    const long long count = to_integer(line, 1, "port count");
    if (count < 1) throw ParseError(line.number, "port count must be at least 1");
    out[line.fields[0]] = static_cast<int>(count);
  }
  return out;
}

using nlohmann::json;

std::string write_report(const SolveReportDocument& doc) {
  json j;
  j["instance"] = doc.instance;
  j["algorithm"] = doc.algorithm;
  j["status"] = doc.status;
  j["objective_linecards"] = doc.objective_linecards;
  j["baseline_linecards"] = doc.baseline_linecards;
  j["deactivatable_linecards"] = doc.deactivatable_linecards;
  j["inactive_fraction"] = doc.inactive_fraction ? json(*doc.inactive_fraction) : json(nullptr);
  j["mlu"] = doc.mlu;
  j["theta"] = doc.theta;
  j["k"] = doc.k;
  j["scale"] = doc.scale;
  j["parallel"] = doc.parallel;
  j["runtime_s"] = doc.runtime_s;
  if (doc.best_bound) j["best_bound"] = *doc.best_bound;
  j["links"] = json::array();
  for (const LinkReport& l : doc.links) {
    json e = {{"label", l.label},
              {"src", l.src},
              {"dest", l.dest},
              {"active_ports", l.active_ports},
              {"total_ports", l.total_ports}};
    if (l.mask) e["mask"] = *l.mask;
    j["links"].push_back(std::move(e));
  }
  if (doc.policy) {
    j["policy"] = json::array();
    for (const PolicyReport& p : *doc.policy) {
      j["policy"].push_back({{"src", p.src}, {"dst", p.dst}, {"via", p.via}, {"fraction", p.fraction}});
    }
  }
  if (doc.power_saving_w) j["power_saving_w"] = *doc.power_saving_w;
  return j.dump(2) + "\n";
}

namespace {

template <class T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(0, std::string("report is missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("report key '") + key + "': " + e.what());
  }
}

}  // namespace

SolveReportDocument read_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("malformed report: ") + e.what());
  }
  if (!j.is_object()) throw ParseError(0, "report must be a JSON object");
  SolveReportDocument doc;
  doc.instance = required<std::string>(j, "instance");
  doc.algorithm = required<std::string>(j, "algorithm");
  doc.status = j.value("status", std::string());
  doc.objective_linecards = required<int>(j, "objective_linecards");
  doc.baseline_linecards = required<int>(j, "baseline_linecards");
  doc.deactivatable_linecards = required<int>(j, "deactivatable_linecards");
  if (!j.contains("inactive_fraction")) throw ParseError(0, "report is missing key 'inactive_fraction'");
  if (!j["inactive_fraction"].is_null()) doc.inactive_fraction = required<double>(j, "inactive_fraction");
  doc.mlu = required<double>(j, "mlu");
  doc.theta = required<double>(j, "theta");
  doc.k = required<int>(j, "k");
  doc.scale = j.value("scale", 1.0);
  doc.parallel = j.value("parallel", 1);
  doc.runtime_s = required<double>(j, "runtime_s");
  if (j.contains("best_bound")) doc.best_bound = required<double>(j, "best_bound");
  for (const json& e : required<json>(j, "links")) {
    LinkReport l;
    l.label = e.value("label", std::string());
    l.src = required<std::string>(e, "src");
    l.dest = required<std::string>(e, "dest");
    l.active_ports = required<int>(e, "active_ports");
    l.total_ports = required<int>(e, "total_ports");
    if (e.contains("mask")) l.mask = required<std::string>(e, "mask");
    doc.links.push_back(std::move(l));
  }
  if (j.contains("policy")) {
    doc.policy.emplace();
    for (const json& e : j["policy"]) {
      doc.policy->push_back({required<std::string>(e, "src"), required<std::string>(e, "dst"),
                             required<std::string>(e, "via"), required<double>(e, "fraction")});
    }
  }
  if (j.contains("power_saving_w")) doc.power_saving_w = required<double>(j, "power_saving_w");
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace lcmin
