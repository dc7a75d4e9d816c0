#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lcmin/milp.h"

namespace lcmin::milp {

namespace {

constexpr std::size_t kMaxNameLength = 255;
constexpr int kTermsPerLine = 6;

bool allowed_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  static const std::string extra = "!\"#$%&()/,.;?@_`'{}|~";
  return extra.find(c) != std::string::npos;
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string bound(double v) {
  if (v == kInf) return "+inf";
  if (v == -kInf) return "-inf";
  return number(v);
}

void write_expression(std::ostringstream& out, const std::vector<Term>& terms,
                      const std::vector<std::string>& names,
                      const std::string& fallback) {
  if (terms.empty()) {
    out << " 0 " << fallback;
    return;
  }
  int on_line = 0;
  for (const Term& t : terms) {
    if (on_line == kTermsPerLine) {
      out << "\n  ";
      on_line = 0;
    }
    out << (t.coef < 0 ? " - " : " + ") << number(std::abs(t.coef)) << " "
        << names[t.var];
    ++on_line;
  }
}

}  // namespace

std::string lp_safe_name(const std::string& name) {
  std::string out;
  out.reserve(name.size() + 1);
  for (char c : name) out += allowed_char(c) ? c : '_';
  if (out.empty()) out = "_";
  const char first = out[0];
  const bool exp_like = (first == 'e' || first == 'E') && out.size() > 1 &&
                        (std::isdigit(static_cast<unsigned char>(out[1])) ||
                         out[1] == '+' || out[1] == '-');
  if (std::isdigit(static_cast<unsigned char>(first)) || first == '.' || exp_like) {
    out.insert(out.begin(), '_');
  }
  if (out.size() > kMaxNameLength) out.resize(kMaxNameLength);
  return out;
}

std::string export_lp_text(const MilpModel& model) {
  model.require_valid();
  std::vector<std::string> var_names;
  std::unordered_set<std::string> seen;
  for (const Variable& v : model.vars()) {
    std::string n = lp_safe_name(v.name);
    if (!seen.insert(n).second) throw MilpError("duplicate LP variable name " + n);
    var_names.push_back(std::move(n));
  }
  std::vector<std::string> row_names;
  std::unordered_set<std::string> seen_rows;
  for (const Constraint& c : model.rows()) {
    std::string n = lp_safe_name(c.name);
    if (!seen_rows.insert(n).second) throw MilpError("duplicate LP row name " + n);
    row_names.push_back(std::move(n));
  }
  std::string obj_name = "obj";
  while (seen_rows.count(obj_name)) obj_name += "_";
  const std::string fallback = var_names.empty() ? "_dummy" : var_names.front();

  std::ostringstream out;
  out << "\\ Problem: " << lp_safe_name(model.name()) << "\n";
  out << "Minimize\n " << obj_name << ":";
  std::vector<Term> obj;
  for (VarId j = 0; j < model.num_vars(); ++j) {
    if (model.var(j).cost != 0) obj.push_back({j, model.var(j).cost});
  }
  write_expression(out, obj, var_names, fallback);
  out << "\nSubject To\n";
  for (RowId i = 0; i < model.num_rows(); ++i) {
    const Constraint& c = model.row(i);
    out << " " << row_names[i] << ":";
    write_expression(out, c.terms, var_names, fallback);
    switch (c.sense) {
      case RowSense::kLessEqual: out << " <= "; break;
      case RowSense::kGreaterEqual: out << " >= "; break;
      case RowSense::kEqual: out << " = "; break;
    }
    out << number(c.rhs) << "\n";
  }
  out << "Bounds\n";
  for (VarId j = 0; j < model.num_vars(); ++j) {
    const Variable& v = model.var(j);
    if (v.kind == VarKind::kBinary && v.lower == 0 && v.upper == 1) continue;
    if (v.lower == -kInf && v.upper == kInf) {
      out << " " << var_names[j] << " free\n";
    } else if (v.lower != 0 || v.upper != kInf) {
      out << " " << bound(v.lower) << " <= " << var_names[j] << " <= " << bound(v.upper) << "\n";
    }
  }
  auto list = [&](VarKind kind) {
    int on_line = 0;
    for (VarId j = 0; j < model.num_vars(); ++j) {
      if (model.var(j).kind != kind) continue;
      out << (on_line == 0 ? " " : " ") << var_names[j];
      if (++on_line == 8) {
        out << "\n";
        on_line = 0;
      }
    }
    if (on_line != 0) out << "\n";
  };
  out << "Generals\n";
  list(VarKind::kInteger);
  out << "Binaries\n";
  list(VarKind::kBinary);
  out << "End\n";
  return out.str();
}

std::vector<double> read_solution_text(const MilpModel& model,
                                       const std::string& text) {
  std::unordered_map<std::string, VarId> by_name;
  for (VarId j = 0; j < model.num_vars(); ++j) {
    by_name.emplace(model.var(j).name, j);
    by_name.emplace(lp_safe_name(model.var(j).name), j);
  }
  std::vector<double> values(model.num_vars(), 0.0);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string name, value;
    if (!(fields >> name)) continue;
    if (!(fields >> value)) {
      throw MilpError("solution line " + std::to_string(line_no) + ": missing value");
    }
    const auto it = by_name.find(name);
    if (it == by_name.end()) {
      throw MilpError("solution line " + std::to_string(line_no) +
                      ": unknown variable " + name);
    }
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
      throw MilpError("solution line " + std::to_string(line_no) + ": bad value " + value);
    }
    values[it->second] = v;
  }
  return values;
}

std::string write_solution_text(const MilpModel& model,
                                std::span<const double> values) {
  std::ostringstream out;
  for (VarId j = 0; j < model.num_vars(); ++j) {
    if (values[j] == 0) continue;
    out << lp_safe_name(model.var(j).name) << " " << number(values[j]) << "\n";
  }
  return out.str();
}

}  // namespace lcmin::milp
