#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lcmin/milp.h"

namespace lcmin::milp {

namespace {

std::string replace_all(std::string text, const std::string& from, const std::string& to) {
  for (std::size_t pos = text.find(from); pos != std::string::npos;
       pos = text.find(from, pos + to.size())) {
    text.replace(pos, from.size(), to);
  }
  return text;
}

std::string quoted(const std::string& path) { return "'" + replace_all(path, "'", "'\\''") + "'"; }

std::optional<MilpStatus> declared_status(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string hash, key, value;
    if (!(fields >> hash >> key >> value) || hash != "#" || key != "status") continue;
    if (value == "optimal") return MilpStatus::kOptimal;
    if (value == "feasible") return MilpStatus::kFeasible;
    if (value == "infeasible") return MilpStatus::kInfeasible;
    throw MilpError("unknown status '" + value + "' in solution file");
  }
  return std::nullopt;
}

}  // namespace

LpFileSolver::LpFileSolver(std::string command_template, std::string work_dir)
    : command_(std::move(command_template)), work_dir_(std::move(work_dir)) {}

MilpSolution LpFileSolver::solve(const MilpModel& model, const MilpBudget& budget) {
  const auto start = std::chrono::steady_clock::now();
  namespace fs = std::filesystem;
  fs::create_directories(work_dir_);
  const fs::path lp = fs::path(work_dir_) / (lp_safe_name(model.name()) + ".lp");
  const fs::path sol = fs::path(work_dir_) / (lp_safe_name(model.name()) + ".sol");
  {
    std::ofstream out(lp);
    out << export_lp_text(model);
    if (!out) throw MilpError("cannot write " + lp.string());
  }
  fs::remove(sol);
  const std::string time =
      std::isfinite(budget.time_limit_s) ? std::to_string(static_cast<long long>(std::ceil(budget.time_limit_s))) : "0";
  std::string command = replace_all(command_, "{lp}", quoted(lp.string()));
  command = replace_all(command, "{sol}", quoted(sol.string()));
  command = replace_all(command, "{time}", time);
  const int rc = std::system(command.c_str());
  if (rc != 0) throw MilpError("external solver exited with status " + std::to_string(rc));

  MilpSolution out;
  std::string text;
  if (fs::exists(sol)) {
    std::ifstream in(sol);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  const auto status = declared_status(text);
  const bool has_values = text.find_first_not_of(" \t\r\n") != std::string::npos &&
                          status != MilpStatus::kInfeasible;
  if (has_values) {
    out.values = read_solution_text(model, text);
    if (model.max_violation(out.values) > budget.feasibility_tolerance ||
        model.max_integrality_violation(out.values) > budget.integrality_tolerance) {
      throw MilpError("external solution violates the model");
    }
    for (VarId j = 0; j < model.num_vars(); ++j) {
      if (model.var(j).is_integer()) out.values[j] = std::round(out.values[j]);
    }
    out.objective = model.objective(out.values);
    out.status = status.value_or(MilpStatus::kFeasible);
    if (out.status == MilpStatus::kOptimal) out.best_bound = out.objective;
  } else {
    out.status = MilpStatus::kInfeasible;
    out.best_bound = kInf;
  }
  out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace lcmin::milp
