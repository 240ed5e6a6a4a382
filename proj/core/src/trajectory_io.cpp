#include <ostream>

#include <nlohmann/json.hpp>

#include "rnaicgf/ssa.hpp"

namespace rnaicgf {
namespace {

void write_counts(std::ostream& os, const Solution& s, const Environment& env) {
  for (const auto& [name, molecule] : env) os << "," << s.count(name);
}

nlohmann::ordered_json counts_json(const Solution& s) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [name, n] : s) j[name] = n;
  return j;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory, const Environment& env,
                          std::uint64_t trial, bool header) {
  os.precision(17);
  if (header) {
    os << "trial,step,time,reaction_id";
    for (const auto& [name, molecule] : env) os << "," << name;
    os << "\n";
  }
  os << trial << ",0,0,";
  write_counts(os, trajectory.initial, env);
  os << "\n";
  for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
    const auto& st = trajectory.steps[i];
    os << trial << "," << (i + 1) << "," << st.time << "," << st.reaction.id();
    write_counts(os, st.solution, env);
    os << "\n";
  }
}

void write_summaries_csv(std::ostream& os, const std::vector<TrialSummary>& summaries,
                         const Environment& env) {
  os.precision(17);
  os << "trial,seed,outcome,steps,final_time";
  for (const auto& [name, molecule] : env) os << "," << name;
  os << "\n";
  for (const auto& s : summaries) {
    os << s.trial << "," << s.seed << "," << to_string(s.outcome) << "," << s.steps << ","
       << s.final_time;
    write_counts(os, s.final_solution, env);
    os << "\n";
  }
}

std::string trajectory_summary_json(const Trajectory& trajectory) {
  nlohmann::ordered_json j;
  j["seed"] = trajectory.seed;
  j["generator"] = trajectory.generator;
  j["outcome"] = to_string(trajectory.outcome);
  j["steps"] = trajectory.steps.size();
  j["final_time"] = trajectory.final_time;
  j["final_counts"] = counts_json(trajectory.final_solution());
  return j.dump(2);
}

std::string summaries_json(const std::vector<TrialSummary>& summaries) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : summaries) {
    nlohmann::ordered_json j;
    j["trial"] = s.trial;
    j["seed"] = s.seed;
    j["generator"] = Rng::kName;
    j["outcome"] = to_string(s.outcome);
    j["steps"] = s.steps;
    j["final_time"] = s.final_time;
    j["final_counts"] = counts_json(s.final_solution);
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

}  // namespace rnaicgf
