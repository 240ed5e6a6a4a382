#pragma once

// Gillespie direct-method simulation of a CgfProgram.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rnaicgf/cgf.hpp"
#include "rnaicgf/rng.hpp"

namespace rnaicgf {

struct SimState {
  Solution solution;
  double time = 0.0;
  std::uint64_t step_count = 0;
  Rng rng;
};

struct SpeciesTarget {
  std::string species;
  Count count = 0;
};

/// Stop conditions are combined; the first one met ends the run. A terminal
/// solution always ends the run.
struct StopCondition {
  std::optional<std::uint64_t> max_steps;
  std::optional<double> max_time;
  std::optional<SpeciesTarget> species_reached;

  static StopCondition terminal() { return {}; }
  static StopCondition steps(std::uint64_t n) { return {n, {}, {}}; }
  static StopCondition time(double t) { return {{}, t, {}}; }
  static StopCondition species(std::string name, Count count) {
    return {{}, {}, SpeciesTarget{std::move(name), count}};
  }
};

enum class Outcome { Terminal, MaxSteps, MaxTime, SpeciesReached };
const char* to_string(Outcome outcome);

struct TrajectoryStep {
  double time = 0.0;
  Reaction reaction;
  Solution solution;  // after the reaction
};

struct Trajectory {
  std::uint64_t seed = 0;
  std::string generator = Rng::kName;
  Solution initial;
  std::vector<TrajectoryStep> steps;
  Outcome outcome = Outcome::Terminal;
  double final_time = 0.0;

  const Solution& final_solution() const {
    return steps.empty() ? initial : steps.back().solution;
  }
};

/// One SSA step. Returns nullopt when no reaction is enabled.
std::optional<std::pair<Reaction, SimState>> step(const SimState& state, const Environment& env);

/// Simulates one program repeatedly. Species are interned once so the hot
/// loop works on dense counts; reaction order and random-number consumption
/// match step() exactly.
class Simulator {
 public:
  explicit Simulator(const CgfProgram& program);

  Trajectory simulate(const StopCondition& stop, std::uint64_t seed) const;
  /// Advances in place; nullopt when terminal. Does not consult stop conditions.
  std::optional<Reaction> advance(SimState& state) const;

  const CgfProgram& program() const { return program_; }
  const ReactionTable& table() const { return table_; }

 private:
  using Delta = std::vector<std::pair<std::uint32_t, Count>>;
  struct Entry {
    std::size_t choice;
    bool is_input;
    std::uint32_t channel;  // inputs only
    double rate;
    Delta produced;
  };
  struct OutputOffer {
    std::uint32_t species;
    std::size_t choice;
    Delta produced;
  };
  struct Channel {
    std::string name;
    double rate = 1.0;
    std::vector<OutputOffer> outputs;
  };
  struct Candidate {
    double propensity;
    std::uint32_t species;
    std::uint32_t entry;
    std::int32_t output;  // -1 for a decay
  };

  Delta intern(const Solution& s) const;
  Reaction materialize(const Candidate& c) const;
  Solution to_solution(const std::vector<Count>& counts) const;

  CgfProgram program_;
  ReactionTable table_;
  std::vector<std::string> names_;
  std::map<std::string, std::uint32_t, std::less<>> ids_;
  std::vector<std::vector<Entry>> entries_;
  std::vector<Channel> channels_;
};

Trajectory simulate(const CgfProgram& program, const StopCondition& stop, std::uint64_t seed);

struct TrialSummary {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::Terminal;
  std::uint64_t steps = 0;
  double final_time = 0.0;
  Solution final_solution;

  friend bool operator==(const TrialSummary&, const TrialSummary&) = default;
};

struct EnsembleOptions {
  unsigned jobs = 1;
  /// Called once per finished trial from the worker that ran it, before the
  /// trajectory is dropped. Calls for different trials may run concurrently.
  std::function<void(std::uint64_t trial, const Trajectory&)> inspect;
};

/// Runs `trials` trajectories seeded with trial_seed(seed, i). Results are in
/// trial order and do not depend on `jobs`.
std::vector<TrialSummary> run_ensemble(const CgfProgram& program, const StopCondition& stop,
                                       std::uint64_t trials, std::uint64_t seed,
                                       const EnsembleOptions& options = {});

TrialSummary summarize(const Trajectory& trajectory, std::uint64_t trial);

// Export. Species columns cover every name defined in `env`, in sorted order.
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory, const Environment& env,
                          std::uint64_t trial = 0, bool header = true);
void write_summaries_csv(std::ostream& os, const std::vector<TrialSummary>& summaries,
                         const Environment& env);
std::string trajectory_summary_json(const Trajectory& trajectory);
std::string summaries_json(const std::vector<TrialSummary>& summaries);

}  // namespace rnaicgf
