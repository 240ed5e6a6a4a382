#include <algorithm>
#include <exception>
#include <thread>

#include "rnaicgf/ssa.hpp"

namespace rnaicgf {

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Terminal: return "terminal";
    case Outcome::MaxSteps: return "max_steps";
    case Outcome::MaxTime: return "max_time";
    case Outcome::SpeciesReached: return "species_reached";
  }
  return "unknown";
}

namespace {

// Draws the waiting time first, then the reaction, from the same stream.
std::optional<std::pair<Reaction, double>> sample(const std::vector<Reaction>& reactions,
                                                  Rng& rng) {
  double total = 0.0;
  for (const auto& r : reactions) total += r.propensity;
  if (reactions.empty() || total <= 0.0) return std::nullopt;
  double dt = rng.exponential(total);
  double threshold = rng.uniform_open() * total;
  double cumulative = 0.0;
  for (const auto& r : reactions) {
    cumulative += r.propensity;
    if (threshold < cumulative) return std::pair{r, dt};
  }
  return std::pair{reactions.back(), dt};
}

}  // namespace

std::optional<std::pair<Reaction, SimState>> step(const SimState& state, const Environment& env) {
  SimState next = state;
  auto picked = sample(enumerate_reactions(state.solution, env), next.rng);
  if (!picked) return std::nullopt;
  next.solution = apply_reaction(state.solution, picked->first);
  next.time += picked->second;
  next.step_count += 1;
  return std::pair{std::move(picked->first), std::move(next)};
}

Simulator::Simulator(const CgfProgram& program) : program_(program), table_(program_.env) {
  program_.validate();
  for (const auto& [name, molecule] : program_.env) {
    ids_.emplace(name, static_cast<std::uint32_t>(names_.size()));
    names_.push_back(name);
  }
  for (const auto& [name, n] : program_.init) {
    if (!ids_.contains(name)) {
      throw CgfError(CgfErrorKind::UndefinedSpecies, "species '" + name + "' in init has no definition");
    }
  }
  std::map<std::string, std::uint32_t, std::less<>> channel_ids;
  auto channel_id = [&](const Prefix& p) {
    auto [it, inserted] = channel_ids.emplace(p.channel, static_cast<std::uint32_t>(channels_.size()));
    if (inserted) channels_.push_back(Channel{p.channel, p.rate.value(), {}});
    return it->second;
  };
  entries_.resize(names_.size());
  for (std::uint32_t s = 0; s < names_.size(); ++s) {
    const Molecule& m = program_.env.at(names_[s]);
    for (std::size_t i = 0; i < m.choices.size(); ++i) {
      const Choice& c = m.choices[i];
      switch (c.prefix.kind) {
        case PrefixKind::Tau:
          entries_[s].push_back(Entry{i, false, 0, c.prefix.rate.value(), intern(c.continuation)});
          break;
        case PrefixKind::In:
          entries_[s].push_back(
              Entry{i, true, channel_id(c.prefix), c.prefix.rate.value(), intern(c.continuation)});
          break;
        case PrefixKind::Out:
          channels_[channel_id(c.prefix)].outputs.push_back(
              OutputOffer{s, i, intern(c.continuation)});
          break;
      }
    }
  }
}

Simulator::Delta Simulator::intern(const Solution& s) const {
  Delta d;
  for (const auto& [name, n] : s) d.emplace_back(ids_.at(name), n);
  return d;
}

Solution Simulator::to_solution(const std::vector<Count>& counts) const {
  Solution s;
  for (std::uint32_t i = 0; i < counts.size(); ++i) s.add(names_[i], counts[i]);
  return s;
}

Reaction Simulator::materialize(const Candidate& c) const {
  const Entry& e = entries_[c.species][c.entry];
  Reaction r;
  r.propensity = c.propensity;
  r.consumed.add(names_[c.species]);
  for (const auto& [id, n] : e.produced) r.produced.add(names_[id], n);
  if (c.output < 0) {
    r.kind = Decay{names_[c.species], e.choice};
  } else {
    const Channel& ch = channels_[e.channel];
    const OutputOffer& o = ch.outputs[static_cast<std::size_t>(c.output)];
    r.kind = Collision{names_[c.species], e.choice, names_[o.species], o.choice, ch.name};
    r.consumed.add(names_[o.species]);
    for (const auto& [id, n] : o.produced) r.produced.add(names_[id], n);
  }
  return r;
}

std::optional<Reaction> Simulator::advance(SimState& state) const {
  auto picked = sample(table_.enumerate(state.solution), state.rng);
  if (!picked) return std::nullopt;
  state.solution = apply_reaction(state.solution, picked->first);
  state.time += picked->second;
  state.step_count += 1;
  return std::move(picked->first);
}

Trajectory Simulator::simulate(const StopCondition& stop, std::uint64_t seed) const {
  Trajectory traj;
  traj.seed = seed;
  traj.initial = program_.init;
  std::vector<Count> counts(names_.size(), 0);
  for (const auto& [name, n] : program_.init) counts[ids_.at(name)] = n;
  std::optional<std::uint32_t> watched;
  if (stop.species_reached) {
    if (auto it = ids_.find(stop.species_reached->species); it != ids_.end()) watched = it->second;
  }
  Rng rng(seed);
  double time = 0.0;
  std::uint64_t steps = 0;
  std::vector<Candidate> candidates;
  for (;;) {
    if (stop.species_reached) {
      Count have = watched ? counts[*watched] : 0;
      if (have >= stop.species_reached->count) {
        traj.outcome = Outcome::SpeciesReached;
        break;
      }
    }
    // Same order as ReactionTable::enumerate.
    candidates.clear();
    double total = 0.0;
    for (std::uint32_t s = 0; s < counts.size(); ++s) {
      const Count n = counts[s];
      if (n == 0) continue;
      const auto& entries = entries_[s];
      for (std::uint32_t k = 0; k < entries.size(); ++k) {
        const Entry& e = entries[k];
        if (!e.is_input) {
          double a = e.rate * static_cast<double>(n);
          candidates.push_back(Candidate{a, s, k, -1});
          total += a;
          continue;
        }
        const Channel& ch = channels_[e.channel];
        for (std::size_t o = 0; o < ch.outputs.size(); ++o) {
          const std::uint32_t partner = ch.outputs[o].species;
          double pairs = partner == s ? static_cast<double>(n) * static_cast<double>(n - 1)
                                      : static_cast<double>(n) * static_cast<double>(counts[partner]);
          if (pairs <= 0.0) continue;
          double a = ch.rate * pairs;
          candidates.push_back(Candidate{a, s, k, static_cast<std::int32_t>(o)});
          total += a;
        }
      }
    }
    if (candidates.empty()) {
      traj.outcome = Outcome::Terminal;
      break;
    }
    if (stop.max_steps && steps >= *stop.max_steps) {
      traj.outcome = Outcome::MaxSteps;
      break;
    }
    const double dt = rng.exponential(total);
    const double threshold = rng.uniform_open() * total;
    if (stop.max_time && time + dt > *stop.max_time) {
      traj.outcome = Outcome::MaxTime;
      time = *stop.max_time;
      break;
    }
    // Recompute the running sum exactly as sample() does.
    const Candidate* chosen = &candidates.back();
    double cumulative = 0.0;
    for (const auto& c : candidates) {
      cumulative += c.propensity;
      if (threshold < cumulative) {
        chosen = &c;
        break;
      }
    }
    const Entry& e = entries_[chosen->species][chosen->entry];
    counts[chosen->species] -= 1;
    for (const auto& [id, n] : e.produced) counts[id] += n;
    if (chosen->output >= 0) {
      const OutputOffer& o = channels_[e.channel].outputs[static_cast<std::size_t>(chosen->output)];
      counts[o.species] -= 1;
      for (const auto& [id, n] : o.produced) counts[id] += n;
    }
    time += dt;
    ++steps;
    traj.steps.push_back(TrajectoryStep{time, materialize(*chosen), to_solution(counts)});
  }
  traj.final_time = time;
  return traj;
}

Trajectory simulate(const CgfProgram& program, const StopCondition& stop, std::uint64_t seed) {
  return Simulator(program).simulate(stop, seed);
}

TrialSummary summarize(const Trajectory& trajectory, std::uint64_t trial) {
  return TrialSummary{trial,
                      trajectory.seed,
                      trajectory.outcome,
                      trajectory.steps.size(),
                      trajectory.final_time,
                      trajectory.final_solution()};
}

std::vector<TrialSummary> run_ensemble(const CgfProgram& program, const StopCondition& stop,
                                       std::uint64_t trials, std::uint64_t seed,
                                       const EnsembleOptions& options) {
  const Simulator sim(program);
  std::vector<TrialSummary> out(trials);
  auto run_trial = [&](std::uint64_t i) {
    Trajectory traj = sim.simulate(stop, trial_seed(seed, i));
    if (options.inspect) options.inspect(i, traj);
    out[i] = summarize(traj, i);
  };
  unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1 || trials < 2) {
    for (std::uint64_t i = 0; i < trials; ++i) run_trial(i);
    return out;
  }
  // Strided assignment; each worker owns disjoint slots of `out`.
  std::vector<std::exception_ptr> errors(jobs);
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::uint64_t i = w; i < trials; i += jobs) run_trial(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace rnaicgf
