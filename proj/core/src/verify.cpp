#include <cmath>
#include <stdexcept>

#include "rnaicgf/analysis.hpp"
#include "rnaicgf/ssa.hpp"

namespace rnaicgf {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "Consistent";
    case Verdict::Violated: return "Violated";
    case Verdict::NotApplicable: return "NotApplicable";
  }
  return "unknown";
}

RmProgram decrement_gadget() {
  return RmProgram({DecJump{Register::R1, 2}, Halt{}, Halt{}});
}

CompiledMachine default_gadget_compiler(const RmProgram& rm, Count h) {
  return compile_recursive(rm, EncodingConfig::recursive(h));
}

namespace {

// Exact values carry solver round-off; intervals are clamped to [0, 1].
constexpr double kSolveSlack = 1e-9;

bool matches(const Observation& obs, const RmState& expected) {
  return obs.kind == TokenKind::Halted && obs.index == expected.pc && obs.r1 == expected.r1 &&
         obs.r2 == expected.r2;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(seed ^ splitmix64((a << 32) ^ b));
}

bool clean(const MachineAudit& a) {
  return a.token_violations == 0 && a.sirna_decreases == 0 && a.yield_mismatches == 0;
}

// Runs an ensemble to absorption and counts final solutions accepted by `ok`.
template <class Pred>
std::pair<MonteCarlo, MachineAudit> monte_carlo(const CompiledMachine& machine,
                                                const CgfProgram& program, std::uint64_t trials,
                                                std::uint64_t seed, unsigned jobs,
                                                std::uint64_t max_steps, double confidence,
                                                Pred ok) {
  std::vector<char> success(trials, 0);
  std::vector<MachineAudit> audits(trials);
  EnsembleOptions opts;
  opts.jobs = jobs;
  opts.inspect = [&](std::uint64_t i, const Trajectory& t) {
    audits[i] = audit_trajectory(machine, t);
    success[i] = t.outcome == Outcome::Terminal && ok(t.final_solution()) ? 1 : 0;
  };
  run_ensemble(program, StopCondition::steps(max_steps), trials, seed, opts);
  MonteCarlo mc;
  MachineAudit total;
  for (std::uint64_t i = 0; i < trials; ++i) {
    mc.successes += static_cast<std::uint64_t>(success[i]);
    total += audits[i];
  }
  mc.trials = trials;
  mc.estimate = static_cast<double>(mc.successes) / static_cast<double>(trials);
  mc.ci = wilson_interval(mc.successes, trials, confidence);
  return {mc, total};
}

}  // namespace

std::vector<VerificationReport> verify_proposition(Count l_min, Count l_max, Count h_min,
                                                   Count h_max,
                                                   const PropositionOptions& options) {
  if (l_min > l_max || h_min > h_max) throw std::invalid_argument("empty l or h range");
  const RmProgram gadget = decrement_gadget();
  const std::uint64_t cases = (l_max - l_min + 1) * (h_max - h_min + 1);
  // The verdict's Monte-Carlo check is family-wise over all cases.
  const double family_confidence = 1.0 - (1.0 - options.confidence) / static_cast<double>(cases);
  std::vector<VerificationReport> reports;
  for (Count l = l_min; l <= l_max; ++l) {
    for (Count h = h_min; h <= h_max; ++h) {
      VerificationReport rep;
      rep.quantity = "correct_step_probability";
      rep.parameters = {{"l", static_cast<std::int64_t>(l)}, {"h", static_cast<std::int64_t>(h)}};
      const CompiledMachine machine = options.compiler(gadget, h);
      const RmState start{0, l, 0, false};
      const RmState expected = rm_step(gadget, start);
      const CgfProgram program = with_initial(machine, start);
      auto target = [&](const Solution& s) {
        Observation obs = decode_solution(s, machine);
        if (!matches(obs, expected)) return false;
        return l == 0 || obs.sirna >= h + 1;
      };
      const StateSpace space = enumerate_state_space(program, options.max_states);
      const AbsorptionResult exact = absorption_probabilities(space, target);
      rep.exact = exact.probability;
      rep.closed_form = jump_probability_closed_form(l, h);
      rep.extras["solve_residual"] = exact.residual;
      rep.extras["states"] = static_cast<double>(space.states.size());
      bool ok = std::abs(exact.probability - *rep.closed_form) < options.exact_tolerance;
      if (!ok) rep.notes.push_back("exact probability differs from closed form");
      if (l >= 1 && h >= 1) {
        rep.bound = proposition_bound(l, h);
        if (!(*rep.closed_form > *rep.bound && exact.probability > *rep.bound)) {
          ok = false;
          rep.notes.push_back("probability does not exceed 1 - 1/h");
        }
      }
      if (options.mc_trials > 0) {
        auto [mc, audit] = monte_carlo(machine, program, options.mc_trials,
                                       mix_seed(options.seed, l, h), options.jobs, 10'000'000,
                                       options.confidence, target);
        rep.monte_carlo = mc;
        rep.audit = audit;
        const Interval family = wilson_interval(mc.successes, mc.trials, family_confidence);
        rep.extras["family_ci_lo"] = family.lo;
        rep.extras["family_ci_hi"] = family.hi;
        if (exact.probability < family.lo - kSolveSlack ||
            exact.probability > family.hi + kSolveSlack) {
          ok = false;
          rep.notes.push_back("Monte-Carlo interval excludes the exact value");
        }
        if (!clean(audit)) {
          ok = false;
          rep.notes.push_back("trajectory invariant violated");
        }
      }
      rep.verdict = ok ? Verdict::Consistent : Verdict::Violated;
      reports.push_back(std::move(rep));
    }
  }
  return reports;
}

VerificationReport verify_naive_jump(Count l, std::uint64_t trials, std::uint64_t seed,
                                     unsigned jobs, double confidence) {
  const RmProgram gadget = decrement_gadget();
  const CompiledMachine machine = compile_naive(gadget);
  const CgfProgram program = with_initial(machine, RmState{0, l, 0, false});
  const auto dec = std::get<DecJump>(gadget[0]);
  auto wrong_jump = [&](const Solution& s) {
    Observation obs = decode_solution(s, machine);
    return obs.kind == TokenKind::Halted && obs.index == dec.target && obs.r1 == l;
  };
  VerificationReport rep;
  rep.quantity = "naive_jump_probability";
  rep.parameters = {{"l", static_cast<std::int64_t>(l)}};
  const StateSpace space = enumerate_state_space(program, 100000);
  rep.exact = absorption_probabilities(space, wrong_jump).probability;
  rep.closed_form = 1.0 / (static_cast<double>(l) + 1.0);
  bool ok = std::abs(*rep.exact - *rep.closed_form) < 1e-9;
  if (trials > 0) {
    auto [mc, audit] =
        monte_carlo(machine, program, trials, mix_seed(seed, l, 0), jobs, 10'000'000, confidence,
                    wrong_jump);
    rep.monte_carlo = mc;
    rep.audit = audit;
    ok = ok && mc.ci.lo - kSolveSlack <= *rep.exact && *rep.exact <= mc.ci.hi + kSolveSlack &&
         clean(audit);
  }
  rep.verdict = ok ? Verdict::Consistent : Verdict::Violated;
  return rep;
}

std::vector<VerificationReport> verify_termination(const RmProgram& rm, const RmState& initial,
                                                   const std::vector<Count>& h_values,
                                                   const TerminationOptions& options) {
  const RmRun run = rm_run(rm, initial, options.rm_max_steps);
  std::vector<VerificationReport> reports;
  std::vector<Count> yields;
  for (std::size_t i = 0; i + 1 < run.trace.size(); ++i) {
    const RmState& s = run.trace[i];
    if (const auto* dec = std::get_if<DecJump>(&rm[s.pc])) {
      const bool success = s.reg(dec->reg) > 0;
      yields.push_back(!success                 ? 0
                       : dec->reg == Register::R1 ? options.sirna_per_cleave
                                                  : options.sirna_per_degrade);
    }
  }
  for (Count h : h_values) {
    if (h < 1) throw std::invalid_argument("verify_termination needs h >= 1");
    VerificationReport rep;
    rep.quantity = "faithful_termination";
    rep.parameters = {{"h", static_cast<std::int64_t>(h)},
                      {"d", static_cast<std::int64_t>(run.decrement_executions)}};
    if (!run.halted) {
      rep.verdict = Verdict::NotApplicable;
      rep.notes.push_back("register machine does not halt within " +
                          std::to_string(options.rm_max_steps) + " steps");
      reports.push_back(std::move(rep));
      continue;
    }
    const TerminationBound tb = termination_bound(h, run.decrement_executions);
    rep.bound = yield_chain_bound(h, yields);
    rep.extras["product_bound"] = tb.product_bound;
    rep.extras["sum_bound"] = tb.sum_bound;
    rep.notes.push_back(
        "the series 1 - sum_{k>=h} 1/k diverges; finite bounds over the d executed "
        "decrements are reported instead");

    EncodingConfig cfg = EncodingConfig::recursive(h);
    cfg.sirna_per_cleave = options.sirna_per_cleave;
    cfg.sirna_per_degrade = options.sirna_per_degrade;
    const CompiledMachine machine = compile_recursive(rm, cfg);
    const CgfProgram program = with_initial(machine, initial);
    const RmState final_state = run.final_state();
    auto faithful = [&](const Solution& s) { return matches(decode_solution(s, machine), final_state); };
    auto [mc, audit] = monte_carlo(machine, program, options.trials, mix_seed(options.seed, h, 1),
                                   options.jobs, options.cgf_max_steps, options.confidence,
                                   faithful);
    rep.monte_carlo = mc;
    rep.audit = audit;
    bool ok = mc.ci.lo >= *rep.bound - options.tolerance;
    if (!ok) rep.notes.push_back("lower confidence limit is below the termination bound");
    if (!clean(audit)) {
      ok = false;
      rep.notes.push_back("trajectory invariant violated");
    }
    rep.verdict = ok ? Verdict::Consistent : Verdict::Violated;
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace rnaicgf
