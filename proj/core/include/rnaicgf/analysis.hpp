#pragma once

// Exact and statistical analysis of compiled machines: closed-form jump
// probabilities of the siRNA-inhibited decrement, the faithful-termination
// lower bounds, exact absorption probabilities of finite CTMCs, and
// Monte-Carlo verification reports.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rnaicgf/cgf.hpp"
#include "rnaicgf/compiler.hpp"
#include "rnaicgf/rm.hpp"

namespace rnaicgf {

/// Probability that the recursive decrement gadget with register value `l`
/// and `h` siRNAs performs the correct step: 1 for l = 0 (the jump),
/// otherwise s / (1 - q) with s = l/(l+1), q = h/((l+1)(h+1)).
double jump_probability_closed_form(Count l, Count h);

/// Lower bound 1 - 1/h on the correct-decrement probability (l >= 1, h >= 1).
double proposition_bound(Count l, Count h);

struct TerminationBound {
  double sum_bound;      // 1 - sum_{k=h}^{h+d} 1/k, may be <= 0
  double product_bound;  // prod_{k=h}^{h+d} (1 - 1/k)
};
/// Throws std::invalid_argument for h == 0.
TerminationBound termination_bound(Count h, Count d);

/// prod_{i=0}^{d} (1 - 1/(h + y_1 + ... + y_i)) for per-decrement siRNA
/// yields y_1..y_d (0 for a zero-test). Equals the product bound when every
/// yield is 1.
double yield_chain_bound(Count h, const std::vector<Count>& yields);

struct Transition {
  std::size_t target;
  double rate;
};

struct StateSpace {
  std::vector<Solution> states;
  std::vector<std::vector<Transition>> transitions;  // aggregated per target
  std::vector<bool> absorbing;
  std::size_t initial = 0;

  double exit_rate(std::size_t s) const;
};

/// Breadth-first reachable states from program.init. Throws
/// StateSpaceOverflow if more than max_states states are discovered.
StateSpace enumerate_state_space(const CgfProgram& program, std::size_t max_states);

struct AbsorptionResult {
  double probability;
  double residual;  // max-norm residual of the solved system
  bool iterative;
};

/// Probability of absorption in a state satisfying `target`, from the
/// initial state. Direct LU below 2000 transient states, Gauss-Seidel above.
/// Throws SolveError if some state cannot reach absorption or the residual
/// is not below 1e-10.
AbsorptionResult absorption_probabilities(const StateSpace& space,
                                        const std::function<bool(const Solution&)>& target);

struct Interval {
  double lo;
  double hi;
};

/// Two-sided Wilson score interval.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence = 0.99);
/// Upper-tail critical value of chi-squared with `dof` degrees of freedom.
double chi_squared_critical(double alpha, unsigned dof);
double normal_quantile(double p);

// ---------------------------------------------------------------------------
// Verification

enum class Verdict { Consistent, Violated, NotApplicable };
const char* to_string(Verdict v);

struct MonteCarlo {
  double estimate = 0.0;
  Interval ci{0.0, 0.0};
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
};

struct VerificationReport {
  std::string quantity;
  std::map<std::string, std::int64_t> parameters;  // e.g. l, h, d
  std::optional<double> exact;
  std::optional<double> closed_form;
  std::optional<double> bound;
  std::optional<MonteCarlo> monte_carlo;
  std::optional<MachineAudit> audit;
  std::map<std::string, double> extras;  // auxiliary bounds and diagnostics
  Verdict verdict = Verdict::Consistent;
  std::vector<std::string> notes;
};

/// Single-decrement program used as the correct-step gadget:
/// 0: DECJMP r1 2 / 1: HALT / 2: HALT, so the decrement and jump sinks are
/// distinct halt tokens.
RmProgram decrement_gadget();

using GadgetCompiler = std::function<CompiledMachine(const RmProgram&, Count h)>;
CompiledMachine default_gadget_compiler(const RmProgram& rm, Count h);

struct PropositionOptions {
  std::uint64_t mc_trials = 2000;  // 0 disables the Monte-Carlo column
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  double confidence = 0.99;
  double exact_tolerance = 1e-9;
  std::size_t max_states = 100000;
  GadgetCompiler compiler = default_gadget_compiler;
};

std::vector<VerificationReport> verify_proposition(Count l_min, Count l_max, Count h_min,
                                                   Count h_max,
                                                   const PropositionOptions& options = {});

struct TerminationOptions {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  double confidence = 0.99;
  double tolerance = 0.0;  // subtracted from the bound before comparison
  std::uint64_t rm_max_steps = 1000000;
  std::uint64_t cgf_max_steps = 1000000;  // per trajectory
  Count sirna_per_cleave = 1;
  Count sirna_per_degrade = 1;
};

std::vector<VerificationReport> verify_termination(const RmProgram& rm, const RmState& initial,
                                                   const std::vector<Count>& h_values,
                                                   const TerminationOptions& options = {});

/// Monte-Carlo estimate of first-step wrong-jump probability for the naive
/// decrement gadget, next to its exact value.
VerificationReport verify_naive_jump(Count l, std::uint64_t trials, std::uint64_t seed,
                                     unsigned jobs = 1, double confidence = 0.99);

// Report output
std::string proposition_csv(const std::vector<VerificationReport>& reports);
std::string termination_csv(const std::vector<VerificationReport>& reports);
std::string reports_json(const std::vector<VerificationReport>& reports);
std::string reports_table(const std::vector<VerificationReport>& reports);

}  // namespace rnaicgf
