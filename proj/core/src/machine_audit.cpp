#include "rnaicgf/compiler.hpp"

namespace rnaicgf {

MachineAudit& MachineAudit::operator+=(const MachineAudit& o) {
  steps += o.steps;
  token_violations += o.token_violations;
  sirna_decreases += o.sirna_decreases;
  successful_decrements += o.successful_decrements;
  yield_mismatches += o.yield_mismatches;
  wrong_jumps += o.wrong_jumps;
  return *this;
}

namespace {

// Index i when `name` is "I{i}"/"B{i}" for a DecJump instruction.
std::optional<std::size_t> decjump_owner(const CompiledMachine& m, const std::string& name,
                                         bool retry) {
  auto tok = parse_token_name(name, m.names.size());
  if (!tok || tok->retry != retry || !std::holds_alternative<DecJump>(m.source[tok->index])) {
    return std::nullopt;
  }
  return tok->index;
}

}  // namespace

MachineAudit audit_trajectory(const CompiledMachine& m, const Trajectory& trajectory) {
  MachineAudit audit;
  const bool recursive = m.config.scheme == Scheme::Recursive;
  const Solution* before = &trajectory.initial;
  if (token_count(*before, m) != 1) ++audit.token_violations;
  for (const auto& st : trajectory.steps) {
    const Solution& after = st.solution;
    ++audit.steps;
    if (token_count(after, m) != 1) ++audit.token_violations;
    const Count si_before = before->count(species::kSiRna);
    const Count si_after = after.count(species::kSiRna);
    if (si_after < si_before) ++audit.sirna_decreases;

    if (const auto* c = std::get_if<Collision>(&st.reaction.kind)) {
      if (c->channel == channel::kR1 || c->channel == channel::kR2) {
        ++audit.successful_decrements;
        if (recursive) {
          Count expected = c->channel == channel::kR1 ? m.config.sirna_per_cleave
                           : m.config.aberrant_branch ? 0
                                                      : m.config.sirna_per_degrade;
          if (si_after - si_before != expected) ++audit.yield_mismatches;
        }
      }
    } else {
      const auto& d = std::get<Decay>(st.reaction.kind);
      if (recursive && d.species == species::kDegR &&
          si_after - si_before != m.config.sirna_per_degrade) {
        ++audit.yield_mismatches;
      }
      // The jump is the tau choice (index 1) of I_i (naive) or B_i (recursive).
      if (d.choice == 1) {
        if (auto owner = decjump_owner(m, d.species, recursive)) {
          const auto& dec = std::get<DecJump>(m.source[*owner]);
          const char* reg = dec.reg == Register::R1 ? species::kDsRna : species::kMRna;
          if (before->count(reg) > 0) ++audit.wrong_jumps;
        }
      }
    }
    before = &after;
  }
  return audit;
}

std::vector<PcRegisters> observed_trace(const CompiledMachine& m, const Trajectory& trajectory) {
  std::vector<PcRegisters> out;
  auto visit = [&](const Solution& s) {
    Observation obs = decode_solution(s, m);
    if (obs.kind != TokenKind::Instruction && obs.kind != TokenKind::Halted) return;
    PcRegisters p{obs.index, obs.r1, obs.r2};
    if (out.empty() || out.back() != p) out.push_back(p);
  };
  visit(trajectory.initial);
  for (const auto& st : trajectory.steps) visit(st.solution);
  return out;
}

std::vector<PcRegisters> collapse_trace(const std::vector<RmState>& trace) {
  std::vector<PcRegisters> out;
  for (const auto& s : trace) {
    PcRegisters p{s.pc, s.r1, s.r2};
    if (out.empty() || out.back() != p) out.push_back(p);
  }
  return out;
}

}  // namespace rnaicgf
