#include <charconv>
#include <stdexcept>

#include "rnaicgf/compiler.hpp"

namespace rnaicgf {

std::string instruction_species(std::size_t i) { return "I" + std::to_string(i); }
std::string retry_species(std::size_t i) { return "B" + std::to_string(i); }

std::optional<TokenName> parse_token_name(std::string_view name, std::size_t instructions) {
  if (name.size() < 2 || (name[0] != 'I' && name[0] != 'B')) return std::nullopt;
  std::size_t index = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
  if (ec != std::errc{} || ptr != name.data() + name.size() || index >= instructions) {
    return std::nullopt;
  }
  if (name.size() > 2 && name[1] == '0') return std::nullopt;  // no leading zeros
  return TokenName{name[0] == 'B', index};
}

namespace {

const char* register_species(Register r) {
  return r == Register::R1 ? species::kDsRna : species::kMRna;
}
const char* register_channel(Register r) { return r == Register::R1 ? channel::kR1 : channel::kR2; }

Molecule choice_of(std::initializer_list<Choice> choices) { return Molecule{choices}; }

Solution one(const std::string& name) { return Solution{{name, 1}}; }

// Instruction reagents shared by both schemes; `decrement` builds the
// DecJump reagents.
template <class DecrementFn>
CompiledMachine compile_instructions(const RmProgram& rm, const EncodingConfig& cfg,
                                     DecrementFn decrement) {
  CompiledMachine m{rm, cfg, {}, {}};
  Environment& env = m.program.env;
  for (std::size_t i = 0; i < rm.size(); ++i) {
    InstructionNames names{instruction_species(i), std::nullopt};
    const RmInstruction& ins = rm[i];
    if (const auto* inc = std::get_if<Inc>(&ins)) {
      Solution released = one(instruction_species(i + 1));
      released.add(register_species(inc->reg));
      env[names.token] = choice_of({Choice{Prefix::tau(), released}});
    } else if (const auto* dec = std::get_if<DecJump>(&ins)) {
      decrement(env, i, *dec, names);
    } else {
      env[names.token] = Molecule{};
    }
    m.names.push_back(std::move(names));
  }
  return m;
}

}  // namespace

CompiledMachine compile_naive(const RmProgram& rm, Count sirna_per_cleave) {
  if (sirna_per_cleave < 1) throw std::invalid_argument("sirna_per_cleave must be >= 1");
  EncodingConfig cfg = EncodingConfig::naive();
  cfg.sirna_per_cleave = sirna_per_cleave;
  auto m = compile_instructions(
      rm, cfg, [](Environment& env, std::size_t i, const DecJump& dec, InstructionNames& names) {
        env[names.token] = choice_of({
            Choice{Prefix::output(register_channel(dec.reg)), one(instruction_species(i + 1))},
            Choice{Prefix::tau(), one(instruction_species(dec.target))},
        });
      });
  Environment& env = m.program.env;
  env[species::kDsRna] =
      choice_of({Choice{Prefix::input(channel::kR1), Solution{{species::kSiRna, sirna_per_cleave}}}});
  env[species::kMRna] = choice_of({Choice{Prefix::input(channel::kR2), one(species::kDeg)}});
  env[species::kDeg] = choice_of({
      Choice{Prefix::tau(), Solution{}},
      Choice{Prefix::tau(), one(species::kMRnaAb)},
  });
  env[species::kSiRna] = Molecule{};
  env[species::kMRnaAb] = Molecule{};
  return m;
}

CompiledMachine compile_recursive(const RmProgram& rm, const EncodingConfig& cfg) {
  if (cfg.scheme != Scheme::Recursive) {
    throw std::invalid_argument("compile_recursive requires the recursive scheme");
  }
  if (cfg.sirna_per_cleave < 1 || cfg.sirna_per_degrade < 1) {
    throw std::invalid_argument("siRNA yields must be >= 1");
  }
  auto m = compile_instructions(
      rm, cfg, [](Environment& env, std::size_t i, const DecJump& dec, InstructionNames& names) {
        names.retry = retry_species(i);
        env[names.token] = choice_of({
            Choice{Prefix::output(register_channel(dec.reg)), one(instruction_species(i + 1))},
            Choice{Prefix::tau(), one(*names.retry)},
        });
        // Inhibited by siRNA: back to I_i, otherwise take the jump.
        env[*names.retry] = choice_of({
            Choice{Prefix::output(channel::kInhibit), one(names.token)},
            Choice{Prefix::tau(), one(instruction_species(dec.target))},
        });
      });
  Environment& env = m.program.env;
  const Solution cleave_yield{{species::kSiRna, cfg.sirna_per_cleave}};
  const Solution degrade_yield{{species::kSiRna, cfg.sirna_per_degrade}};
  env[species::kDsRna] = choice_of({Choice{Prefix::input(channel::kR1), cleave_yield}});
  if (cfg.aberrant_branch) {
    env[species::kMRna] = choice_of({Choice{Prefix::input(channel::kR2), one(species::kDegR)}});
    Solution aberrant = degrade_yield;
    aberrant.add(species::kMRnaAb);
    env[species::kDegR] = choice_of({
        Choice{Prefix::tau(), degrade_yield},
        Choice{Prefix::tau(), aberrant},
    });
  } else {
    env[species::kMRna] = choice_of({Choice{Prefix::input(channel::kR2), degrade_yield}});
  }
  env[species::kSiRna] = choice_of({Choice{Prefix::input(channel::kInhibit), one(species::kSiRna)}});
  env[species::kMRnaAb] = Molecule{};
  return m;
}

CompiledMachine compile(const RmProgram& rm, const EncodingConfig& cfg) {
  return cfg.scheme == Scheme::Naive ? compile_naive(rm, cfg.sirna_per_cleave)
                                     : compile_recursive(rm, cfg);
}

Solution encode_state(const RmState& state, const EncodingConfig& cfg) {
  Solution s;
  s.add(instruction_species(state.pc));
  s.add(species::kDsRna, state.r1);
  s.add(species::kMRna, state.r2);
  if (cfg.scheme == Scheme::Recursive) s.add(species::kSiRna, cfg.h);
  return s;
}

CgfProgram with_initial(const CompiledMachine& machine, const RmState& state) {
  if (state.pc >= machine.source.size()) {
    throw std::out_of_range("pc " + std::to_string(state.pc) + " outside the program");
  }
  CgfProgram p = machine.program;
  p.init = encode_state(state, machine.config);
  return p;
}

Count token_count(const Solution& solution, const CompiledMachine& machine) {
  Count total = 0;
  for (const auto& [name, n] : solution) {
    auto tok = parse_token_name(name, machine.names.size());
    if (!tok) continue;
    if (!tok->retry || machine.names[tok->index].retry) total += n;
  }
  return total;
}

Observation decode_solution(const Solution& solution, const CompiledMachine& machine) {
  Observation obs;
  obs.r1 = solution.count(species::kDsRna);
  obs.r2 = solution.count(species::kMRna);
  obs.sirna = solution.count(species::kSiRna);
  Count seen = 0;
  for (const auto& [name, n] : solution) {
    auto tok = parse_token_name(name, machine.names.size());
    if (!tok || (tok->retry && !machine.names[tok->index].retry)) continue;
    seen += n;
    obs.index = tok->index;
    if (tok->retry) {
      obs.kind = TokenKind::Retry;
    } else {
      obs.kind = std::holds_alternative<Halt>(machine.source[tok->index]) ? TokenKind::Halted
                                                                           : TokenKind::Instruction;
    }
  }
  if (seen > 1) {
    throw EncodingError("solution holds " + std::to_string(seen) + " instruction tokens");
  }
  return obs;
}

}  // namespace rnaicgf
