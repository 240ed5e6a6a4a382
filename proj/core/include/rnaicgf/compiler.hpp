#pragma once

// Compilation of two-register machines into CGF.
//
// Species: instruction i -> "I{i}", decrement retry reagent -> "B{i}",
// registers -> "dsRNA" (r1) and "mRNA" (r2), inhibitor -> "siRNA".
// Channels: "a1", "a2" (register offers), "s" (inhibition). All rates 1.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rnaicgf/cgf.hpp"
#include "rnaicgf/rm.hpp"
#include "rnaicgf/ssa.hpp"

namespace rnaicgf {

namespace species {
inline constexpr const char* kDsRna = "dsRNA";
inline constexpr const char* kMRna = "mRNA";
inline constexpr const char* kSiRna = "siRNA";
inline constexpr const char* kMRnaAb = "mRNAab";
inline constexpr const char* kDeg = "Deg";
inline constexpr const char* kDegR = "DegR";
}  // namespace species

namespace channel {
inline constexpr const char* kR1 = "a1";
inline constexpr const char* kR2 = "a2";
inline constexpr const char* kInhibit = "s";
}  // namespace channel

std::string instruction_species(std::size_t i);
std::string retry_species(std::size_t i);

struct TokenName {
  bool retry;  // B{i} rather than I{i}
  std::size_t index;
};
/// Recognizes "I{i}" / "B{i}" with i < instructions.
std::optional<TokenName> parse_token_name(std::string_view name, std::size_t instructions);

enum class Scheme { Naive, Recursive };

struct EncodingConfig {
  Scheme scheme = Scheme::Recursive;
  Count h = 0;  // initial siRNA; ignored by the naive scheme
  Count sirna_per_cleave = 1;
  Count sirna_per_degrade = 1;  // recursive scheme only
  bool aberrant_branch = false;

  static EncodingConfig naive() { return EncodingConfig{Scheme::Naive, 0, 1, 1, false}; }
  static EncodingConfig recursive(Count h) { return EncodingConfig{Scheme::Recursive, h, 1, 1, false}; }
};

struct InstructionNames {
  std::string token;                // I{i}
  std::optional<std::string> retry;  // B{i}, recursive DecJump only
};

struct CompiledMachine {
  RmProgram source;
  EncodingConfig config;
  CgfProgram program;  // init left empty; see encode_state
  std::vector<InstructionNames> names;

  Count yield(Register r) const {
    return r == Register::R1 ? config.sirna_per_cleave : config.sirna_per_degrade;
  }
};

CompiledMachine compile_naive(const RmProgram& rm, Count sirna_per_cleave = 1);
/// Throws std::invalid_argument unless cfg.scheme is Recursive and yields are >= 1.
CompiledMachine compile_recursive(const RmProgram& rm, const EncodingConfig& cfg);
/// Dispatches on cfg.scheme.
CompiledMachine compile(const RmProgram& rm, const EncodingConfig& cfg);

/// I_pc | r1 x dsRNA | r2 x mRNA | h x siRNA (h only for the recursive scheme).
Solution encode_state(const RmState& state, const EncodingConfig& cfg);

/// Machine program with its init set to encode_state(state).
CgfProgram with_initial(const CompiledMachine& machine, const RmState& state);

enum class TokenKind {
  Instruction,  // I_i of an Inc/DecJump
  Retry,        // B_i
  Halted,       // I_i of a Halt instruction
  None,         // no token present
};

struct Observation {
  TokenKind kind = TokenKind::None;
  std::size_t index = 0;
  Count r1 = 0;
  Count r2 = 0;
  Count sirna = 0;
  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Throws EncodingError when more than one instruction token is present.
Observation decode_solution(const Solution& solution, const CompiledMachine& machine);

/// Total multiplicity of all I_i and B_i species.
Count token_count(const Solution& solution, const CompiledMachine& machine);

struct MachineAudit {
  std::uint64_t steps = 0;
  std::uint64_t token_violations = 0;
  std::uint64_t sirna_decreases = 0;
  std::uint64_t successful_decrements = 0;
  std::uint64_t yield_mismatches = 0;
  std::uint64_t wrong_jumps = 0;

  MachineAudit& operator+=(const MachineAudit& o);
};

/// Per-step checks along a trajectory of a compiled machine: one token,
/// siRNA never decreasing (recursive), every register-consuming collision
/// releasing the configured siRNA yield, and jumps taken while the tested
/// register was positive.
MachineAudit audit_trajectory(const CompiledMachine& machine, const Trajectory& trajectory);

/// Decoded (pc, r1, r2) at instruction-token states, consecutive repeats
/// collapsed. Retry and token-free states are skipped.
struct PcRegisters {
  std::size_t pc = 0;
  Count r1 = 0;
  Count r2 = 0;
  friend bool operator==(const PcRegisters&, const PcRegisters&) = default;
};
std::vector<PcRegisters> observed_trace(const CompiledMachine& machine, const Trajectory& trajectory);
std::vector<PcRegisters> collapse_trace(const std::vector<RmState>& trace);

}  // namespace rnaicgf
