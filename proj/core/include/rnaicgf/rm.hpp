#pragma once

// Two-register Minsky machine and its reference interpreter.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rnaicgf/error.hpp"

namespace rnaicgf {

enum class Register { R1 = 1, R2 = 2 };

struct Inc {
  Register reg;
  friend bool operator==(const Inc&, const Inc&) = default;
};

/// If the register is positive, decrement it and fall through to pc + 1;
/// otherwise jump to `target`.
struct DecJump {
  Register reg;
  std::size_t target;
  friend bool operator==(const DecJump&, const DecJump&) = default;
};

struct Halt {
  friend bool operator==(const Halt&, const Halt&) = default;
};

using RmInstruction = std::variant<Inc, DecJump, Halt>;

class RmProgram {
 public:
  /// Throws RmError if empty, a target is out of range, or an Inc/DecJump is
  /// the last instruction (its fall-through would leave the program).
  explicit RmProgram(std::vector<RmInstruction> instructions);

  std::size_t size() const { return instructions_.size(); }
  const RmInstruction& operator[](std::size_t i) const { return instructions_.at(i); }
  const std::vector<RmInstruction>& instructions() const { return instructions_; }

  friend bool operator==(const RmProgram&, const RmProgram&) = default;

 private:
  std::vector<RmInstruction> instructions_;
};

struct RmState {
  std::size_t pc = 0;
  std::uint64_t r1 = 0;
  std::uint64_t r2 = 0;
  bool halted = false;

  std::uint64_t reg(Register r) const { return r == Register::R1 ? r1 : r2; }
  friend bool operator==(const RmState&, const RmState&) = default;
};

/// Throws RmError when stepping a halted state.
RmState rm_step(const RmProgram& program, const RmState& state);

struct RmRun {
  std::vector<RmState> trace;  // starts with the initial state
  bool halted = false;
  /// Every executed DecJump, whether it decremented or jumped.
  std::uint64_t decrement_executions = 0;

  const RmState& final_state() const { return trace.back(); }
};

/// Runs until a Halt instruction is reached or `max_steps` Inc/DecJump
/// instructions have executed. Reaching Halt marks the last trace entry
/// halted without consuming a step.
RmRun rm_run(const RmProgram& program, const RmState& initial, std::uint64_t max_steps);

RmProgram parse_rm(std::string_view text);
std::string print_rm(const RmProgram& program);

}  // namespace rnaicgf
