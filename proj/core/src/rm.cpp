#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "rnaicgf/rm.hpp"

namespace rnaicgf {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::uint64_t& reg_ref(RmState& s, Register r) { return r == Register::R1 ? s.r1 : s.r2; }

const char* reg_name(Register r) { return r == Register::R1 ? "r1" : "r2"; }

}  // namespace

RmProgram::RmProgram(std::vector<RmInstruction> instructions)
    : instructions_(std::move(instructions)) {
  if (instructions_.empty()) throw RmError("program has no instructions");
  const std::size_t n = instructions_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (const auto* d = std::get_if<DecJump>(&instructions_[i]); d && d->target >= n) {
      throw RmError("instruction " + std::to_string(i) + " jumps to " +
                    std::to_string(d->target) + ", outside 0.." + std::to_string(n - 1));
    }
    if (i + 1 == n && !std::holds_alternative<Halt>(instructions_[i])) {
      throw RmError("last instruction " + std::to_string(i) + " falls through past the end");
    }
  }
}

RmState rm_step(const RmProgram& program, const RmState& state) {
  if (state.halted) throw RmError("cannot step a halted machine");
  RmState next = state;
  std::visit(overloaded{
                 [&](const Inc& inc) {
                   reg_ref(next, inc.reg) += 1;
                   next.pc += 1;
                 },
                 [&](const DecJump& dec) {
                   auto& r = reg_ref(next, dec.reg);
                   if (r > 0) {
                     r -= 1;
                     next.pc += 1;
                   } else {
                     next.pc = dec.target;
                   }
                 },
                 [&](const Halt&) { next.halted = true; },
             },
             program[state.pc]);
  return next;
}

RmRun rm_run(const RmProgram& program, const RmState& initial, std::uint64_t max_steps) {
  RmRun run;
  run.trace.push_back(initial);
  std::uint64_t steps = 0;
  for (;;) {
    RmState& cur = run.trace.back();
    if (cur.halted || std::holds_alternative<Halt>(program[cur.pc])) {
      cur.halted = true;
      run.halted = true;
      break;
    }
    if (steps >= max_steps) break;
    if (std::holds_alternative<DecJump>(program[cur.pc])) ++run.decrement_executions;
    RmState next = rm_step(program, cur);
    run.trace.push_back(next);
    ++steps;
  }
  return run;
}

namespace {

std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

Register parse_register(const std::string& word, std::size_t line) {
  if (word == "r1") return Register::R1;
  if (word == "r2") return Register::R2;
  throw RmError("bad register '" + word + "' (expected r1 or r2)", line);
}

}  // namespace

RmProgram parse_rm(std::string_view text) {
  std::map<std::size_t, std::pair<RmInstruction, std::size_t>> by_index;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::string label;
    if (!(line >> label)) continue;
    if (label.back() != ':') {
      // allow "3 : INC r1"
      std::string colon;
      if (!(line >> colon) || colon != ":") throw RmError("expected 'IDX:'", line_no);
    } else {
      label.pop_back();
    }
    auto idx = parse_index(label);
    if (!idx) throw RmError("bad instruction index '" + label + "'", line_no);
    std::string op;
    if (!(line >> op)) throw RmError("missing mnemonic", line_no);
    RmInstruction ins;
    if (op == "INC") {
      std::string r;
      if (!(line >> r)) throw RmError("INC needs a register", line_no);
      ins = Inc{parse_register(r, line_no)};
    } else if (op == "DECJMP") {
      std::string r, t;
      if (!(line >> r >> t)) throw RmError("DECJMP needs a register and a target", line_no);
      auto target = parse_index(t);
      if (!target) throw RmError("bad jump target '" + t + "'", line_no);
      ins = DecJump{parse_register(r, line_no), *target};
    } else if (op == "HALT") {
      ins = Halt{};
    } else {
      throw RmError("bad mnemonic '" + op + "'", line_no);
    }
    std::string extra;
    if (line >> extra) throw RmError("unexpected '" + extra + "'", line_no);
    if (!by_index.emplace(*idx, std::pair{ins, line_no}).second) {
      throw RmError("instruction index " + std::to_string(*idx) + " defined twice", line_no);
    }
  }
  std::vector<RmInstruction> instructions;
  for (const auto& [idx, entry] : by_index) {
    if (idx != instructions.size()) {
      throw RmError("instruction indices must be 0..n-1; missing " +
                        std::to_string(instructions.size()),
                    entry.second);
    }
    instructions.push_back(entry.first);
  }
  return RmProgram(std::move(instructions));
}

std::string print_rm(const RmProgram& program) {
  std::ostringstream os;
  for (std::size_t i = 0; i < program.size(); ++i) {
    os << i << ": ";
    std::visit(overloaded{
                   [&](const Inc& inc) { os << "INC " << reg_name(inc.reg); },
                   [&](const DecJump& d) { os << "DECJMP " << reg_name(d.reg) << " " << d.target; },
                   [&](const Halt&) { os << "HALT"; },
               },
               program[i]);
    os << "\n";
  }
  return os.str();
}

}  // namespace rnaicgf
