#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "../oracles.hpp"
#include "rnaicgf/rm.hpp"

using namespace rnaicgf;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(RNAICGF_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Rm, StepSemantics) {
  RmProgram p({Inc{Register::R1}, DecJump{Register::R2, 0}, Halt{}});
  EXPECT_EQ(rm_step(p, {0, 0, 0, false}), (RmState{1, 1, 0, false}));
  EXPECT_EQ(rm_step(p, {1, 4, 2, false}), (RmState{2, 4, 1, false}));
  EXPECT_EQ(rm_step(p, {1, 4, 0, false}), (RmState{0, 4, 0, false}));
  EXPECT_EQ(rm_step(p, {2, 4, 0, false}).halted, true);
  EXPECT_THROW(rm_step(p, {2, 4, 0, true}), RmError);
}

TEST(Rm, ValidationRejectsBadPrograms) {
  EXPECT_THROW(RmProgram({}), RmError);
  EXPECT_THROW(RmProgram({DecJump{Register::R1, 5}, Halt{}}), RmError);
  EXPECT_THROW(RmProgram({Halt{}, Inc{Register::R1}}), RmError);
  EXPECT_NO_THROW(RmProgram({Halt{}}));
}

TEST(Rm, IncrementRun) {
  auto p = parse_rm(read_fixture("increment.rm"));
  auto run = rm_run(p, {}, 100);
  EXPECT_TRUE(run.halted);
  EXPECT_EQ(run.final_state().r1, 2u);
  EXPECT_EQ(run.final_state().r2, 1u);
  EXPECT_EQ(run.trace.size(), 4u);
  EXPECT_EQ(run.decrement_executions, 0u);
}

TEST(Rm, TransferExhaustive) {
  auto p = parse_rm(read_fixture("transfer.rm"));
  for (std::uint64_t r1 = 0; r1 <= 20; ++r1) {
    for (std::uint64_t r2 = 0; r2 <= 20; ++r2) {
      auto run = rm_run(p, {0, r1, r2, false}, 10000);
      ASSERT_TRUE(run.halted);
      EXPECT_EQ(run.final_state().r1, r1 + r2);
      EXPECT_EQ(run.final_state().r2, 0u);
      EXPECT_EQ(run.decrement_executions, r2 + 1);
    }
  }
}

TEST(Rm, NonterminatingHitsBudget) {
  auto p = parse_rm(read_fixture("nonterminating.rm"));
  auto run = rm_run(p, {}, 1000);
  EXPECT_FALSE(run.halted);
  EXPECT_EQ(run.trace.size(), 1001u);
  EXPECT_FALSE(run.final_state().halted);
}

TEST(Rm, ParseErrorsCarryLine) {
  auto line_of = [](std::string_view text) -> std::size_t {
    try {
      parse_rm(text);
    } catch (const RmError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("0: INC r3\n1: HALT\n"), 1u);
  EXPECT_EQ(line_of("0: INC r1\n1: JUMP 0\n"), 2u);
  EXPECT_EQ(line_of("# c\n0: DECJMP r1\n1: HALT\n"), 2u);
  EXPECT_EQ(line_of("0: HALT\n0: HALT\n"), 2u);
  EXPECT_EQ(line_of("0: HALT extra\n"), 1u);
  EXPECT_THROW(parse_rm("0: INC r1\n2: HALT\n"), RmError);
  EXPECT_THROW(parse_rm("0: DECJMP r1 9\n1: HALT\n"), RmError);
}

TEST(Rm, OrderOfIndicesDoesNotMatter) {
  auto a = parse_rm("1: HALT\n0: INC r2\n");
  EXPECT_EQ(a, RmProgram({Inc{Register::R2}, Halt{}}));
}

TEST(Rm, PrintParseRoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    RmProgram p = oracle::random_rm(rng, 8);
    EXPECT_EQ(parse_rm(print_rm(p)), p);
  }
}

TEST(Rm, DecJumpExamples) {
  std::vector<RmInstruction> ins(7, Halt{});
  ins[0] = DecJump{Register::R2, 5};
  RmProgram p(ins);
  EXPECT_EQ(rm_step(p, {0, 4, 0, false}), (RmState{5, 4, 0, false}));
  EXPECT_EQ(rm_step(p, {0, 4, 3, false}), (RmState{1, 4, 2, false}));
}

TEST(Rm, HaltOnlyProgram) {
  auto run = rm_run(RmProgram({Halt{}}), {}, 10);
  EXPECT_TRUE(run.halted);
  EXPECT_EQ(run.trace.size(), 1u);
  EXPECT_EQ(run.decrement_executions, 0u);
}

TEST(Rm, ParseCountsInstructions) {
  EXPECT_EQ(parse_rm("0: INC r1\n1: HALT").size(), 2u);
  EXPECT_THROW(parse_rm("0: DECJMP r2 9\n1: HALT"), RmError);
}
