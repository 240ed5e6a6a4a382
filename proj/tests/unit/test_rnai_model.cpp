#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "../oracles.hpp"
#include "rnaicgf/rnai_model.hpp"
#include "rnaicgf/ssa.hpp"

using namespace rnaicgf;

namespace {

RnaiParams everything_present(Count n) {
  RnaiParams p;
  p.dsRNA = p.mRNA = p.mRNAab = p.siRNA = p.Dicer = p.RISC = p.RdRp = p.Gene = n;
  p.sirna_per_cleave = 3;
  p.sirna_per_degrade = 2;
  return p;
}

void audit(CgfProgram prog, const std::vector<oracle::StoichiometryRow>& table) {
  prog.init.add("Deg", 2);  // no parameter seeds the intermediate
  auto rs = enumerate_reactions(prog.init, prog.env);
  std::set<std::string> seen;
  for (const auto& r : rs) {
    auto row = std::find_if(table.begin(), table.end(), [&](const auto& x) { return r.id() == x.id; });
    ASSERT_NE(row, table.end()) << "unexpected reaction " << r.id();
    EXPECT_EQ(r.consumed, row->consumed) << row->label;
    EXPECT_EQ(r.produced, row->produced) << row->label;
    seen.insert(r.id());
  }
  EXPECT_EQ(seen.size(), table.size());
}

}  // namespace

TEST(Rnai, BasicStoichiometry) {
  audit(build_rnai(everything_present(2)), oracle::rnai_rows(false, 3, 2));
}

TEST(Rnai, RecursiveStoichiometry) {
  audit(build_recursive_rnai(everything_present(2)), oracle::rnai_rows(true, 3, 2));
}

TEST(Rnai, PropensitiesFollowRates) {
  auto p = everything_present(1);
  p.Dicer = 4;
  p.dsRNA = 3;
  p.cleavage = 0.25;
  auto prog = build_rnai(p);
  for (const auto& r : enumerate_reactions(prog.init, prog.env)) {
    if (r.id() == "dsRNA#0?c!Dicer#0") EXPECT_DOUBLE_EQ(r.propensity, 0.25 * 12);
  }
}

TEST(Rnai, TranscriptionIsPoisson) {
  RnaiParams p;
  p.Gene = 1;
  p.transcription = 2.0;
  auto prog = build_rnai(p);
  constexpr std::uint64_t n = 4000;
  auto runs = run_ensemble(prog, StopCondition::time(5.0), n, 3);
  double sum = 0;
  for (const auto& r : runs) sum += static_cast<double>(r.final_solution.count("mRNA"));
  const double mean = sum / n;
  EXPECT_NEAR(mean, 10.0, 4 * std::sqrt(10.0 / n));
}

TEST(Rnai, RiscIsRecycledAndDicerConsumed) {
  RnaiParams p;
  p.mRNA = 8;
  p.RISC = 2;
  p.dsRNA = 5;
  p.Dicer = 3;
  p.RdRp = 4;
  auto prog = build_rnai(p);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto t = simulate(prog, StopCondition::terminal(), seed);
    Count dicer = p.Dicer;
    for (const auto& st : t.steps) {
      EXPECT_EQ(st.solution.count("RISC"), 2u);
      EXPECT_LE(st.solution.count("Dicer"), dicer);
      dicer = st.solution.count("Dicer");
    }
    EXPECT_EQ(t.final_solution().count("mRNA"), 0u);
  }
}

TEST(Rnai, RecursionAttenuatesCleavage) {
  RnaiParams p;
  p.dsRNA = 10;
  p.Dicer = 5;
  p.siRNA = 20;
  constexpr std::uint64_t n = 500;
  double plain = 0, recursive = 0;
  for (const auto& r : run_ensemble(build_rnai(p), StopCondition::terminal(), n, 1)) {
    EXPECT_EQ(r.final_solution.count("dsRNA"), 5u);
    plain += static_cast<double>(r.final_solution.count("dsRNA"));
  }
  for (const auto& r : run_ensemble(build_recursive_rnai(p), StopCondition::terminal(), n, 1)) {
    EXPECT_GE(r.final_solution.count("dsRNA"), 5u);
    recursive += static_cast<double>(r.final_solution.count("dsRNA"));
  }
  EXPECT_GT(recursive / n, plain / n + 1.0);
}

TEST(Rnai, ParamsParsing) {
  auto p = parse_rnai_params("# demo\ncleavage = 2.5\n\nDicer=3  # inline\n");
  EXPECT_DOUBLE_EQ(p.cleavage, 2.5);
  EXPECT_EQ(p.Dicer, 3u);
  EXPECT_THROW(parse_rnai_params("bogus = 1"), std::invalid_argument);
  EXPECT_THROW(parse_rnai_params("cleavage = 0"), std::invalid_argument);
  EXPECT_THROW(parse_rnai_params("Dicer = -1"), std::invalid_argument);
  EXPECT_THROW(parse_rnai_params("Dicer 3"), std::invalid_argument);
  RnaiParams q;
  set_rnai_param(q, "sirna_per_cleave", "4");
  EXPECT_EQ(q.sirna_per_cleave, 4u);
}

TEST(Rnai, ProgramsValidateAndRoundTrip) {
  for (const auto& prog : {build_rnai(everything_present(1)), build_recursive_rnai(everything_present(1))}) {
    EXPECT_NO_THROW(prog.validate());
    EXPECT_EQ(parse_cgf(print_cgf(prog)), prog);
  }
}

TEST(Rnai, InhibitionExamples) {
  RnaiParams p;
  p.siRNA = 1;
  p.Dicer = 1;
  auto prog = build_recursive_rnai(p);
  auto rs = enumerate_reactions(prog.init, prog.env);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_TRUE(apply_reaction(prog.init, rs[0]).empty());

  p.Dicer = 0;
  p.RISC = 1;
  prog = build_recursive_rnai(p);
  auto t = simulate(prog, StopCondition::terminal(), 1);
  EXPECT_EQ(t.steps.size(), 1u);
  EXPECT_TRUE(t.final_solution().empty());
}
