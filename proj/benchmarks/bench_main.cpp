#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "rnaicgf/analysis.hpp"
#include "rnaicgf/compiler.hpp"
#include "rnaicgf/rnai_model.hpp"
#include "rnaicgf/ssa.hpp"

using namespace rnaicgf;

namespace {

RmProgram transfer() {
  std::ifstream in(RNAICGF_FIXTURE_DIR "/transfer.rm");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_rm(ss.str());
}

void BM_EnumerateRnai(benchmark::State& state) {
  RnaiParams p;
  p.dsRNA = p.mRNA = p.mRNAab = p.siRNA = p.Dicer = p.RISC = p.RdRp = p.Gene = 50;
  const CgfProgram prog = build_recursive_rnai(p);
  const ReactionTable table(prog.env);
  for (auto _ : state) benchmark::DoNotOptimize(table.enumerate(prog.init));
}
BENCHMARK(BM_EnumerateRnai);

void BM_SimulateTransfer(benchmark::State& state) {
  const auto m = compile_recursive(transfer(), EncodingConfig::recursive(static_cast<Count>(state.range(0))));
  const Simulator sim(with_initial(m, {0, 2, 3, false}));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sim.simulate(StopCondition::terminal(), seed++));
}
BENCHMARK(BM_SimulateTransfer)->Arg(10)->Arg(100);

void BM_StepPath(benchmark::State& state) {
  const auto m = compile_recursive(transfer(), EncodingConfig::recursive(10));
  const CgfProgram prog = with_initial(m, {0, 2, 3, false});
  for (auto _ : state) {
    SimState s{prog.init, 0.0, 0, Rng(1)};
    while (auto next = step(s, prog.env)) s = std::move(next->second);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_StepPath);

void BM_GadgetSolve(benchmark::State& state) {
  const auto m = default_gadget_compiler(decrement_gadget(), static_cast<Count>(state.range(0)));
  const CgfProgram prog = with_initial(m, {0, 3, 0, false});
  for (auto _ : state) {
    auto space = enumerate_state_space(prog, 100000);
    benchmark::DoNotOptimize(
        absorption_probabilities(space, [](const Solution& s) { return s.count("I1") == 1; }));
  }
}
BENCHMARK(BM_GadgetSolve)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
