#include <benchmark/benchmark.h>

#include "fairdiv/bobw2.hpp"
#include "fairdiv/bobw3.hpp"
#include "fairdiv/harness.hpp"
#include "fairdiv/mms_solvers.hpp"
#include "fairdiv/oracles.hpp"
#include "fairdiv/verify.hpp"

namespace {

using namespace fairdiv;

std::vector<Instance> instances(std::size_t agents, std::size_t m, std::int64_t max_value, std::size_t count = 16) {
  harness::GeneratorConfig cfg;
  cfg.seed = 1000 + m;
  cfg.agents = agents;
  cfg.min_items = m;
  cfg.max_items = m;
  cfg.max_value = max_value;
  return harness::generate(cfg, count);
}

void BM_MmsExact(benchmark::State& state) {
  const auto insts = instances(1, static_cast<std::size_t>(state.range(0)), state.range(1));
  const auto k = static_cast<std::size_t>(state.range(2));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& inst = insts[i++ % insts.size()];
    benchmark::DoNotOptimize(mms::mms_partition(inst.valuations[0], inst.ground(), k));
  }
}
BENCHMARK(BM_MmsExact)->Args({9, 20, 3})->Args({20, 1000, 2})->Args({12, 100, 3})->Args({20, 50, 3});

void BM_MmsFptas(benchmark::State& state) {
  const auto insts = instances(1, static_cast<std::size_t>(state.range(0)), 1'000'000);
  const mms::MmsSolverConfig cfg{mms::SolverMode::fptas, Value(1, state.range(1))};
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& inst = insts[i++ % insts.size()];
    benchmark::DoNotOptimize(mms::mms_partition(inst.valuations[0], inst.ground(), 3, cfg));
  }
}
BENCHMARK(BM_MmsFptas)->Args({20, 4})->Args({20, 10})->Args({40, 10})->Args({20, 20});

void BM_PtasFamily(benchmark::State& state) {
  const auto insts = instances(1, static_cast<std::size_t>(state.range(0)), 1000);
  const Value eps(1, state.range(1));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& inst = insts[i++ % insts.size()];
    benchmark::DoNotOptimize(mms::ptas_f_m2(inst.valuations[0], inst.ground(), eps));
  }
}
BENCHMARK(BM_PtasFamily)->Args({40, 2})->Args({40, 4})->Args({60, 6});

void BM_OracleMms(benchmark::State& state) {
  const auto insts = instances(1, static_cast<std::size_t>(state.range(0)), 20);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& inst = insts[i++ % insts.size()];
    benchmark::DoNotOptimize(oracles::exact_mms(inst.valuations[0], inst.ground(), 3));
  }
}
BENCHMARK(BM_OracleMms)->Arg(6)->Arg(9)->Arg(12);

void BM_OracleRmms(benchmark::State& state) {
  const auto insts = instances(1, static_cast<std::size_t>(state.range(0)), 20);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& inst = insts[i++ % insts.size()];
    benchmark::DoNotOptimize(oracles::rmms(inst.valuations[0], inst.ground(), 3));
  }
}
BENCHMARK(BM_OracleRmms)->Arg(6)->Arg(9);

void BM_OracleEefx(benchmark::State& state) {
  const auto insts = instances(1, static_cast<std::size_t>(state.range(0)), 20);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& inst = insts[i++ % insts.size()];
    const Bundle m = inst.ground();
    const Bundle x = Bundle::range(m.size() / 3);
    benchmark::DoNotOptimize(oracles::is_eefx_satisfied(inst.valuations[0], x, m, 3));
  }
}
BENCHMARK(BM_OracleEefx)->Arg(6)->Arg(9);

void BM_Bobw2Fptas(benchmark::State& state) {
  const auto insts = instances(2, static_cast<std::size_t>(state.range(0)), 1000);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& inst = insts[i++ % insts.size()];
    benchmark::DoNotOptimize(bobw2::bobw_two_agents_fptas(inst.valuations[0], inst.valuations[1], Value(1, 10)));
  }
}
BENCHMARK(BM_Bobw2Fptas)->Arg(12)->Arg(30);

void BM_Bobw3Exact(benchmark::State& state) {
  const auto insts = instances(3, static_cast<std::size_t>(state.range(0)), 20);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(bobw3::bobw3_exact(insts[i++ % insts.size()]));
}
BENCHMARK(BM_Bobw3Exact)->Arg(9)->Arg(20);

void BM_Bobw3Poly(benchmark::State& state) {
  const auto insts = instances(3, static_cast<std::size_t>(state.range(0)), 1000);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(bobw3::bobw3_poly(insts[i++ % insts.size()], Value(1, 10)));
}
BENCHMARK(BM_Bobw3Poly)->Arg(9)->Arg(20)->Arg(40);

void BM_VerifyReport(benchmark::State& state) {
  const auto insts = instances(3, static_cast<std::size_t>(state.range(0)), 1000, 4);
  std::vector<bobw3::ThreeAgentResult> runs;
  for (const auto& inst : insts) runs.push_back(bobw3::bobw3_poly(inst, Value(1, 10)));
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t k = i++ % insts.size();
    benchmark::DoNotOptimize(
        verify::verify_lottery_report(runs[k].lottery, insts[k], runs[k].certificates(), Value(1, 10)));
  }
}
BENCHMARK(BM_VerifyReport)->Arg(9)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
