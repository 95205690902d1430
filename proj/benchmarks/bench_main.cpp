#include <benchmark/benchmark.h>

#include "kljn/analytic.hpp"
#include "kljn/eve.hpp"
#include "kljn/exchange.hpp"
#include "kljn/experiment.hpp"

namespace {

kljn::SystemParams leaking() {
  kljn::SystemParams p;
  p.u_dca = 0.1;
  return p;
}

void BM_SimulateBep(benchmark::State& state) {
  auto p = leaking();
  p.samples_per_bit = static_cast<std::uint32_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(kljn::simulate_bep(kljn::BitState::LH, p, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateBep)->Arg(500)->Arg(10'000);

void BM_KeyExchange(benchmark::State& state) {
  auto p = leaking();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kljn::run_key_exchange(p));
    ++p.master_seed;
  }
}
BENCHMARK(BM_KeyExchange)->Unit(benchmark::kMillisecond);

void BM_Attack(benchmark::State& state) {
  const auto run = kljn::run_key_exchange(leaking());
  for (auto _ : state) benchmark::DoNotOptimize(kljn::run_attack(run));
}
BENCHMARK(BM_Attack)->Unit(benchmark::kMicrosecond);

void BM_PredictBitSuccess(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kljn::predict_bit_success(0.5724, n));
}
BENCHMARK(BM_PredictBitSuccess)->Arg(500)->Arg(10'000);

void BM_DefaultSweep(benchmark::State& state) {
  const auto cfg = kljn::parse_config("{}");
  for (auto _ : state) benchmark::DoNotOptimize(kljn::run_experiment(cfg));
}
BENCHMARK(BM_DefaultSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
