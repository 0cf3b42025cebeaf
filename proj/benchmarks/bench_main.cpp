#include "orbitshare/bundles.hpp"
#include "orbitshare/deanalysis.hpp"
#include "orbitshare/macsim.hpp"

#include <benchmark/benchmark.h>

using namespace orbitshare;

namespace {

void BM_SegregatedFrameDecode(benchmark::State& state) {
  const auto u = static_cast<std::uint32_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    Rng rng = make_rng(1, i++);
    const auto frame = generate_frame({400, 1}, u, 0, rng);
    benchmark::DoNotOptimize(sic_decode_scenario_a(frame, 1, 400));
  }
  state.SetItemsProcessed(state.iterations() * u);
}
BENCHMARK(BM_SegregatedFrameDecode)->Arg(100)->Arg(400)->Arg(800);

void BM_SharedFrameDecode(benchmark::State& state) {
  const auto models = bundles::receiver_models();
  const ScenarioBRates rates{{0.8, ServiceTag::Leo}, {0.1, ServiceTag::Geo}};
  const auto u = static_cast<std::uint32_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    Rng rng = make_rng(2, i++);
    const auto frame = generate_frame({400, 8}, u, u, rng);
    benchmark::DoNotOptimize(sic_decode_scenario_b(frame, rates, models));
  }
  state.SetItemsProcessed(state.iterations() * 2 * u);
}
BENCHMARK(BM_SharedFrameDecode)->Arg(22)->Arg(44)->Arg(88);

void BM_DecodingThreshold(benchmark::State& state) {
  const auto tau = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(threshold(tau));
}
BENCHMARK(BM_DecodingThreshold)->Arg(0)->Arg(3)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
