#include <benchmark/benchmark.h>

#include <random>

#include "seccell/channel.hpp"
#include "seccell/pso.hpp"
#include "seccell/random.hpp"
#include "seccell/scheduler.hpp"
#include "seccell/sim_engine.hpp"

namespace {

using namespace seccell;

const PreparedScenario& reference() {
  static const PreparedScenario p = prepare(reference_scenario(1), SimConfig{});
  return p;
}

ChannelState slot_channel(std::size_t t) {
  const auto& p = reference();
  Rng rng(derive_seed(1, {kStreamChannel, t}));
  return sample_slot_channel(p.gains, p.capable, p.scenario.unblocked_probability, t, rng);
}

void BM_SolveIntraCell(benchmark::State& state) {
  const auto& p = reference();
  const ChannelState ch = slot_channel(0);
  std::size_t user = 0;
  for (std::size_t j = 0; j < ch.h.size(); ++j)
    if (ch.h[j].size() > ch.h[user].size()) user = j;
  PsoConfig cfg;
  for (auto _ : state) {
    auto sol = solve_intra_cell(user, ch, 1.0, p.scenario.qos[user], p.scenario.phys.peak_amplitude(),
                                p.scenario.phys.noise_variance(), cfg);
    benchmark::DoNotOptimize(sol.dpp_value);
  }
  state.SetLabel("|Omega| = " + std::to_string(ch.h[user].size()));
}
BENCHMARK(BM_SolveIntraCell)->Unit(benchmark::kMillisecond);

void BM_ReflectionFieldTotal(benchmark::State& state) {
  const Scenario& sc = reference().scenario;
  const ReflectionField field(sc.room, sc.wall_grid, sc.ap_positions, sc.phys);
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(field.total_to({x, 7.7, 0.5}));
    x = x > 15.0 ? 0.3 : x + 0.37;
  }
}
BENCHMARK(BM_ReflectionFieldTotal)->Unit(benchmark::kMicrosecond);

void BM_EpsilonThreshold(benchmark::State& state) {
  const Scenario& sc = reference().scenario;
  for (auto _ : state) benchmark::DoNotOptimize(epsilon_threshold(sc));
}
BENCHMARK(BM_EpsilonThreshold)->Unit(benchmark::kMillisecond);

void BM_GreedyMinWeight(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(5);
  std::vector<ApSet> cap(n);
  for (auto& omega : cap) {
    for (std::size_t k = 0; k < 4; ++k) omega.push_back(rng() % (2 * n));
    std::sort(omega.begin(), omega.end());
    omega.erase(std::unique(omega.begin(), omega.end()), omega.end());
  }
  const auto g = build_ig(cap);
  std::vector<double> w(n);
  std::normal_distribution<double> nd;
  for (auto& x : w) x = nd(rng);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_min_weight_is(g, w, cap, 2 * n));
}
BENCHMARK(BM_GreedyMinWeight)->Arg(10)->Arg(50)->Arg(200);

void BM_DppSlots(benchmark::State& state) {
  SimConfig cfg;
  cfg.record_slots = false;
  const auto slots = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run(reference(), Algorithm::Dpp, slots, 1, cfg).summary);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_DppSlots)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BaselineSlots(benchmark::State& state) {
  SimConfig cfg;
  cfg.record_slots = false;
  for (auto _ : state) benchmark::DoNotOptimize(run(reference(), Algorithm::ProportionalFairAn, 100, 1, cfg).summary);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 100);
}
BENCHMARK(BM_BaselineSlots)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
