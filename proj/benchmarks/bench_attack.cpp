#include <benchmark/benchmark.h>

#include "ptts/attack.hpp"
#include "ptts/scenario.hpp"

namespace {

struct Fixture {
  ptts::Scenario scenario;
  ptts::AttackerView view;
  ptts::Address target;
};

Fixture make(std::size_t n, std::size_t m, double ratio) {
  Fixture f;
  f.scenario = ptts::generate_scenario(n, m, 1'000'000, 42);
  f.view = ptts::make_attacker_view(f.scenario, ptts::select_leaked(f.scenario, ratio, 43));
  f.target = f.scenario.transfers.empty() ? 0 : f.scenario.transfers[m / 2].to;
  return f;
}

}  // namespace

// Args: addresses, transactions, leakage in percent.
static void BM_EstimateRange(benchmark::State& state) {
  const Fixture f = make(state.range(0), state.range(1), state.range(2) / 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(ptts::estimate_balance_range(f.view, f.target));
  state.SetLabel(std::to_string(f.view.topology.size()) + " arcs");
}
BENCHMARK(BM_EstimateRange)
    ->Args({100, 100, 50})
    ->Args({1000, 1000, 50})
    ->Args({100, 10000, 50})
    ->Args({10000, 10000, 50})
    ->Args({10000, 10000, 0})
    ->Unit(benchmark::kMillisecond);

static void BM_SolveMaxOnly(benchmark::State& state) {
  const Fixture f = make(state.range(0), state.range(1), 0.5);
  const ptts::AttackNetwork net = ptts::build_attack_network(f.view, f.target, -1);
  for (auto _ : state) benchmark::DoNotOptimize(ptts::solve_min_cost_flow(net.network));
}
BENCHMARK(BM_SolveMaxOnly)->Args({1000, 1000})->Args({10000, 10000})->Unit(benchmark::kMillisecond);

static void BM_Contiguity(benchmark::State& state) {
  const Fixture f = make(1000, 1000, 0.5);
  const ptts::BalanceRange r = ptts::estimate_balance_range(f.view, f.target);
  for (auto _ : state) benchmark::DoNotOptimize(ptts::verify_contiguity(f.view, f.target, r));
}
BENCHMARK(BM_Contiguity)->Unit(benchmark::kMillisecond);
