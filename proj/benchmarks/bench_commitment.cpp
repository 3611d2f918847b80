#include <benchmark/benchmark.h>

#include "ptts/commitment.hpp"
#include "ptts/rng.hpp"

static void BM_Commit(benchmark::State& state) {
  ptts::Rng rng(1);
  const ptts::BlindFactor b = ptts::generate_blind(rng);
  ptts::TokenAmount v = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ptts::commit(v++, b));
}
BENCHMARK(BM_Commit);

static void BM_VerifyOpen(benchmark::State& state) {
  ptts::Rng rng(2);
  const ptts::BlindFactor b = ptts::generate_blind(rng);
  const ptts::Commitment c = ptts::commit(42, b);
  for (auto _ : state) benchmark::DoNotOptimize(ptts::verify_open(c, 42, b));
}
BENCHMARK(BM_VerifyOpen);
