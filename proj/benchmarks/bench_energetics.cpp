#include <benchmark/benchmark.h>

#include "lexfield/energetics.hpp"

namespace {

using namespace lexfield;

Phrase two_words() {
  Word a;
  a.id = "a";
  a.position = {0.0, 0.0};
  Word b;
  b.id = "b";
  b.position = {1.0, 0.5};
  return Phrase{{a, b}};
}

void BM_GridHamiltonian(benchmark::State& state) {
  const Phrase p = two_words();
  const FieldConfig cfg;
  const Region r = Region::grid({-5.0, -5.0}, {5.0, 5.0},
                                static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hamiltonian(p, r, cfg, 1.0).value);
  }
}
BENCHMARK(BM_GridHamiltonian)->Arg(32)->Arg(64)->Arg(128);

void BM_MonteCarloBinding(benchmark::State& state) {
  const Phrase p = two_words();
  const FieldConfig cfg;
  const Region r = Region::monte_carlo({-5.0, -5.0}, {5.0, 5.0}, state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(binding_energy(p, r, cfg, 1.0, seed++).value);
  }
}
BENCHMARK(BM_MonteCarloBinding)->Arg(1000)->Arg(10000);

void BM_PairwiseSum(benchmark::State& state) {
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)), 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pairwise_sum(xs));
  }
}
BENCHMARK(BM_PairwiseSum)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
