#include <benchmark/benchmark.h>

#include <random>

#include "lexfield/fields.hpp"

namespace {

using namespace lexfield;

Phrase make_phrase(std::size_t m, std::size_t dim) {
  std::mt19937 gen(1234);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> width(0.5, 2.0);
  Phrase p;
  for (std::size_t i = 0; i < m; ++i) {
    Vec pos(dim);
    for (auto& x : pos) x = coord(gen);
    Word w;
    w.id = "w" + std::to_string(i);
    w.position = std::move(pos);
    w.width = width(gen);
    p.words.push_back(std::move(w));
  }
  return p;
}

void BM_LinguisticField(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Phrase p = make_phrase(m, 4);
  const FieldConfig cfg;
  const Vec q(4, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(linguistic_field(p, q, cfg));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LinguisticField)->RangeMultiplier(2)->Range(2, 64)->Complexity();

void BM_GradientAnalytic(benchmark::State& state) {
  const Phrase p = make_phrase(static_cast<std::size_t>(state.range(0)), 4);
  const FieldConfig cfg;
  const Vec q(4, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(field_gradient(p, q, cfg, GradientMode::analytic));
  }
}
BENCHMARK(BM_GradientAnalytic)->RangeMultiplier(2)->Range(2, 32);

void BM_GradientFiniteDifference(benchmark::State& state) {
  const Phrase p = make_phrase(static_cast<std::size_t>(state.range(0)), 4);
  const FieldConfig cfg;
  const Vec q(4, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(field_gradient(p, q, cfg, GradientMode::finite_difference));
  }
}
BENCHMARK(BM_GradientFiniteDifference)->RangeMultiplier(2)->Range(2, 32);

void BM_SampleGrid(benchmark::State& state) {
  const Phrase p = make_phrase(4, 2);
  const FieldConfig cfg;
  const Region r = Region::grid({-3.0, -3.0}, {3.0, 3.0},
                                static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_grid(p, r, cfg));
  }
}
BENCHMARK(BM_SampleGrid)->Arg(16)->Arg(64)->Arg(128);

}  // namespace
