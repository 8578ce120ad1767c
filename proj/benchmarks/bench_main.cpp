#include <benchmark/benchmark.h>

#include <random>

#include "comatroid/canonical.hpp"
#include "comatroid/census.hpp"
#include "comatroid/constructions.hpp"
#include "comatroid/decide.hpp"

using namespace comatroid;

namespace {

std::vector<EmbeddedMatroid> corpus(Field q, int r, std::size_t count) {
  const SpacePtr space = PointSpace::get(q, r);
  std::mt19937 rng(1);
  std::vector<EmbeddedMatroid> out;
  for (std::size_t i = 0; i < count; ++i) {
    PointSet s(space->size());
    for (std::size_t p = 0; p < space->size(); ++p) s[p] = rng() % 2 == 0;
    out.push_back(EmbeddedMatroid{space, s});
  }
  return out;
}

void BM_CanonicalForm(benchmark::State& state) {
  const auto ms = corpus(state.range(0) == 2 ? Field::GF2 : Field::GF3, static_cast<int>(state.range(1)), 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(ms[i++ % ms.size()]));
}
BENCHMARK(BM_CanonicalForm)->Args({2, 4})->Args({2, 5})->Args({3, 3})->Args({3, 4});

void BM_Decide(benchmark::State& state) {
  const auto ms = corpus(Field::GF2, 4, 256);
  const auto method = static_cast<Method>(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decide(ms[i++ % ms.size()], method).is_comatroid);
  state.SetLabel(std::string(method_name(method)));
}
BENCHMARK(BM_Decide)->DenseRange(0, 2);

void BM_Rank5Kernel(benchmark::State& state) {
  std::mt19937 rng(2);
  std::vector<std::uint32_t> masks(256);
  for (auto& m : masks) m = static_cast<std::uint32_t>(rng()) & ((1U << 31) - 1);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(binary_rank5_connected_hyperplanes(masks[i++ % masks.size()]));
}
BENCHMARK(BM_Rank5Kernel);

void BM_GenericConnectedHyperplanes(benchmark::State& state) {
  const auto ms = corpus(Field::GF2, 5, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(count_connected_hyperplanes(ms[i++ % ms.size()]));
}
BENCHMARK(BM_GenericConnectedHyperplanes);

void BM_HyperplaneScan(benchmark::State& state) {
  const EmbeddedMatroid seed = embed(named("m2-first"));
  for (auto _ : state) benchmark::DoNotOptimize(hyperplane_scan(seed, static_cast<int>(state.range(0)), 1).scanned);
}
BENCHMARK(BM_HyperplaneScan)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
