// Serial reference vs OpenMP kernels. With one core expect parity.
#include <benchmark/benchmark.h>

#include "fracdiff/laws.hpp"
#include "fracdiff/montecarlo.hpp"

using namespace fracdiff;

namespace {

const mc::Sampler stable = [](mc::Rng& r) { return mc::sample_subordinator(1.0 / 3.0, 1.0, r); };
const mc::Sampler chain = [](mc::Rng& r) {
  static const mc::CompositionChain c{mc::ChainKind::subordinator, laws::MuVector::parse("1/3,2/3"), 1.0};
  return mc::sample_chain(c, r);
};

void BM_draw_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(mc::draw_serial(st.range(1) ? chain : stable, st.range(0), {0, 1}));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_draw_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(mc::draw_parallel(st.range(1) ? chain : stable, st.range(0), {0, 1}));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

std::vector<std::pair<double, double>> grid() {
  std::vector<std::pair<double, double>> g;
  for (double x : {0.5, 1.0, 2.0})
    for (double t : {0.5, 1.0, 2.0}) g.emplace_back(x, t);
  return g;
}

void BM_compose_gap_serial(benchmark::State& st) {
  auto a = laws::MuVector::parse("1/3,2/3"), b = laws::MuVector::parse("2/3,1/3");
  auto g = grid();
  for (auto _ : st) benchmark::DoNotOptimize(laws::permutation_invariance_gap_serial(1.0, a, b, g));
}

void BM_compose_gap_parallel(benchmark::State& st) {
  auto a = laws::MuVector::parse("1/3,2/3"), b = laws::MuVector::parse("2/3,1/3");
  auto g = grid();
  for (auto _ : st) benchmark::DoNotOptimize(laws::permutation_invariance_gap(1.0, a, b, g));
}

}  // namespace

BENCHMARK(BM_draw_serial)->Args({1 << 16, 0})->Args({1 << 16, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_draw_parallel)->Args({1 << 16, 0})->Args({1 << 16, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compose_gap_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compose_gap_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
