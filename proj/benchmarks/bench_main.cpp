#include <benchmark/benchmark.h>

#include "thasym/interval.hpp"
#include "thasym/model.hpp"

using namespace thasym;

namespace {

const SymbolPair& pset() {
  static const SymbolPair pair = example_pair(ExampleParams{});
  return pair;
}

void BM_FourierCoeffs(benchmark::State& state) {
  const auto nodes = static_cast<std::size_t>(state.range(0));
  const auto grid = CircleGrid::make(1.0, nodes);
  for (auto _ : state) benchmark::DoNotOptimize(fourier_coeffs(pset().phi, -64, 64, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FourierCoeffs)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_CircleMoments(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(circle_moments(pset(), n, 1, 1));
}
BENCHMARK(BM_CircleMoments)->Arg(16)->Arg(64)->Arg(128);

void BM_ThDet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto prec = state.range(1) ? Precision::extended : Precision::binary64;
  const auto mt = circle_moments(pset(), n, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(th_det(mt, n, prec));
  state.SetComplexityN(n);
}
BENCHMARK(BM_ThDet)->ArgsProduct({{8, 32, 128}, {0, 1}});

void BM_OrthoPoly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto mt = circle_moments(pset(), n, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ortho_poly(mt, n));
}
BENCHMARK(BM_OrthoPoly)->Arg(8)->Arg(32)->Arg(64);

void BM_REntries(benchmark::State& state) {
  const auto mf = model_field(pset());
  const auto nodes = static_cast<std::size_t>(state.range(0));
  const std::vector<int> ns{8, 16, 24, 32};
  for (auto _ : state) benchmark::DoNotOptimize(R_entries(mf, ns, default_contours(mf, nodes)));
}
BENCHMARK(BM_REntries)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_IntervalMoments(benchmark::State& state) {
  IntervalWeight iw;
  iw.w = [](double x) { return cplx(1.0 + x * x); };
  iw.a = 0.5;
  iw.b = 0.7;
  for (auto _ : state) benchmark::DoNotOptimize(interval_moments(iw, 0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_IntervalMoments)->Arg(32)->Arg(128);

}  // namespace
BENCHMARK_MAIN();
