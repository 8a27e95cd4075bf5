#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "layered_advect/acceptance.hpp"
#include "layered_advect/composite.hpp"
#include "layered_advect/reference_solver.hpp"
#include "layered_advect/special_functions.hpp"

namespace {

void BM_Erfcx(benchmark::State& state) {
  std::vector<double> ys(1024);
  for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = -4.0 + 40.0 * static_cast<double>(i) / ys.size();
  for (auto _ : state) {
    double acc = 0.0;
    for (double y : ys) acc += lad::erfcx(y);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ys.size()));
}
BENCHMARK(BM_Erfcx);

// Crank–Nicolson march on a layer-resolving grid; items are grid cells × steps.
void BM_March(benchmark::State& state) {
  const auto p = lad::shipped_scenario("shock");
  const double eps = 1.0 / static_cast<double>(state.range(0));
  const auto grid = lad::layer_grid(eps, p.M, 0.1, 8);
  for (auto _ : state) {
    double last = 0.0;
    (void)lad::march(p, eps, grid, [&](std::size_t, double, std::span<const double> row) { last = row[1]; });
    benchmark::DoNotOptimize(last);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.nx * grid.nt));
}
BENCHMARK(BM_March)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SliceValues(benchmark::State& state) {
  const auto p = lad::shipped_scenario("angular");
  const lad::CompositeApprox a(p, 1e-3, lad::Variant::corrected);
  const std::size_t n = 4096;
  for (auto _ : state) {
    const auto s = a.slice(0.7);
    double acc = 0.0;
    for (std::size_t i = 0; i <= n; ++i) acc += s.value(static_cast<double>(i) / n);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n + 1));
}
BENCHMARK(BM_SliceValues);

void BM_Residual(benchmark::State& state) {
  const auto p = lad::shipped_scenario("angular");
  const lad::CompositeApprox a(p, 1e-3, lad::Variant::corrected);
  const std::size_t n = 1024;
  for (auto _ : state) {
    const auto s = a.slice(0.7);
    double acc = 0.0;
    for (std::size_t i = 1; i < n; ++i) acc += s.residual(static_cast<double>(i) / n);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n - 1));
}
BENCHMARK(BM_Residual);

}  // namespace

BENCHMARK_MAIN();
