#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "polybarrier/ellipse.hpp"
#include "polybarrier/fit.hpp"
#include "polybarrier/minimax.hpp"
#include "polybarrier/projection.hpp"
#include "polybarrier/remez.hpp"

using namespace polybarrier;

static void BM_RemezAbs(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(remez_best_approx([](double x) { return std::abs(x); }, m).error);
}
BENCHMARK(BM_RemezAbs)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_RemezRunge(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(remez_best_approx([](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, m).error);
}
BENCHMARK(BM_RemezRunge)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_DiscreteMinimax(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) grid[static_cast<std::size_t>(j)] = -1.0 + 2.0 * j / (n - 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(discrete_minimax([](double x) { return std::abs(x); }, 8, grid).second);
}
BENCHMARK(BM_DiscreteMinimax)->Arg(501)->Arg(5001)->Unit(benchmark::kMillisecond);

static void BM_EllipseNorm(benchmark::State& state) {
  const BernsteinEllipse e(2.0, 1.0);
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(ellipse_norm([](Complex z) { return std::tanh(z); }, e, samples));
}
BENCHMARK(BM_EllipseNorm)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

static void BM_L1Projection(benchmark::State& state) {
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(1.7 * static_cast<double>(i)) * 3.0;
  for (auto _ : state) benchmark::DoNotOptimize(l1_ball_projection(v, 1.0));
}
BENCHMARK(BM_L1Projection)->Arg(16)->Arg(256);

static void BM_FitAbs(benchmark::State& state) {
  FitConfig fc;
  fc.n_restarts = 4;
  fc.max_iters = 500;
  fc.grid_size = 129;
  fc.report_grid_size = 517;
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        fit_l1_constrained([](double x) { return std::abs(x); }, m, ConstraintSet{1.0, 1.0}, fc, activation("tanh"))
            .l_inf_error);
}
BENCHMARK(BM_FitAbs)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
