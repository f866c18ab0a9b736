#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tetot/fixture.hpp"
#include "tetot/gaussian_approx.hpp"
#include "tetot/ot_solver.hpp"
#include "tetot/tetot_metric.hpp"

using namespace tetot;

namespace {

CostMatrix uniform_costs(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix c(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c(i, j) = u(rng);
  return CostMatrix(std::move(c));
}

void BM_ExactOt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CostMatrix cost = uniform_costs(state.range(0), 1);
  const auto w = Weights::uniform(n);
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact(cost, w, w).cost);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactOt)->RangeMultiplier(2)->Range(125, 2000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_Sinkhorn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CostMatrix cost = uniform_costs(state.range(0), 2);
  const auto w = Weights::uniform(n);
  SinkhornOptions opt;
  opt.epsilon = 0.05;
  opt.tol = 1e-6;
  for (auto _ : state) benchmark::DoNotOptimize(solve_sinkhorn(cost, w, w, opt).cost);
}
BENCHMARK(BM_Sinkhorn)->RangeMultiplier(2)->Range(125, 1000)->Unit(benchmark::kMillisecond);

void BM_ComputeTetot(benchmark::State& state) {
  const std::vector<double> shift{2.0};
  const auto fx = generate_synthetic_fixture(128, 10, shift, static_cast<std::size_t>(state.range(0)), 3);
  const TetotConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(compute_tetot(fx.source, fx.targets[0], fx.head, config).value);
}
BENCHMARK(BM_ComputeTetot)->RangeMultiplier(2)->Range(250, 2000)->Unit(benchmark::kMillisecond);

void BM_FeatureCost(benchmark::State& state) {
  const std::vector<double> shift{1.0};
  const auto fx = generate_synthetic_fixture(128, 10, shift, static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(feature_cost_matrix(fx.source, fx.targets[0]).entries().data());
}
BENCHMARK(BM_FeatureCost)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_W2Squared(benchmark::State& state) {
  const std::vector<double> shift{1.0};
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto fx = generate_synthetic_fixture(d, 5, shift, 4 * d + 50, 5);
  const auto s = gaussian_stats(fx.source);
  const auto t = gaussian_stats(fx.targets[0]);
  for (auto _ : state) benchmark::DoNotOptimize(w2_squared(s, t));
}
BENCHMARK(BM_W2Squared)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
