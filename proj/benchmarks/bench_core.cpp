#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "pbts/bandit.hpp"
#include "pbts/engine.hpp"
#include "pbts/strategy_arms.hpp"

namespace {

using namespace pbts;

ReturnPanel random_panel(std::size_t m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.008, 0.05);
  Eigen::MatrixXd g(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < g.rows(); ++k)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(k, j) = std::max(0.5, 1.0 + z(rng));
  std::vector<std::string> dates, ids;
  for (std::size_t k = 0; k < m; ++k) dates.push_back("p" + std::to_string(k));
  for (std::size_t j = 0; j < n; ++j) ids.push_back("a" + std::to_string(j));
  return ReturnPanel(std::move(dates), std::move(ids), std::move(g), Periodicity::Monthly);
}

void BM_EstimateAndSolveMv(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto window = random_panel(120, n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_mv(estimate_moments(window, kDefaultRidgeScale)));
  }
}
BENCHMARK(BM_EstimateAndSolveMv)->Arg(5)->Arg(25)->Arg(100);

void BM_SampleThetas(benchmark::State& state) {
  BetaState post(5);
  Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(sample_thetas(post, rng));
}
BENCHMARK(BM_SampleThetas);

void BM_RunBacktest(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto panel = random_panel(600, n, 3);
  BacktestConfig cfg;
  cfg.tau = 120;
  for (auto _ : state) benchmark::DoNotOptimize(run_backtest(panel, cfg));
}
BENCHMARK(BM_RunBacktest)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
