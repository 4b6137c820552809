#pragma once

// The portfolio bandit backtest loop and the c-parameter sweep.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pbts/bandit.hpp"
#include "pbts/market_data.hpp"
#include "pbts/metrics.hpp"
#include "pbts/strategy_arms.hpp"

namespace pbts {

struct BacktestConfig {
  std::size_t tau = 120;  ///< sliding window; trading starts at period tau + 1
  int c = 3;              ///< success threshold of the top-c reward
  std::size_t sr_lookback = kDefaultSrLookback;
  std::uint64_t seed = 0;
  double ridge_scale = kDefaultRidgeScale;
  std::vector<ArmId> arms{kAllArms.begin(), kAllArms.end()};

  /// Throws ConfigError (or InsufficientDataError when the panel is too
  /// short for tau).
  void validate(std::size_t periods) const;

  friend bool operator==(const BacktestConfig&, const BacktestConfig&) = default;
};

struct BacktestResult {
  BacktestConfig config;
  Periodicity periodicity = Periodicity::Monthly;
  std::vector<std::string> asset_ids;
  /// One record per period k = 1..m, warm-up included.
  std::vector<SelectionRecord> selections;
  /// Date labels of the traded periods k = tau+1..m.
  std::vector<std::string> traded_dates;
  std::vector<double> realized_net_returns;
  std::vector<WeightVector> weight_trajectory;
  std::vector<double> cw_curve;
  PerformanceReport report;
  ArmReturnHistory per_arm_counterfactual{1};
  BetaState final_posterior{1};

  friend bool operator==(const BacktestResult&, const BacktestResult&) = default;
};

/// Runs the bandit over every period of `panel`. Each period computes all
/// roster arms from data strictly before it, samples and selects an arm,
/// trades it once past the warm-up, appends every arm's counterfactual
/// return and, from the second period on, scores the selection and updates
/// the posterior.
BacktestResult run_backtest(const ReturnPanel& panel, const BacktestConfig& config);

/// Net return of each arm's weights over period row `row` (0-based).
std::vector<double> counterfactual_arm_returns(const ReturnPanel& panel, std::size_t row,
                                               std::span<const WeightVector> arm_weights);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  ///< sample standard deviation; 0 for a single value
};

MeanStd mean_std(std::span<const double> values);

struct SweepRow {
  int c = 0;
  std::uint64_t seed = 0;
  PerformanceReport report;
};

struct SweepSummary {
  int c = 0;
  std::size_t runs = 0;
  MeanStd sharpe;
  MeanStd wealth;
  MeanStd mdd_rel;
  MeanStd volatility;
};

struct SweepTable {
  std::vector<SweepRow> rows;  ///< ordered by c, then seed, as requested
  std::vector<SweepSummary> summary;
};

/// One backtest per (c, seed) pair. Runs are independent and execute on up
/// to `threads` workers (0 = hardware concurrency); output order is fixed.
SweepTable run_c_sweep(const ReturnPanel& panel, const BacktestConfig& base,
                       std::span<const int> c_values, std::span<const std::uint64_t> seeds,
                       unsigned threads = 0);

}  // namespace pbts
