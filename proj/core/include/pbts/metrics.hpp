#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pbts/strategy_arms.hpp"

namespace pbts {

/// Added to the standard deviation before dividing, so a zero-variance
/// series (the cash arm) still has a finite Sharpe ratio.
inline constexpr double kSharpeEpsilon = 1e-12;

/// Net return R'w - 1 of holding `weights` over a period with gross returns
/// `gross`. A cash vector earns exactly 0.
double per_period_return(const WeightVector& weights, const Eigen::VectorXd& gross);

struct ReturnMoments {
  double mean = 0.0;
  double stddev = 0.0;  ///< population (divide by count)
};

/// Mean and population standard deviation of a nonempty series.
ReturnMoments return_moments(std::span<const double> net_returns);

struct SharpeStats {
  double mean = 0.0;
  double stddev = 0.0;
  double sharpe = 0.0;
  bool zero_variance = false;  ///< stddev below kSharpeEpsilon
};

/// mean / (stddev + eps) over a series of at least two net returns.
SharpeStats sharpe_ratio(std::span<const double> net_returns);

/// Running product of (1 + r). Throws BankruptcyError if some r <= -1.
std::vector<double> cumulative_wealth(std::span<const double> net_returns);

struct Drawdown {
  double absolute = 0.0;  ///< max over t of (running peak - CW_t)
  double relative = 0.0;  ///< same gap as a fraction of the running peak
};

Drawdown max_drawdown(std::span<const double> cw);

/// sqrt(periods_per_year) * sigma.
double annualized_volatility(double sigma, int periods_per_year);

struct PerformanceReport {
  double sharpe = 0.0;
  double sharpe_x100 = 0.0;
  double cumulative_wealth = 1.0;
  double max_drawdown_abs = 0.0;
  double max_drawdown_rel = 0.0;
  double volatility = 0.0;
  double mean_return = 0.0;
  double std_return = 0.0;
  bool zero_variance = false;

  friend bool operator==(const PerformanceReport&, const PerformanceReport&) = default;
};

/// All four criteria over a realized series (length >= 1).
PerformanceReport evaluate_performance(std::span<const double> net_returns,
                                       int periods_per_year);

}  // namespace pbts
