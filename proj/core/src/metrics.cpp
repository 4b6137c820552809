#include "pbts/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pbts/errors.hpp"

namespace pbts {

double per_period_return(const WeightVector& weights, const Eigen::VectorXd& gross) {
  if (gross.size() != static_cast<Eigen::Index>(weights.size())) {
    throw DimensionError("weights cover " + std::to_string(weights.size()) +
                         " assets but the return vector has " +
                         std::to_string(gross.size()));
  }
  if (weights.is_cash()) return 0.0;
  return gross.dot(weights.values()) - 1.0;
}

ReturnMoments return_moments(std::span<const double> net_returns) {
  if (net_returns.empty()) throw InsufficientDataError("empty return series");
  const double n = static_cast<double>(net_returns.size());
  double sum = 0.0;
  for (const double r : net_returns) sum += r;
  ReturnMoments m;
  m.mean = sum / n;
  double ss = 0.0;
  for (const double r : net_returns) ss += (r - m.mean) * (r - m.mean);
  m.stddev = std::sqrt(ss / n);
  return m;
}

SharpeStats sharpe_ratio(std::span<const double> net_returns) {
  if (net_returns.size() < 2) {
    throw InsufficientDataError("Sharpe ratio needs at least 2 returns, got " +
                                std::to_string(net_returns.size()));
  }
  const auto m = return_moments(net_returns);
  return {m.mean, m.stddev, m.mean / (m.stddev + kSharpeEpsilon),
          m.stddev < kSharpeEpsilon};
}

std::vector<double> cumulative_wealth(std::span<const double> net_returns) {
  std::vector<double> cw;
  cw.reserve(net_returns.size());
  double wealth = 1.0;
  for (std::size_t t = 0; t < net_returns.size(); ++t) {
    if (!(net_returns[t] > -1.0)) {
      throw BankruptcyError("net return " + std::to_string(net_returns[t]) +
                            " at step " + std::to_string(t) + " wipes out the portfolio");
    }
    wealth *= 1.0 + net_returns[t];
    cw.push_back(wealth);
  }
  return cw;
}

Drawdown max_drawdown(std::span<const double> cw) {
  if (cw.empty()) throw InsufficientDataError("drawdown of an empty wealth curve");
  Drawdown dd;
  double peak = cw.front();
  for (const double v : cw) {
    peak = std::max(peak, v);
    const double gap = peak - v;
    dd.absolute = std::max(dd.absolute, gap);
    if (peak > 0.0) dd.relative = std::max(dd.relative, gap / peak);
  }
  return dd;
}

double annualized_volatility(double sigma, int periods_per_year) {
  return std::sqrt(static_cast<double>(periods_per_year)) * sigma;
}

PerformanceReport evaluate_performance(std::span<const double> net_returns,
                                       int periods_per_year) {
  const auto m = return_moments(net_returns);
  PerformanceReport rep;
  rep.mean_return = m.mean;
  rep.std_return = m.stddev;
  rep.zero_variance = m.stddev < kSharpeEpsilon;
  rep.sharpe = m.mean / (m.stddev + kSharpeEpsilon);
  rep.sharpe_x100 = 100.0 * rep.sharpe;
  const auto cw = cumulative_wealth(net_returns);
  rep.cumulative_wealth = cw.back();
  const auto dd = max_drawdown(cw);
  rep.max_drawdown_abs = dd.absolute;
  rep.max_drawdown_rel = dd.relative;
  rep.volatility = annualized_volatility(m.stddev, periods_per_year);
  return rep;
}

}  // namespace pbts
