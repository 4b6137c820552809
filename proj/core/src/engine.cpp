#include "pbts/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include "pbts/errors.hpp"

namespace pbts {
namespace {

// Weights of one arm for period row r. MV falls back to EW until two rows
// of history exist.
WeightVector compute_arm(ArmId arm, const WeightVector& held, const Eigen::VectorXd& prev_ret,
                         const ReturnPanel& panel, std::size_t r, const BacktestConfig& cfg) {
  const std::size_t n = panel.assets();
  switch (arm) {
    case ArmId::BuyAndHold: return weights_bh(held);
    case ArmId::SellAll: return weights_sa(n);
    case ArmId::EqualWeight: return weights_ew(n);
    case ArmId::ValueWeight: return weights_vw(held, prev_ret);
    case ArmId::MeanVariance: {
      const std::size_t len = std::min(cfg.tau, r);
      if (len < 2) return weights_ew(n);
      return arm_weights(arm, held, prev_ret, slice_window(panel, r, len), cfg.ridge_scale);
    }
  }
  throw ConfigError("unknown arm");
}

}  // namespace

void BacktestConfig::validate(std::size_t periods) const {
  if (arms.empty()) throw ConfigError("arm roster is empty");
  std::set<ArmId> unique(arms.begin(), arms.end());
  if (unique.size() != arms.size()) throw ConfigError("arm roster has duplicates");
  if (tau < 2) throw ConfigError("tau must be at least 2, got " + std::to_string(tau));
  if (c < 1 || static_cast<std::size_t>(c) > arms.size()) {
    throw ConfigError("c must lie in [1, " + std::to_string(arms.size()) + "], got " +
                      std::to_string(c));
  }
  if (sr_lookback < 1) throw ConfigError("sr_lookback must be at least 1");
  if (!std::isfinite(ridge_scale) || ridge_scale < 0.0) {
    throw ConfigError("ridge_scale must be finite and non-negative");
  }
  if (tau >= periods) {
    throw InsufficientDataError("insufficient history: tau=" + std::to_string(tau) +
                                " needs more than " + std::to_string(tau) +
                                " periods, panel has " + std::to_string(periods));
  }
}

std::vector<double> counterfactual_arm_returns(const ReturnPanel& panel, std::size_t row,
                                               std::span<const WeightVector> arm_weights) {
  const Eigen::VectorXd gross = panel.row(row);
  std::vector<double> out;
  out.reserve(arm_weights.size());
  for (const auto& w : arm_weights) out.push_back(per_period_return(w, gross));
  return out;
}

BacktestResult run_backtest(const ReturnPanel& panel, const BacktestConfig& config) {
  config.validate(panel.periods());
  const std::size_t m = panel.periods();
  const std::size_t n = panel.assets();
  const std::size_t l = config.arms.size();

  BacktestResult res;
  res.config = config;
  res.periodicity = panel.periodicity();
  res.asset_ids = panel.asset_ids();
  res.selections.reserve(m);
  res.realized_net_returns.reserve(m - config.tau);
  res.weight_trajectory.reserve(m - config.tau);

  BetaState posterior(l);
  ArmReturnHistory history(l);
  Rng rng(config.seed);

  WeightVector held = WeightVector::equal(n);
  Eigen::VectorXd prev_ret = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
  std::vector<WeightVector> arms;
  arms.reserve(l);

  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t k = r + 1;
    arms.clear();
    for (const auto arm : config.arms) {
      arms.push_back(compute_arm(arm, held, prev_ret, panel, r, config));
    }

    SelectionRecord rec;
    rec.period = k;
    rec.thetas = sample_thetas(posterior, rng);
    rec.chosen_slot = select_arm(rec.thetas);
    rec.chosen = config.arms[rec.chosen_slot];

    const auto cf = counterfactual_arm_returns(panel, r, arms);
    history.append(cf);

    if (k > config.tau) {
      res.weight_trajectory.push_back(arms[rec.chosen_slot]);
      res.realized_net_returns.push_back(cf[rec.chosen_slot]);
      res.traded_dates.push_back(panel.dates()[r]);
    }

    if (history.length() >= 2) {
      const auto reward =
          evaluate_reward(history, rec.chosen_slot, config.c, config.sr_lookback);
      rec.outcome = reward.outcome;
      rec.success_count = reward.success_count;
      posterior = update_posterior(std::move(posterior), rec.chosen_slot, rec.outcome);
    }

    held = arms[rec.chosen_slot];
    prev_ret = panel.row(r);
    res.selections.push_back(std::move(rec));
  }

  res.cw_curve = cumulative_wealth(res.realized_net_returns);
  res.report = evaluate_performance(res.realized_net_returns, panel.periods_per_year());
  res.per_arm_counterfactual = std::move(history);
  res.final_posterior = std::move(posterior);
  return res;
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (const double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

SweepTable run_c_sweep(const ReturnPanel& panel, const BacktestConfig& base,
                       std::span<const int> c_values, std::span<const std::uint64_t> seeds,
                       unsigned threads) {
  if (c_values.empty()) throw ConfigError("c sweep needs at least one c value");
  if (seeds.empty()) throw ConfigError("c sweep needs at least one seed");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw ConfigError("c sweep seeds must be distinct");
  }
  for (const int c : c_values) {
    BacktestConfig probe = base;
    probe.c = c;
    probe.validate(panel.periods());
  }

  SweepTable table;
  table.rows.resize(c_values.size() * seeds.size());
  std::vector<std::exception_ptr> errors(table.rows.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < table.rows.size(); i = next++) {
      const int c = c_values[i / seeds.size()];
      const auto seed = seeds[i % seeds.size()];
      try {
        BacktestConfig cfg = base;
        cfg.c = c;
        cfg.seed = seed;
        table.rows[i] = {c, seed, run_backtest(panel, cfg).report};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, table.rows.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t ci = 0; ci < c_values.size(); ++ci) {
    std::vector<double> sr, cw, mdd, vo;
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const auto& rep = table.rows[ci * seeds.size() + si].report;
      sr.push_back(rep.sharpe);
      cw.push_back(rep.cumulative_wealth);
      mdd.push_back(rep.max_drawdown_rel);
      vo.push_back(rep.volatility);
    }
    table.summary.push_back(
        {c_values[ci], seeds.size(), mean_std(sr), mean_std(cw), mean_std(mdd), mean_std(vo)});
  }
  return table;
}

}  // namespace pbts
