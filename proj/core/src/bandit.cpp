#include "pbts/bandit.hpp"

#include <cmath>
#include <string>

#include "pbts/errors.hpp"
#include "pbts/metrics.hpp"

namespace pbts {

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::Success: return "success";
    case Outcome::Failure: return "failure";
    case Outcome::Skipped: return "skipped";
  }
  return "?";
}

Outcome parse_outcome(std::string_view text) {
  if (text == "success") return Outcome::Success;
  if (text == "failure") return Outcome::Failure;
  if (text == "skipped") return Outcome::Skipped;
  throw DataError("unknown outcome '" + std::string(text) + "'");
}

BetaState::BetaState(std::size_t arms) : alpha_(arms, 1.0), beta_(arms, 1.0) {
  if (arms < 1) throw ConfigError("bandit needs at least one arm");
}

BetaState::BetaState(std::vector<double> alpha, std::vector<double> beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.empty() || alpha_.size() != beta_.size()) {
    throw DataError("Beta state needs matching, nonempty alpha/beta lists");
  }
  for (std::size_t j = 0; j < alpha_.size(); ++j) {
    for (const double v : {alpha_[j], beta_[j]}) {
      if (!(v >= 1.0) || std::floor(v) != v) {
        throw DataError("Beta parameters must be whole numbers >= 1");
      }
    }
  }
}

std::size_t BetaState::completed_rounds() const noexcept {
  double total = 0.0;
  for (std::size_t j = 0; j < alpha_.size(); ++j) total += alpha_[j] + beta_[j] - 2.0;
  return static_cast<std::size_t>(total);
}

ArmReturnHistory::ArmReturnHistory(std::size_t arms) : series_(arms) {}

void ArmReturnHistory::append(std::span<const double> returns) {
  if (returns.size() != series_.size()) {
    throw DimensionError("history append expects " + std::to_string(series_.size()) +
                         " arm returns, got " + std::to_string(returns.size()));
  }
  for (std::size_t j = 0; j < returns.size(); ++j) series_[j].push_back(returns[j]);
}

std::vector<double> sample_thetas(const BetaState& state, Rng& rng) {
  std::vector<double> thetas(state.arms());
  for (std::size_t j = 0; j < state.arms(); ++j) {
    std::gamma_distribution<double> ga(state.alpha(j), 1.0);
    std::gamma_distribution<double> gb(state.beta(j), 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    const double sum = x + y;
    // Both gammas can underflow to 0 for tiny shapes; only shapes >= 1 occur
    // here, but keep the draw inside (0, 1) regardless.
    thetas[j] = sum > 0.0 ? x / sum : 0.5;
  }
  return thetas;
}

std::size_t select_arm(std::span<const double> thetas) {
  if (thetas.empty()) throw ConfigError("select_arm needs at least one theta");
  std::size_t best = 0;
  for (std::size_t j = 1; j < thetas.size(); ++j) {
    if (thetas[j] > thetas[best]) best = j;
  }
  return best;
}

double trailing_sharpe(std::span<const double> series, std::size_t lookback) {
  if (series.empty()) throw NotWarmedUpError("no returns to compute a Sharpe ratio");
  if (lookback < 1) throw ConfigError("Sharpe lookback must be at least 1");
  const auto take = std::min(lookback, series.size());
  const auto m = return_moments(series.last(take));
  return m.mean / (m.stddev + kSharpeEpsilon);
}

Reward evaluate_reward(const ArmReturnHistory& history, std::size_t chosen_slot, int c,
                       std::size_t sr_lookback) {
  const auto arms = history.arms();
  if (chosen_slot >= arms) throw BoundsError("chosen arm slot out of range");
  if (c < 1 || static_cast<std::size_t>(c) > arms) {
    throw ConfigError("c must lie in [1, " + std::to_string(arms) + "], got " +
                      std::to_string(c));
  }
  if (history.length() == 0) {
    throw NotWarmedUpError("reward needs at least one return per arm");
  }
  std::vector<double> sr(arms);
  for (std::size_t j = 0; j < arms; ++j) sr[j] = trailing_sharpe(history.arm(j), sr_lookback);
  Reward reward;
  for (std::size_t j = 0; j < arms; ++j) {
    if (sr[chosen_slot] - sr[j] >= 0.0) ++reward.success_count;
  }
  reward.outcome = reward.success_count >= c ? Outcome::Success : Outcome::Failure;
  return reward;
}

BetaState update_posterior(BetaState state, std::size_t chosen, Outcome outcome) {
  if (chosen >= state.arms()) throw BoundsError("posterior update for unknown arm slot");
  if (outcome == Outcome::Success) {
    state.alpha_[chosen] += 1.0;
  } else if (outcome == Outcome::Failure) {
    state.beta_[chosen] += 1.0;
  }
  return state;
}

}  // namespace pbts
