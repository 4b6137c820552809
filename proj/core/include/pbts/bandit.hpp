#pragma once

// Beta-Bernoulli Thompson sampling over the strategic arms, with the top-c
// Sharpe-ratio reward. Arms are addressed by their position ("slot") in the
// active roster; slots run 0..l-1.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "pbts/strategy_arms.hpp"

namespace pbts {

using Rng = std::mt19937_64;

inline constexpr std::size_t kDefaultSrLookback = 36;

enum class Outcome { Success, Failure, Skipped };

std::string_view to_string(Outcome o) noexcept;
Outcome parse_outcome(std::string_view text);

/// Per-arm Beta(alpha, beta) posterior, starting from Beta(1, 1).
class BetaState {
 public:
  explicit BetaState(std::size_t arms);
  /// Restores a serialized state. Throws DataError unless every parameter is
  /// a whole number >= 1.
  BetaState(std::vector<double> alpha, std::vector<double> beta);

  std::size_t arms() const noexcept { return alpha_.size(); }
  double alpha(std::size_t slot) const { return alpha_.at(slot); }
  double beta(std::size_t slot) const { return beta_.at(slot); }
  const std::vector<double>& alphas() const noexcept { return alpha_; }
  const std::vector<double>& betas() const noexcept { return beta_; }

  /// Sum over arms of (alpha - 1) + (beta - 1).
  std::size_t completed_rounds() const noexcept;

  friend bool operator==(const BetaState&, const BetaState&) = default;

 private:
  friend BetaState update_posterior(BetaState state, std::size_t chosen, Outcome outcome);
  std::vector<double> alpha_;
  std::vector<double> beta_;
};

struct SelectionRecord {
  std::size_t period = 0;  ///< 1-based period index k
  std::vector<double> thetas;
  std::size_t chosen_slot = 0;
  ArmId chosen = ArmId::BuyAndHold;
  Outcome outcome = Outcome::Skipped;
  int success_count = 0;

  friend bool operator==(const SelectionRecord&, const SelectionRecord&) = default;
};

/// Counterfactual net returns of every arm, one entry per elapsed period.
class ArmReturnHistory {
 public:
  explicit ArmReturnHistory(std::size_t arms);

  std::size_t arms() const noexcept { return series_.size(); }
  std::size_t length() const noexcept { return series_.empty() ? 0 : series_.front().size(); }
  std::span<const double> arm(std::size_t slot) const { return series_.at(slot); }

  /// Appends one period; `returns` must hold one value per arm.
  void append(std::span<const double> returns);

  friend bool operator==(const ArmReturnHistory&, const ArmReturnHistory&) = default;

 private:
  std::vector<std::vector<double>> series_;
};

/// theta_j ~ Beta(alpha_j, beta_j) independently, drawn as X/(X+Y) with
/// X ~ Gamma(alpha_j), Y ~ Gamma(beta_j).
std::vector<double> sample_thetas(const BetaState& state, Rng& rng);

/// Slot of the largest theta; ties go to the lowest slot.
std::size_t select_arm(std::span<const double> thetas);

struct Reward {
  Outcome outcome = Outcome::Failure;
  int success_count = 0;
};

/// Sharpe ratio over the trailing min(lookback, length) values.
double trailing_sharpe(std::span<const double> series, std::size_t lookback);

/// Counts arms whose trailing Sharpe ratio the chosen arm weakly beats
/// (itself included) and compares that count with c.
Reward evaluate_reward(const ArmReturnHistory& history, std::size_t chosen_slot, int c,
                       std::size_t sr_lookback = kDefaultSrLookback);

/// Success bumps alpha of the chosen arm, failure bumps beta. Skipped rounds
/// leave the state unchanged.
BetaState update_posterior(BetaState state, std::size_t chosen, Outcome outcome);

}  // namespace pbts
