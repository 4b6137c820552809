#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pbts/bandit.hpp"
#include "pbts/errors.hpp"
#include "support/bandit_sim.hpp"

namespace pbts {
namespace {

BetaState state_with(std::size_t arms, std::size_t slot, int successes, int failures) {
  BetaState s(arms);
  for (int i = 0; i < successes; ++i) s = update_posterior(std::move(s), slot, Outcome::Success);
  for (int i = 0; i < failures; ++i) s = update_posterior(std::move(s), slot, Outcome::Failure);
  return s;
}

TEST(SampleThetas, UniformPriorMean) {
  Rng rng(2024);
  const BetaState s(1);
  double sum = 0.0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const double th = sample_thetas(s, rng)[0];
    ASSERT_GT(th, 0.0);
    ASSERT_LT(th, 1.0);
    sum += th;
  }
  EXPECT_NEAR(sum / kDraws, 0.5, 0.005);
}

TEST(SampleThetas, ConcentratedPosterior) {
  // Beta(100, 1) has CDF x^100, so P(theta > 0.9) = 1 - 0.9^100.
  const double oracle = 1.0 - std::pow(0.9, 100);
  ASSERT_GT(oracle, 0.9999);
  Rng rng(77);
  const auto s = state_with(1, 0, 99, 0);
  ASSERT_EQ(s.alpha(0), 100.0);
  int above = 0;
  constexpr int kDraws = 10000;
  for (int i = 0; i < kDraws; ++i) above += sample_thetas(s, rng)[0] > 0.9;
  EXPECT_GE(static_cast<double>(above) / kDraws, 0.99);
}

TEST(SampleThetas, SeedDeterminism) {
  const auto s = state_with(5, 2, 3, 1);
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_thetas(s, a), sample_thetas(s, b));
}

TEST(SelectArm, ArgmaxWithLowestIndexTies) {
  EXPECT_EQ(select_arm(std::vector<double>{0.2, 0.9, 0.5, 0.1, 0.4}), 1u);  // SA
  EXPECT_EQ(select_arm(std::vector<double>{0.7, 0.7, 0.1, 0.1, 0.1}), 0u);  // BH
  EXPECT_EQ(select_arm(std::vector<double>{0.3}), 0u);
  EXPECT_THROW(select_arm(std::vector<double>{}), ConfigError);
}

// Arm j earns a series with mean mu[j] and a fixed +/- spread, so its Sharpe
// ratio is mu[j] / spread.
ArmReturnHistory history_with_means(const std::vector<double>& mu, double spread = 0.01,
                                    std::size_t periods = 10) {
  ArmReturnHistory h(mu.size());
  for (std::size_t t = 0; t < periods; ++t) {
    std::vector<double> row;
    for (const double m : mu) row.push_back(m + (t % 2 == 0 ? spread : -spread));
    h.append(row);
  }
  return h;
}

TEST(EvaluateReward, StrictlyBestArm) {
  const auto h = history_with_means({0.01, 0.02, 0.03, 0.04, 0.05});
  const auto r = evaluate_reward(h, 4, 3);
  EXPECT_EQ(r.success_count, 5);
  EXPECT_EQ(r.outcome, Outcome::Success);
}

TEST(EvaluateReward, CEqualsOneAlwaysSucceeds) {
  const auto h = history_with_means({0.01, 0.02, 0.03, 0.04, 0.05});
  for (std::size_t j = 0; j < 5; ++j) {
    EXPECT_EQ(evaluate_reward(h, j, 1).outcome, Outcome::Success);
  }
}

TEST(EvaluateReward, StrictlyWorstArm) {
  const auto h = history_with_means({0.01, 0.02, 0.03, 0.04, 0.05});
  const auto r = evaluate_reward(h, 0, 3);
  EXPECT_EQ(r.success_count, 1);
  EXPECT_EQ(r.outcome, Outcome::Failure);
}

TEST(EvaluateReward, TiesCountAsWeaklyDominated) {
  const auto h = history_with_means({0.02, 0.02, 0.01});
  EXPECT_EQ(evaluate_reward(h, 0, 2).success_count, 3);
}

TEST(EvaluateReward, UsesTrailingLookback) {
  // Arm 0 was bad early and good late; arm 1 the opposite.
  ArmReturnHistory h(2);
  for (int t = 0; t < 40; ++t) {
    const double wiggle = t % 2 == 0 ? 0.01 : -0.01;
    const bool late = t >= 20;
    h.append(std::vector<double>{(late ? 0.03 : -0.03) + wiggle, (late ? -0.01 : 0.05) + wiggle});
  }
  EXPECT_EQ(evaluate_reward(h, 0, 2, 10).outcome, Outcome::Success);
  EXPECT_EQ(evaluate_reward(h, 0, 2, 40).outcome, Outcome::Failure);
}

TEST(EvaluateReward, PreconditionErrors) {
  ArmReturnHistory empty(3);
  EXPECT_THROW(evaluate_reward(empty, 0, 1), NotWarmedUpError);
  const auto h = history_with_means({0.01, 0.02});
  EXPECT_THROW(evaluate_reward(h, 0, 0), ConfigError);
  EXPECT_THROW(evaluate_reward(h, 0, 3), ConfigError);
  EXPECT_THROW(evaluate_reward(h, 2, 1), BoundsError);
}

TEST(EvaluateReward, PositiveRescalingKeepsOutcomeProperty) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> z(0.005, 0.03);
  std::uniform_real_distribution<double> k(0.05, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    ArmReturnHistory h(5), scaled(5);
    const double scale = k(rng);
    for (int t = 0; t < 48; ++t) {
      std::vector<double> row(5);
      for (auto& x : row) x = z(rng);
      row[1] = 0.0;  // cash arm
      h.append(row);
      for (auto& x : row) x *= scale;
      scaled.append(row);
    }
    for (std::size_t j = 0; j < 5; ++j) {
      for (int c = 1; c <= 5; ++c) {
        const auto a = evaluate_reward(h, j, c);
        const auto b = evaluate_reward(scaled, j, c);
        EXPECT_EQ(a.outcome, b.outcome);
        EXPECT_EQ(a.success_count, b.success_count);
      }
    }
  }
}

TEST(UpdatePosterior, SuccessAndFailure) {
  const auto s = update_posterior(BetaState(1), 0, Outcome::Success);
  EXPECT_EQ(s.alpha(0), 2.0);
  EXPECT_EQ(s.beta(0), 1.0);
  const auto f = update_posterior(BetaState(1), 0, Outcome::Failure);
  EXPECT_EQ(f.alpha(0), 1.0);
  EXPECT_EQ(f.beta(0), 2.0);
  EXPECT_EQ(update_posterior(BetaState(1), 0, Outcome::Skipped), BetaState(1));
}

TEST(UpdatePosterior, OnlyChosenArmChanges) {
  const auto before = state_with(5, 0, 2, 3);
  const auto after = update_posterior(before, 2, Outcome::Success);
  for (std::size_t j : {0u, 1u, 3u, 4u}) {
    EXPECT_EQ(after.alpha(j), before.alpha(j));
    EXPECT_EQ(after.beta(j), before.beta(j));
  }
  EXPECT_EQ(after.alpha(2), before.alpha(2) + 1.0);
}

TEST(BetaStateType, CountConservationProperty) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> arm(0, 4);
  std::bernoulli_distribution coin(0.4);
  BetaState s(5);
  for (std::size_t t = 1; t <= 500; ++t) {
    s = update_posterior(std::move(s), arm(rng), coin(rng) ? Outcome::Success : Outcome::Failure);
    double total = 0.0;
    for (std::size_t j = 0; j < 5; ++j) total += s.alpha(j) + s.beta(j);
    ASSERT_EQ(total, 2.0 * 5 + static_cast<double>(t));
    ASSERT_EQ(s.completed_rounds(), t);
  }
}

TEST(BetaStateType, RestoreValidates) {
  EXPECT_NO_THROW(BetaState({1.0, 3.0}, {2.0, 1.0}));
  EXPECT_THROW(BetaState({0.5}, {1.0}), DataError);
  EXPECT_THROW(BetaState({1.0}, {1.0, 1.0}), DataError);
  EXPECT_THROW(BetaState(0), ConfigError);
}

TEST(Convergence, BestArmDominatesLateRounds) {
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto sim =
        testing::simulate_bernoulli_bandit({0.9, 0.1, 0.1, 0.1, 0.1}, seed, 5000, 1000);
    good += sim.best_arm_share > 0.9;
    EXPECT_EQ(sim.posterior.completed_rounds(), 5000u);
  }
  EXPECT_GE(good, 18);
}

}  // namespace
}  // namespace pbts
