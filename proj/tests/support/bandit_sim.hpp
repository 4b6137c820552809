#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "pbts/bandit.hpp"

namespace pbts::testing {

struct SimulationOutcome {
  double best_arm_share = 0.0;  ///< share of the final `tail` rounds on arm 0
  BetaState posterior{1};
};

/// Bernoulli bandit with success probabilities `probs` (arm 0 best), driven
/// through the library's sample/select/update loop.
inline SimulationOutcome simulate_bernoulli_bandit(const std::vector<double>& probs,
                                                   std::uint64_t seed, std::size_t rounds,
                                                   std::size_t tail) {
  Rng rng(seed);
  std::mt19937_64 env(seed ^ 0x9E3779B97F4A7C15ULL);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  BetaState state(probs.size());
  std::size_t best_hits = 0;
  for (std::size_t t = 0; t < rounds; ++t) {
    const auto thetas = sample_thetas(state, rng);
    const auto arm = select_arm(thetas);
    const auto outcome = u(env) < probs[arm] ? Outcome::Success : Outcome::Failure;
    state = update_posterior(std::move(state), arm, outcome);
    if (t + tail >= rounds && arm == 0) ++best_hits;
  }
  return {static_cast<double>(best_hits) / static_cast<double>(tail), std::move(state)};
}

}  // namespace pbts::testing
