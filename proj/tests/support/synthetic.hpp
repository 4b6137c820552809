#pragma once

// Seeded synthetic return panels for tests and the acceptance suite.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pbts/market_data.hpp"

namespace pbts::testing {

inline std::vector<std::string> period_labels(std::size_t m) {
  std::vector<std::string> out;
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    auto s = std::to_string(k + 1);
    out.push_back("p" + std::string(6 - std::min<std::size_t>(6, s.size()), '0') + s);
  }
  return out;
}

inline std::vector<std::string> asset_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("A" + std::to_string(i + 1));
  return out;
}

inline ReturnPanel panel_from(const Eigen::MatrixXd& gross,
                              Periodicity p = Periodicity::Monthly) {
  return ReturnPanel(period_labels(static_cast<std::size_t>(gross.rows())),
                     asset_labels(static_cast<std::size_t>(gross.cols())), gross, p);
}

/// i.i.d. Gaussian net returns with per-asset drift/volatility, clipped so
/// gross returns stay above 0.5.
inline ReturnPanel random_panel(std::size_t m, std::size_t n, std::uint64_t seed,
                                double drift = 0.005, double vol = 0.04) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd g(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double d = drift * (1.0 + 0.2 * static_cast<double>(j));
      const double s = vol * (1.0 + 0.3 * static_cast<double>(j));
      g(i, j) = std::max(0.5, 1.0 + d + s * z(rng));
    }
  }
  return panel_from(g);
}

/// Three consecutive regimes over `n` assets: a bull market, a crash and a
/// volatile sideways market, each `segment` periods long. Asset drift and
/// volatility differ so the arms disagree.
inline ReturnPanel regime_panel(std::size_t segment = 80, std::size_t n = 5,
                                std::uint64_t seed = 2024) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  const std::size_t m = 3 * segment;
  Eigen::MatrixXd g(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t regime = k / segment;
    const double market = regime == 0 ? 0.012 : regime == 1 ? -0.025 : 0.0;
    const double market_vol = regime == 0 ? 0.03 : regime == 1 ? 0.07 : 0.05;
    const double common = market + market_vol * z(rng);
    for (std::size_t j = 0; j < n; ++j) {
      const double beta = 0.8 + 0.1 * static_cast<double>(j);
      const double idio = 0.06 * (1.0 + 0.25 * static_cast<double>(j)) * z(rng);
      const double net = beta * common + idio;
      g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = std::max(0.4, 1.0 + net);
    }
  }
  return panel_from(g);
}

}  // namespace pbts::testing
