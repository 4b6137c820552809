#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

#include "pbts/market_data.hpp"

namespace pbts {

/// The five strategic arms, numbered in roster order (BH=1 ... MV=5).
enum class ArmId : int {
  BuyAndHold = 1,
  SellAll = 2,
  EqualWeight = 3,
  ValueWeight = 4,
  MeanVariance = 5,
};

inline constexpr std::array<ArmId, 5> kAllArms = {
    ArmId::BuyAndHold, ArmId::SellAll, ArmId::EqualWeight, ArmId::ValueWeight,
    ArmId::MeanVariance};

constexpr int arm_index(ArmId arm) noexcept { return static_cast<int>(arm); }
/// Short tag: "BH", "SA", "EW", "VW" or "MV".
std::string_view arm_name(ArmId arm) noexcept;
/// Inverse of arm_name (case-insensitive). Throws ConfigError.
ArmId parse_arm(std::string_view tag);

/// Portfolio allocation over n assets. Either fully invested (weights sum to
/// one; negative entries are short positions) or exactly all-zero (cash).
class WeightVector {
 public:
  /// Throws DataError if an entry is non-finite or the vector is neither
  /// invested nor cash.
  explicit WeightVector(Eigen::VectorXd weights);

  static WeightVector cash(std::size_t n);
  static WeightVector equal(std::size_t n);

  std::size_t size() const noexcept { return static_cast<std::size_t>(w_.size()); }
  const Eigen::VectorXd& values() const noexcept { return w_; }
  double operator[](std::size_t i) const { return w_(static_cast<Eigen::Index>(i)); }
  bool is_cash() const noexcept;

  friend bool operator==(const WeightVector& a, const WeightVector& b) {
    return a.w_.size() == b.w_.size() && a.w_ == b.w_;
  }

 private:
  Eigen::VectorXd w_;
};

inline constexpr double kDefaultRidgeScale = 1e-6;

/// Moments feeding the mean-variance arm. The quadratic form used by the
/// solver is cov + ridge * I.
struct MomentEstimate {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  double ridge = 0.0;
};

// Rule-based arms.
WeightVector weights_bh(const WeightVector& prev);
WeightVector weights_sa(std::size_t n);
WeightVector weights_ew(std::size_t n);
/// Drifted previous allocation; falls back to EW when |prev . ret| <= 1e-12.
WeightVector weights_vw(const WeightVector& prev, const Eigen::VectorXd& prev_returns);

/// Column means and (rows-1)-normalized covariance of the window's gross
/// returns. ridge = ridge_scale * trace(cov) / n, or ridge_scale itself when
/// the window is constant (variance at rounding level).
MomentEstimate estimate_moments(const ReturnPanel& window,
                                double ridge_scale = kDefaultRidgeScale);

struct MvSolution {
  Eigen::VectorXd weights;
  double lambda = 0.0;  ///< multiplier of the budget constraint
};

/// Minimizes W'AW - R'W subject to 1'W = 1 with A = cov + ridge*I.
/// Stationarity gives W = A^{-1}(R - lambda*1)/2; lambda enforces the budget.
MvSolution solve_mv(const MomentEstimate& moments);
WeightVector solve_mv_qp(const MomentEstimate& moments);

/// Objective W'(cov + ridge*I)W - R'W.
double mv_objective(const Eigen::VectorXd& w, const MomentEstimate& moments);

/// Weights of one arm for the coming period. `prev` is the portfolio held in
/// the previous period, `prev_returns` that period's gross returns and
/// `window` the trailing estimation rows (used by MV only).
WeightVector arm_weights(ArmId arm, const WeightVector& prev,
                         const Eigen::VectorXd& prev_returns, const ReturnPanel& window,
                         double ridge_scale = kDefaultRidgeScale);

}  // namespace pbts
