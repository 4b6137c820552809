#include "pbts/strategy_arms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "pbts/errors.hpp"

namespace pbts {
namespace {

constexpr double kBudgetTolerance = 1e-9;
constexpr double kVwDenominatorFloor = 1e-12;

}  // namespace

std::string_view arm_name(ArmId arm) noexcept {
  switch (arm) {
    case ArmId::BuyAndHold: return "BH";
    case ArmId::SellAll: return "SA";
    case ArmId::EqualWeight: return "EW";
    case ArmId::ValueWeight: return "VW";
    case ArmId::MeanVariance: return "MV";
  }
  return "?";
}

ArmId parse_arm(std::string_view tag) {
  std::string upper(tag);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  for (const auto arm : kAllArms) {
    if (arm_name(arm) == upper) return arm;
  }
  throw ConfigError("unknown arm '" + std::string(tag) + "' (expected BH, SA, EW, VW or MV)");
}

WeightVector::WeightVector(Eigen::VectorXd weights) : w_(std::move(weights)) {
  if (w_.size() < 1) throw DimensionError("weight vector must cover at least one asset");
  if (!w_.allFinite()) throw DataError("weight vector has non-finite entries");
  if (is_cash()) return;
  // Leveraged MV allocations carry rounding proportional to their gross size.
  const double scale = std::max(1.0, w_.cwiseAbs().sum());
  if (std::abs(w_.sum() - 1.0) > kBudgetTolerance * scale) {
    throw DataError("weights sum to " + std::to_string(w_.sum()) +
                    "; expected 1 (invested) or an all-zero cash vector");
  }
}

WeightVector WeightVector::cash(std::size_t n) {
  return WeightVector(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)));
}

WeightVector WeightVector::equal(std::size_t n) {
  if (n < 1) throw DimensionError("equal weights need at least one asset");
  return WeightVector(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n),
                                                1.0 / static_cast<double>(n)));
}

bool WeightVector::is_cash() const noexcept { return (w_.array() == 0.0).all(); }

WeightVector weights_bh(const WeightVector& prev) { return prev; }

WeightVector weights_sa(std::size_t n) { return WeightVector::cash(n); }

WeightVector weights_ew(std::size_t n) { return WeightVector::equal(n); }

WeightVector weights_vw(const WeightVector& prev, const Eigen::VectorXd& prev_returns) {
  if (prev_returns.size() != static_cast<Eigen::Index>(prev.size())) {
    throw DimensionError("VW: weights and returns differ in length");
  }
  const Eigen::VectorXd grown = prev.values().cwiseProduct(prev_returns);
  const double total = grown.sum();
  if (std::abs(total) <= kVwDenominatorFloor) return weights_ew(prev.size());
  return WeightVector(grown / total);
}

MomentEstimate estimate_moments(const ReturnPanel& window, double ridge_scale) {
  const auto rows = window.periods();
  if (rows < 2) {
    throw InsufficientDataError("moment estimation needs at least 2 rows, got " +
                                std::to_string(rows));
  }
  if (!(ridge_scale >= 0.0) || !std::isfinite(ridge_scale)) {
    throw ConfigError("ridge scale must be finite and non-negative");
  }
  const Eigen::MatrixXd& r = window.returns();
  MomentEstimate est;
  est.mean = r.colwise().mean().transpose();
  const Eigen::MatrixXd centered = r.rowwise() - est.mean.transpose();
  est.cov = (centered.transpose() * centered) / static_cast<double>(rows - 1);
  est.cov = 0.5 * (est.cov + est.cov.transpose());
  const double avg_var = est.cov.trace() / static_cast<double>(window.assets());
  // Variance at rounding level means the window is constant.
  const double noise = 16.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, est.mean.cwiseAbs().maxCoeff());
  est.ridge = avg_var > noise * noise ? ridge_scale * avg_var : ridge_scale;
  return est;
}

MvSolution solve_mv(const MomentEstimate& moments) {
  const auto n = moments.mean.size();
  if (n < 1 || moments.cov.rows() != n || moments.cov.cols() != n) {
    throw DimensionError("MV: mean/covariance dimensions disagree");
  }
  Eigen::MatrixXd a = moments.cov;
  a.diagonal().array() += moments.ridge;
  const Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw SingularCovarianceError("covariance plus ridge is not positive definite");
  }
  // A common shift of R only moves lambda, so centring it avoids cancelling
  // two large terms when A is nearly singular.
  const double shift = moments.mean.mean();
  const Eigen::VectorXd centred = moments.mean.array() - shift;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd a_inv_r = llt.solve(centred);
  const Eigen::VectorXd a_inv_1 = llt.solve(ones);
  const double denom = a_inv_1.sum();
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    throw SingularCovarianceError("MV: degenerate budget constraint");
  }
  MvSolution sol;
  double lambda = (a_inv_r.sum() - 2.0) / denom;
  sol.weights = 0.5 * (a_inv_r - lambda * a_inv_1);
  // One refinement step on lambda restores the budget lost to rounding.
  const double slack = 1.0 - sol.weights.sum();
  sol.weights += (slack / denom) * a_inv_1;
  lambda -= 2.0 * slack / denom;
  sol.lambda = lambda + shift;
  if (!sol.weights.allFinite()) {
    throw SingularCovarianceError("MV: solution is not finite");
  }
  return sol;
}

WeightVector solve_mv_qp(const MomentEstimate& moments) {
  return WeightVector(solve_mv(moments).weights);
}

double mv_objective(const Eigen::VectorXd& w, const MomentEstimate& moments) {
  return w.dot(moments.cov * w) + moments.ridge * w.squaredNorm() - moments.mean.dot(w);
}

WeightVector arm_weights(ArmId arm, const WeightVector& prev,
                         const Eigen::VectorXd& prev_returns, const ReturnPanel& window,
                         double ridge_scale) {
  switch (arm) {
    case ArmId::BuyAndHold: return weights_bh(prev);
    case ArmId::SellAll: return weights_sa(prev.size());
    case ArmId::EqualWeight: return weights_ew(prev.size());
    case ArmId::ValueWeight: return weights_vw(prev, prev_returns);
    case ArmId::MeanVariance:
      if (window.assets() != prev.size()) {
        throw DimensionError("MV: window and portfolio differ in asset count");
      }
      return solve_mv_qp(estimate_moments(window, ridge_scale));
  }
  throw ConfigError("unknown arm");
}

}  // namespace pbts
