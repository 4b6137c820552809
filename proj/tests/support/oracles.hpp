#pragma once

// Independent reference computations for tests. None of these call into the
// code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace pbts::testing {

/// O(T^2) maximum drawdown over every (peak, trough) pair with peak <= trough.
inline std::pair<double, double> brute_force_drawdown(const std::vector<double>& cw) {
  double abs_dd = 0.0;
  double rel_dd = 0.0;
  for (std::size_t i = 0; i < cw.size(); ++i) {
    for (std::size_t j = i; j < cw.size(); ++j) {
      abs_dd = std::max(abs_dd, cw[i] - cw[j]);
      if (cw[i] > 0.0) rel_dd = std::max(rel_dd, (cw[i] - cw[j]) / cw[i]);
    }
  }
  return {abs_dd, rel_dd};
}

/// W'AW - R'W with A = cov + ridge I, evaluated by explicit loops.
inline double loop_objective(const std::vector<double>& w, const Eigen::MatrixXd& cov,
                             double ridge, const Eigen::VectorXd& mean) {
  double quad = 0.0;
  double lin = 0.0;
  const auto n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +
                       (i == j ? ridge : 0.0);
      quad += w[i] * a * w[j];
    }
    lin += mean(static_cast<Eigen::Index>(i)) * w[i];
  }
  return quad - lin;
}

/// Two assets: scan w1 on a 1e-4 grid over [lo, hi], w2 = 1 - w1.
inline std::vector<double> grid_search_two_assets(const Eigen::MatrixXd& cov, double ridge,
                                                  const Eigen::VectorXd& mean, double lo,
                                                  double hi, double step = 1e-4) {
  std::vector<double> best{lo, 1.0 - lo};
  double best_f = loop_objective(best, cov, ridge, mean);
  const auto steps = static_cast<long>(std::llround((hi - lo) / step));
  for (long s = 0; s <= steps; ++s) {
    const double w1 = lo + static_cast<double>(s) * step;
    const std::vector<double> w{w1, 1.0 - w1};
    const double f = loop_objective(w, cov, ridge, mean);
    if (f < best_f) {
      best_f = f;
      best = w;
    }
  }
  return best;
}

/// Minimizes the MV objective on the budget hyperplane by repeated exchange
/// moves w += t (e_i - e_j), each t chosen by a coarse-to-fine grid scan that
/// ends at a 1e-4 step. Starts from equal weights.
inline std::vector<double> exchange_grid_search(const Eigen::MatrixXd& cov, double ridge,
                                                const Eigen::VectorXd& mean,
                                                double span = 64.0, int max_sweeps = 5000) {
  const auto n = static_cast<std::size_t>(mean.size());
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  auto a = [&](std::size_t i, std::size_t j) {
    return cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +
           (i == j ? ridge : 0.0);
  };
  double f = loop_objective(w, cov, ridge, mean);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double before = f;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        // f(w + t d) - f(w) = q t^2 + g t along d = e_i - e_j.
        const double q = a(i, i) + a(j, j) - 2.0 * a(i, j);
        double aw_i = 0.0;
        double aw_j = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          aw_i += a(i, k) * w[k];
          aw_j += a(j, k) * w[k];
        }
        const double g = 2.0 * (aw_i - aw_j) - (mean(static_cast<Eigen::Index>(i)) -
                                                mean(static_cast<Eigen::Index>(j)));
        auto delta = [&](double t) { return q * t * t + g * t; };
        double center = 0.0;
        double half = span;
        for (const double step : {1.0, 1e-2, 1e-4}) {
          double best_t = center;
          double best_d = delta(center);
          const auto count = static_cast<long>(std::llround(half / step));
          for (long s = -count; s <= count; ++s) {
            const double t = center + static_cast<double>(s) * step;
            const double d = delta(t);
            if (d < best_d) {
              best_d = d;
              best_t = t;
            }
          }
          center = best_t;
          half = step;
        }
        if (delta(center) < 0.0) {
          w[i] += center;
          w[j] -= center;
        }
      }
    }
    f = loop_objective(w, cov, ridge, mean);
    if (before - f < 1e-15) break;
  }
  return w;
}

/// KKT system [2A 1; 1' 0][w; lambda] = [R; 1] solved by Gaussian elimination
/// with partial pivoting.
inline std::vector<double> kkt_gauss_solve(const Eigen::MatrixXd& cov, double ridge,
                                           const Eigen::VectorXd& mean) {
  const auto n = static_cast<std::size_t>(mean.size());
  const std::size_t dim = n + 1;
  std::vector<std::vector<double>> m(dim, std::vector<double>(dim + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = 2.0 * (cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +
                       (i == j ? ridge : 0.0));
    }
    m[i][n] = 1.0;
    m[n][i] = 1.0;
    m[i][dim] = mean(static_cast<Eigen::Index>(i));
  }
  m[n][dim] = 1.0;
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < dim; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    std::swap(m[col], m[pivot]);
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == col) continue;
      const double factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c <= dim; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = m[i][dim] / m[i][i];
  return w;
}

}  // namespace pbts::testing
