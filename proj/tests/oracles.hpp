// Independent reference implementations used only by tests. They favor
// clarity over speed and share no code with the library kernels.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ivnoise/sim.hpp"

namespace oracle {

// Lagged realized volatility by plain double loop.
inline double rv_naive(const std::vector<double>& y, std::size_t j) {
  const std::size_t n = y.size() - 1;
  double s = 0.0;
  for (std::size_t i = 0; i + j <= n; ++i) {
    s += (y[i + j] - y[i]) * (y[i + j] - y[i]);
  }
  return s / (2.0 * static_cast<double>(n - j + 1));
}

// Mean of the k spanning increments of block m (1-based).
inline double block_naive(const std::vector<double>& y, std::size_t k,
                          std::size_t m) {
  double s = 0.0;
  for (std::size_t i = (2 * m - 2) * k; i < (2 * m - 1) * k; ++i) {
    s += y[i + k] - y[i];
  }
  return s / static_cast<double>(k);
}

inline double pav_naive(const std::vector<double>& y, std::size_t k,
                        std::size_t m_n, int r) {
  const std::size_t n = y.size() - 1;
  double s = 0.0;
  for (std::size_t m = 1; m <= m_n; ++m) {
    s += std::pow(std::abs(block_naive(y, k, m)), r);
  }
  return std::pow(static_cast<double>(n), (r - 2) / 4.0) * s;
}

// Conditional one-step mean of the mean-reverting drift by fine Euler
// stepping of dm = -delta (m - mu) dt.
inline double ou_mean_fine_euler(double x0, double mu, double delta, double dt,
                                 int substeps) {
  double m = x0;
  const double h = dt / substeps;
  for (int s = 0; s < substeps; ++s) m += -delta * (m - mu) * h;
  return m;
}

// Model autocovariance of the iid-plus-AR(1) noise.
inline double noise_gamma(const ivnoise::Ar1NoiseConfig& cfg, long lag) {
  if (lag == 0) return cfg.var_v + cfg.var_eps;
  return cfg.var_eps * std::pow(cfg.rho, std::abs(static_cast<double>(lag)));
}

// Exact expectation of the squared block pre-average for an observed
// series on the grid i/n: mean-reverting Gaussian price started at its
// long-run level plus stationary noise. Quadratic forms in the level
// covariances; O(k^2) per block.
inline double expected_block_sq(double sigma2, double delta,
                                const ivnoise::Ar1NoiseConfig& noise,
                                std::size_t n, std::size_t k, std::size_t m) {
  const std::size_t len = 2 * k + 1;
  std::vector<double> w(len, 0.0);
  for (std::size_t t = 0; t < k; ++t) {
    w[t] -= 1.0 / k;
    w[t + k] += 1.0 / k;
  }
  const double dt = 1.0 / static_cast<double>(n);
  const std::size_t a = (2 * m - 2) * k;

  const auto var_at = [&](std::size_t i) {
    const double t = static_cast<double>(a + i) * dt;
    if (delta == 0.0) return sigma2 * t;
    return sigma2 * (1.0 - std::exp(-2.0 * delta * t)) / (2.0 * delta);
  };

  double x_part = 0.0;
  double u_part = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t l = 0; l < len; ++l) {
      if (w[i] == 0.0 || w[l] == 0.0) continue;
      const double ti = static_cast<double>(a + i) * dt;
      const double tl = static_cast<double>(a + l) * dt;
      double cov;
      if (delta == 0.0) {
        cov = sigma2 * std::min(ti, tl);
      } else {
        cov = std::exp(-delta * std::abs(ti - tl)) *
              std::min(var_at(i), var_at(l));
      }
      x_part += w[i] * w[l] * cov;
      u_part += w[i] * w[l] *
                noise_gamma(noise, static_cast<long>(i) - static_cast<long>(l));
    }
  }
  return x_part + u_part;
}

inline double expected_pav2(double sigma2, double delta,
                            const ivnoise::Ar1NoiseConfig& noise,
                            std::size_t n, std::size_t k, std::size_t m_n) {
  double s = 0.0;
  for (std::size_t m = 1; m <= m_n; ++m) {
    s += expected_block_sq(sigma2, delta, noise, n, k, m);
  }
  return s;
}

// Exact E[rv(j)] for the same model (price started at the long-run level).
inline double expected_rv(double sigma2, double delta,
                          const ivnoise::Ar1NoiseConfig& noise, std::size_t n,
                          std::size_t j) {
  const double dt = 1.0 / static_cast<double>(n);
  double x_sum = 0.0;
  for (std::size_t i = 0; i + j <= n; ++i) {
    if (delta == 0.0) {
      x_sum += sigma2 * j * dt;
    } else {
      const double vi =
          sigma2 * (1.0 - std::exp(-2.0 * delta * i * dt)) / (2.0 * delta);
      const double vij =
          sigma2 * (1.0 - std::exp(-2.0 * delta * (i + j) * dt)) /
          (2.0 * delta);
      x_sum += vij + vi - 2.0 * std::exp(-delta * j * dt) * vi;
    }
  }
  const double u_term =
      2.0 * (noise_gamma(noise, 0) - noise_gamma(noise, static_cast<long>(j)));
  return (x_sum + static_cast<double>(n - j + 1) * u_term) /
         (2.0 * static_cast<double>(n - j + 1));
}

}  // namespace oracle
