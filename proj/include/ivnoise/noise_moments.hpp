#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ivnoise/tick_series.hpp"

namespace ivnoise {

/// Second-moment estimates of the observation noise.
///
/// gamma[j-1] holds the lag-j autocovariance estimate for j = 1..max_lag,
/// and sigma2_u = var_u + 2 * sum_{j<=i_n} gamma[j] exactly as stored.
struct NoiseMoments {
  double var_u = 0.0;
  std::vector<double> gamma;
  double sigma2_u = 0.0;
  std::size_t j_n = 0;
  std::size_t i_n = 0;
  std::optional<double> iv_used;
  bool bias_corrected = false;
  bool negative_var_u = false;
  bool negative_sigma2_u = false;

  std::size_t max_lag() const { return gamma.size(); }
  double gamma_at(std::size_t lag) const { return gamma.at(lag - 1); }
  double acf_at(std::size_t lag) const { return gamma.at(lag - 1) / var_u; }
};

/// Lagged realized volatility sum_{i=0}^{n-j} (Y_{i+j}-Y_i)^2 / (2(n-j+1))
/// with n the largest observation index. Single pass, compensated
/// summation. Requires 1 <= j <= n.
double rv_lag(const TickSeries& s, std::size_t j);

/// rv_lag minus the diffusion-induced finite-sample term
/// iv_hat * j / (2(n-j+1)). May be negative; reported as-is.
double rv_lag_adjusted(const TickSeries& s, std::size_t j, double iv_hat);

/// Caches the raw lagged sums for lags 1..max_lag plus j_n so that
/// bias-corrected moment sets for several integrated-volatility inputs
/// can be formed without re-scanning the series.
class RvCache {
 public:
  RvCache(const TickSeries& s, std::size_t j_n, std::size_t max_lag);

  double rv(std::size_t j) const;
  double rv_adjusted(std::size_t j, double iv_hat) const;
  NoiseMoments moments(std::size_t i_n, std::optional<double> iv_hat) const;

  std::size_t n() const { return n_; }
  std::size_t j_n() const { return j_n_; }
  std::size_t max_lag() const { return max_lag_; }

 private:
  std::size_t n_;
  std::size_t j_n_;
  std::size_t max_lag_;
  std::vector<double> rv_;  // lags 1..max(max_lag, j_n)
};

/// Variance, autocovariances and long-run variance of the noise via
/// lagged realized volatility: var_u from lag j_n, gamma[j] as the
/// difference var_u - rv(j), sigma2_u as the sum truncated at i_n.
/// When iv_hat is given all lagged sums are finite-sample corrected
/// first. Requires 1 <= i_n <= j_n < n and max_lag >= i_n.
NoiseMoments estimate_noise_moments(const TickSeries& s, std::size_t j_n,
                                    std::size_t i_n, std::size_t max_lag,
                                    std::optional<double> iv_hat = std::nullopt);

/// Recomputes var_u + 2 sum_{j<=i_n} gamma[j]; equals nm.sigma2_u exactly.
double sigma2_u_of(const NoiseMoments& nm);

/// Least-squares AR(1) coefficient: argmin over rho in (-0.999, 0.999) of
/// sum_{j<=max_fit_lag} (acf(j) - rho^j)^2, located by a coarse grid scan
/// plus golden-section refinement to well below 1e-4.
double fit_ar1_acf(const NoiseMoments& nm, std::size_t max_fit_lag);

/// Probability that an order is followed by one on the same side when the
/// price deviation is AR(1) with coefficient rho: (1 + rho) / 2.
double order_continuation_probability(double rho);

struct LogAcfFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::size_t> used_lags;  // lags with positive acf
};

/// OLS of ln acf(j) on j over the lags with positive acf; excluded lags
/// are reported. Throws when fewer than two lags are usable.
LogAcfFit log_acf_regression(const NoiseMoments& nm, std::size_t max_fit_lag);

}  // namespace ivnoise
