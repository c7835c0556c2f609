#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "ivnoise/tick_series.hpp"

namespace ivnoise {

/// Ornstein-Uhlenbeck efficient price: dX = -delta (X - mu) dt + sigma dW.
struct OuConfig {
  double sigma2 = 6e-5;  // variance rate per unit interval
  double delta = 0.5;    // mean-reversion speed, >= 0
  double mu = 1.6;       // long-run level
  double x0 = 1.6;       // initial log-price
};

/// Mean-reverting price with square-root stochastic variance:
///   dX      = -delta (X - mu1) dt + sigma_t dW
///   dsigma2 = kappa (mu2 - sigma2) dt + gamma_vol sigma_t dB,
/// with corr(dW, dB) = rho_lev.
struct SvConfig {
  double delta = 0.5;
  double mu1 = 1.6;
  double kappa = 5.0 / 252.0;
  double mu2 = 0.04 / 252.0;
  double gamma_vol = 0.05 / 252.0;
  double rho_lev = -0.5;
  double sig2_0 = 0.04 / 252.0;
};

/// Additive observation noise U_i = V_i + eps_i with V iid Gaussian and
/// eps a stationary AR(1). Indexed by observation count, not clock time.
struct Ar1NoiseConfig {
  double var_v = 2.9e-8;    // variance of the iid component
  double var_eps = 4.3e-8;  // stationary variance of the AR(1) component
  double rho = -0.7;        // AR(1) coefficient, |rho| < 1
};

using PriceModel = std::variant<OuConfig, SvConfig>;

/// A simulated observed path together with its latent benchmark values.
struct SimPath {
  TickSeries series;              // observed Y = X + U
  std::vector<double> efficient;  // X on the same grid
  double true_iv = 0.0;           // realized integrated variance of X
  double true_sigma2_u = 0.0;     // long-run noise variance of the model
};

void validate(const OuConfig& cfg);
void validate(const SvConfig& cfg);
void validate(const Ar1NoiseConfig& cfg, bool allow_noiseless = true);

/// One exact OU transition over dt driven by the normal draw z.
double ou_step(const OuConfig& cfg, double x, double dt, double z);

/// X sampled on the regular grid t_i = i*horizon/(n_obs-1) using the
/// exact transition density (no discretization bias).
std::vector<double> simulate_ou(const OuConfig& cfg, std::size_t n_obs,
                                double horizon, std::uint64_t seed);

/// Exact OU sampling on an arbitrary strictly increasing time grid,
/// e.g. one produced by time_warp_grid.
std::vector<double> simulate_ou_on_grid(const OuConfig& cfg,
                                        const std::vector<double>& times,
                                        std::uint64_t seed);

struct SvPath {
  std::vector<double> x;         // log-price grid
  std::vector<double> variance;  // sigma2_t grid, clamped at 0
};

/// Full-truncation Euler scheme: the variance state may go negative but
/// is clamped at zero inside every drift/diffusion evaluation and in the
/// returned grid.
SvPath simulate_sv(const SvConfig& cfg, std::size_t n_obs, double horizon,
                   std::uint64_t seed);

/// Stationary AR(1)-plus-iid noise draws, one per observation.
std::vector<double> simulate_noise(const Ar1NoiseConfig& cfg, std::size_t n_obs,
                                   std::uint64_t seed);

/// Long-run noise variance var_v + var_eps (1+rho)/(1-rho), the sum of
/// the variance and twice all autocovariances.
double model_sigma2_u(const Ar1NoiseConfig& cfg);

/// Lag-j model autocovariance: rho^j var_eps for j >= 1.
double model_gamma(const Ar1NoiseConfig& cfg, std::size_t lag);

/// Observed path Y = X + U. The price and noise streams are split
/// deterministically from `seed`, so changing the noise configuration
/// leaves the efficient path unchanged and vice versa.
SimPath simulate_observed(const PriceModel& price, const Ar1NoiseConfig& noise,
                          std::size_t n_obs, double horizon,
                          std::uint64_t seed);

/// As simulate_observed, but with efficient-price observation times taken
/// from an explicit grid on [0, horizon]. Only OU prices are supported;
/// the noise stays index-based.
SimPath simulate_observed_on_grid(const OuConfig& price,
                                  const Ar1NoiseConfig& noise,
                                  const std::vector<double>& times,
                                  std::uint64_t seed);

}  // namespace ivnoise
