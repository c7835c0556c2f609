#include "ivnoise/sim.hpp"

#include <cmath>
#include <stdexcept>

#include "ivnoise/rng.hpp"
#include "ivnoise/stats.hpp"

namespace ivnoise {

namespace {
constexpr std::uint64_t kPriceStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
}  // namespace

void validate(const OuConfig& cfg) {
  if (!(cfg.sigma2 > 0.0)) throw std::invalid_argument("OuConfig: sigma2 <= 0");
  if (cfg.delta < 0.0) throw std::invalid_argument("OuConfig: delta < 0");
}

void validate(const SvConfig& cfg) {
  if (!(cfg.kappa > 0.0 && cfg.mu2 > 0.0 && cfg.gamma_vol > 0.0)) {
    throw std::invalid_argument("SvConfig: kappa, mu2, gamma_vol must be > 0");
  }
  if (std::abs(cfg.rho_lev) > 1.0) {
    throw std::invalid_argument("SvConfig: |rho_lev| > 1");
  }
  if (!(cfg.sig2_0 > 0.0)) throw std::invalid_argument("SvConfig: sig2_0 <= 0");
}

void validate(const Ar1NoiseConfig& cfg, bool allow_noiseless) {
  if (cfg.var_v < 0.0 || cfg.var_eps < 0.0) {
    throw std::invalid_argument("Ar1NoiseConfig: negative variance");
  }
  if (!(std::abs(cfg.rho) < 1.0)) {
    throw std::invalid_argument("Ar1NoiseConfig: |rho| must be < 1");
  }
  if (!allow_noiseless && cfg.var_v + cfg.var_eps == 0.0) {
    throw std::invalid_argument("Ar1NoiseConfig: noiseless configuration");
  }
}

double ou_step(const OuConfig& cfg, double x, double dt, double z) {
  if (cfg.delta == 0.0) {
    return x + std::sqrt(cfg.sigma2 * dt) * z;
  }
  const double decay = std::exp(-cfg.delta * dt);
  // (1 - e^{-2 delta dt}) / (2 delta), computed stably for small dt.
  const double var =
      cfg.sigma2 * (-std::expm1(-2.0 * cfg.delta * dt)) / (2.0 * cfg.delta);
  return cfg.mu + (x - cfg.mu) * decay + std::sqrt(var) * z;
}

std::vector<double> simulate_ou_on_grid(const OuConfig& cfg,
                                        const std::vector<double>& times,
                                        std::uint64_t seed) {
  validate(cfg);
  if (times.size() < 2) {
    throw std::invalid_argument("simulate_ou: need at least 2 observations");
  }
  NormalStream rng(seed);
  std::vector<double> x(times.size());
  x[0] = cfg.x0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double dt = times[i] - times[i - 1];
    if (!(dt > 0.0)) {
      throw std::invalid_argument("simulate_ou: grid not strictly increasing");
    }
    x[i] = ou_step(cfg, x[i - 1], dt, rng.next());
  }
  return x;
}

namespace {
std::vector<double> regular_grid(std::size_t n_obs, double horizon) {
  if (n_obs < 2) {
    throw std::invalid_argument("simulate: need at least 2 observations");
  }
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("simulate: horizon must be positive");
  }
  std::vector<double> t(n_obs);
  const double dt = horizon / static_cast<double>(n_obs - 1);
  for (std::size_t i = 0; i < n_obs; ++i) t[i] = static_cast<double>(i) * dt;
  return t;
}
}  // namespace

std::vector<double> simulate_ou(const OuConfig& cfg, std::size_t n_obs,
                                double horizon, std::uint64_t seed) {
  return simulate_ou_on_grid(cfg, regular_grid(n_obs, horizon), seed);
}

SvPath simulate_sv(const SvConfig& cfg, std::size_t n_obs, double horizon,
                   std::uint64_t seed) {
  validate(cfg);
  if (n_obs < 2) {
    throw std::invalid_argument("simulate_sv: need at least 2 observations");
  }
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("simulate_sv: horizon must be positive");
  }
  NormalStream rng(seed);
  const double dt = horizon / static_cast<double>(n_obs - 1);
  const double sdt = std::sqrt(dt);
  const double rho = cfg.rho_lev;
  const double orth = std::sqrt(1.0 - rho * rho);

  SvPath out;
  out.x.resize(n_obs);
  out.variance.resize(n_obs);
  double x = cfg.mu1;
  double v = cfg.sig2_0;
  out.x[0] = x;
  out.variance[0] = std::max(v, 0.0);
  for (std::size_t i = 1; i < n_obs; ++i) {
    const double zw = rng.next();
    const double zb = rho * zw + orth * rng.next();
    const double vplus = std::max(v, 0.0);
    const double vol = std::sqrt(vplus);
    x += -cfg.delta * (x - cfg.mu1) * dt + vol * sdt * zw;
    v += cfg.kappa * (cfg.mu2 - vplus) * dt + cfg.gamma_vol * vol * sdt * zb;
    out.x[i] = x;
    out.variance[i] = std::max(v, 0.0);
  }
  return out;
}

std::vector<double> simulate_noise(const Ar1NoiseConfig& cfg, std::size_t n_obs,
                                   std::uint64_t seed) {
  validate(cfg);
  if (n_obs < 1) {
    throw std::invalid_argument("simulate_noise: need at least 1 observation");
  }
  NormalStream rng(seed);
  const double sd_v = std::sqrt(cfg.var_v);
  const double sd_eps0 = std::sqrt(cfg.var_eps);
  // Stationary initialization: innovations have variance (1-rho^2) var_eps.
  const double sd_inno = std::sqrt((1.0 - cfg.rho * cfg.rho) * cfg.var_eps);
  std::vector<double> u(n_obs);
  double eps = sd_eps0 * rng.next();
  u[0] = sd_v * rng.next() + eps;
  for (std::size_t i = 1; i < n_obs; ++i) {
    eps = cfg.rho * eps + sd_inno * rng.next();
    u[i] = sd_v * rng.next() + eps;
  }
  return u;
}

double model_sigma2_u(const Ar1NoiseConfig& cfg) {
  validate(cfg);
  return cfg.var_v + cfg.var_eps * (1.0 + cfg.rho) / (1.0 - cfg.rho);
}

double model_gamma(const Ar1NoiseConfig& cfg, std::size_t lag) {
  if (lag == 0) return cfg.var_v + cfg.var_eps;
  return cfg.var_eps * std::pow(cfg.rho, static_cast<double>(lag));
}

namespace {

SimPath assemble(std::vector<double> times, std::vector<double> x,
                 std::vector<double> u, double true_iv, double true_s2u,
                 std::string label) {
  SimPath path;
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + u[i];
  path.series =
      make_tick_series(std::move(times), std::move(y), std::move(label));
  path.efficient = std::move(x);
  path.true_iv = true_iv;
  path.true_sigma2_u = true_s2u;
  return path;
}

}  // namespace

SimPath simulate_observed(const PriceModel& price, const Ar1NoiseConfig& noise,
                          std::size_t n_obs, double horizon,
                          std::uint64_t seed) {
  const std::uint64_t price_seed = derive_seed(seed, kPriceStream);
  const std::uint64_t noise_seed = derive_seed(seed, kNoiseStream);
  auto times = regular_grid(n_obs, horizon);
  auto u = simulate_noise(noise, n_obs, noise_seed);
  const double s2u = model_sigma2_u(noise);

  if (const auto* ou = std::get_if<OuConfig>(&price)) {
    auto x = simulate_ou_on_grid(*ou, times, price_seed);
    return assemble(std::move(times), std::move(x), std::move(u),
                    ou->sigma2 * horizon, s2u, "sim:ou");
  }
  const auto& sv = std::get<SvConfig>(price);
  auto sv_path = simulate_sv(sv, n_obs, horizon, price_seed);
  // Left Riemann sum of the simulated variance grid.
  KahanSum iv;
  const double dt = horizon / static_cast<double>(n_obs - 1);
  for (std::size_t i = 0; i + 1 < n_obs; ++i) iv.add(sv_path.variance[i] * dt);
  return assemble(std::move(times), std::move(sv_path.x), std::move(u),
                  iv.value(), s2u, "sim:sv");
}

SimPath simulate_observed_on_grid(const OuConfig& price,
                                  const Ar1NoiseConfig& noise,
                                  const std::vector<double>& times,
                                  std::uint64_t seed) {
  const std::uint64_t price_seed = derive_seed(seed, kPriceStream);
  const std::uint64_t noise_seed = derive_seed(seed, kNoiseStream);
  auto x = simulate_ou_on_grid(price, times, price_seed);
  auto u = simulate_noise(noise, times.size(), noise_seed);
  const double horizon = times.back() - times.front();
  return assemble(times, std::move(x), std::move(u), price.sigma2 * horizon,
                  model_sigma2_u(noise), "sim:ou-grid");
}

}  // namespace ivnoise
