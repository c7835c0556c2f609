#include <doctest.h>

#include <cmath>
#include <vector>

#include "ivnoise/rng.hpp"
#include "ivnoise/sim.hpp"
#include "ivnoise/stats.hpp"
#include "oracles.hpp"

using namespace ivnoise;

namespace {

const OuConfig kBenchOu{6e-5, 0.5, 1.6, 1.6};
const Ar1NoiseConfig kBenchNoise{2.9e-8, 4.3e-8, -0.7};

double sample_autocov(const std::vector<double>& u, std::size_t lag) {
  double m = mean(u);
  KahanSum s;
  for (std::size_t i = 0; i + lag < u.size(); ++i) {
    s.add((u[i] - m) * (u[i + lag] - m));
  }
  return s.value() / static_cast<double>(u.size() - lag);
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("ou step is the closed-form transition") {
  const OuConfig cfg{4e-4, 0.5, 1.6, 1.2};
  const double dt = 1.0 / 23400.0;

  SUBCASE("zero draw reproduces the conditional mean") {
    const double got = ou_step(cfg, 1.2, dt, 0.0);
    const double want = cfg.mu + (1.2 - cfg.mu) * std::exp(-cfg.delta * dt);
    CHECK(got == doctest::Approx(want).epsilon(1e-14));
  }

  SUBCASE("driftless case degenerates to a brownian increment") {
    const OuConfig flat{4e-4, 0.0, 0.0, 0.7};
    CHECK(ou_step(flat, 0.7, dt, 0.0) == 0.7);
    CHECK(ou_step(flat, 0.7, dt, 2.0) ==
          doctest::Approx(0.7 + 2.0 * std::sqrt(4e-4 * dt)).epsilon(1e-14));
  }

  SUBCASE("conditional variance matches the closed form to 1e-12") {
    const double sd = ou_step(cfg, 1.2, dt, 1.0) - ou_step(cfg, 1.2, dt, 0.0);
    const double want =
        cfg.sigma2 * (1.0 - std::exp(-2.0 * cfg.delta * dt)) /
        (2.0 * cfg.delta);
    CHECK(sd * sd == doctest::Approx(want).epsilon(1e-12));
  }

  SUBCASE("conditional mean agrees with a 1000-substep euler oracle") {
    const double closed = ou_step(cfg, 1.2, dt, 0.0);
    const double fine =
        oracle::ou_mean_fine_euler(1.2, cfg.mu, cfg.delta, dt, 1000);
    CHECK(std::abs(closed - fine) / std::abs(fine) < 1e-3);
  }
}

TEST_CASE("ou path realizes the configured variance budget") {
  const std::size_t n_obs = 23401;
  const int reps = 100;
  std::vector<double> rv(reps);
  for (int r = 0; r < reps; ++r) {
    const auto x = simulate_ou(kBenchOu, n_obs, 1.0, derive_seed(500, r));
    KahanSum s;
    for (std::size_t i = 1; i < x.size(); ++i) {
      s.add((x[i] - x[i - 1]) * (x[i] - x[i - 1]));
    }
    rv[r] = s.value();
  }
  // Per-path sd of realized variance is about sigma2*sqrt(2/n).
  const double se = 6e-5 * std::sqrt(2.0 / 23400.0) / std::sqrt(100.0);
  CHECK(std::abs(mean(rv) - 6e-5) < 4.0 * se + 1e-8);
}

TEST_CASE("two-point driftless path has the right increment law") {
  const OuConfig cfg{3e-4, 0.0, 0.0, 0.25};
  const int reps = 2000;
  std::vector<double> inc(reps);
  for (int r = 0; r < reps; ++r) {
    const auto x = simulate_ou(cfg, 2, 2.0, derive_seed(7, r));
    CHECK(x[0] == 0.25);
    inc[r] = x[1] - x[0];
  }
  const double var_want = 3e-4 * 2.0;
  const double sd = sample_sd(inc);
  CHECK(std::abs(sd * sd - var_want) <
        4.0 * var_want * std::sqrt(2.0 / reps));
  CHECK(std::abs(mean(inc)) < 4.0 * std::sqrt(var_want / reps));
}

TEST_CASE("ou input validation") {
  CHECK_THROWS(simulate_ou(kBenchOu, 1, 1.0, 1));
  CHECK_THROWS(simulate_ou(kBenchOu, 100, -1.0, 1));
  CHECK_THROWS(simulate_ou(OuConfig{0.0, 0.5, 0.0, 0.0}, 100, 1.0, 1));
  CHECK_THROWS(simulate_ou(OuConfig{1e-4, -0.5, 0.0, 0.0}, 100, 1.0, 1));
}

TEST_CASE("sv path keeps variance nonnegative with benchmark parameters") {
  SvConfig cfg;  // defaults are the stochastic-volatility benchmark
  const auto path = simulate_sv(cfg, 23401, 1.0, 99);
  REQUIRE(path.x.size() == 23401);
  REQUIRE(path.variance.size() == 23401);
  for (double v : path.variance) CHECK(v >= 0.0);
  CHECK(path.x[0] == cfg.mu1);
  CHECK(path.variance[0] == cfg.sig2_0);
}

TEST_CASE("sv variance sits at its fixed point when vol-of-vol vanishes") {
  SvConfig cfg;
  cfg.gamma_vol = 1e-300;
  cfg.sig2_0 = cfg.mu2;
  const auto path = simulate_sv(cfg, 501, 1.0, 3);
  for (double v : path.variance) {
    CHECK(std::abs(v - cfg.mu2) < 1e-250);
  }
}

TEST_CASE("sv integrated variance is centered at mu2 when started there") {
  SvConfig cfg;
  const std::size_t n_obs = 2341;
  const int reps = 1000;
  std::vector<double> ivs(reps);
  for (int r = 0; r < reps; ++r) {
    const SimPath path =
        simulate_observed(cfg, Ar1NoiseConfig{0.0, 0.0, 0.0}, n_obs, 1.0,
                          derive_seed(11, r));
    ivs[r] = path.true_iv;
  }
  const double se = sample_sd(ivs) / std::sqrt(static_cast<double>(reps));
  CHECK(std::abs(mean(ivs) - cfg.mu2) < 3.0 * se);
}

TEST_CASE("sv validation rejects bad configs") {
  SvConfig bad;
  bad.rho_lev = -1.5;
  CHECK_THROWS(simulate_sv(bad, 100, 1.0, 1));
  SvConfig bad2;
  bad2.kappa = 0.0;
  CHECK_THROWS(simulate_sv(bad2, 100, 1.0, 1));
}

TEST_CASE("noise sample moments match the model") {
  const std::size_t n = 1000000;
  const auto u = simulate_noise(kBenchNoise, n, 2024);

  SUBCASE("variance within one percent") {
    const double var = sample_sd(u) * sample_sd(u);
    CHECK(std::abs(var - 7.2e-8) < 0.01 * 7.2e-8);
  }

  SUBCASE("autocovariances at small lags") {
    // Bartlett-style bound on the sampling error of an autocovariance.
    const double se = 2.0 * 7.2e-8 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(sample_autocov(u, 1) - (-3.01e-8)) < 3.0 * se);
    for (std::size_t j = 1; j <= 3; ++j) {
      const double want = model_gamma(kBenchNoise, j);
      CHECK(std::abs(sample_autocov(u, j) - want) < 4.0 * se);
    }
  }
}

TEST_CASE("noiseless config yields zeros and validation guards rho") {
  const auto u = simulate_noise(Ar1NoiseConfig{0.0, 0.0, 0.0}, 100, 5);
  for (double x : u) CHECK(x == 0.0);
  CHECK_THROWS(simulate_noise(Ar1NoiseConfig{1e-8, 1e-8, 1.0}, 10, 1));
  CHECK_THROWS(simulate_noise(Ar1NoiseConfig{-1e-8, 1e-8, 0.0}, 10, 1));
}

TEST_CASE("long-run noise variance closed form") {
  CHECK(model_sigma2_u(kBenchNoise) ==
        doctest::Approx(2.9e-8 + 4.3e-8 * 0.3 / 1.7).epsilon(1e-14));
  CHECK(model_sigma2_u(Ar1NoiseConfig{1e-8, 3e-8, 0.0}) ==
        doctest::Approx(4e-8).epsilon(1e-14));
  CHECK(model_sigma2_u(Ar1NoiseConfig{1.9e-7, 1.3e-7, 0.7}) ==
        doctest::Approx(1.9e-7 + 1.3e-7 * 1.7 / 0.3).epsilon(1e-14));
}

TEST_CASE("observed path composes price and noise deterministically") {
  const std::size_t n_obs = 2341;

  SUBCASE("zero noise returns the efficient path") {
    const SimPath p = simulate_observed(kBenchOu, Ar1NoiseConfig{0.0, 0.0, 0.0},
                                        n_obs, 1.0, 77);
    CHECK(p.series.log_prices == p.efficient);
    CHECK(p.true_iv == 6e-5);
    CHECK(p.true_sigma2_u == 0.0);
  }

  SUBCASE("same seed gives identical output") {
    const SimPath a =
        simulate_observed(kBenchOu, kBenchNoise, n_obs, 1.0, 4242);
    const SimPath b =
        simulate_observed(kBenchOu, kBenchNoise, n_obs, 1.0, 4242);
    CHECK(a.series.log_prices == b.series.log_prices);
    CHECK(a.series.timestamps == b.series.timestamps);
    CHECK(a.efficient == b.efficient);
    CHECK(a.true_iv == b.true_iv);
  }

  SUBCASE("noise and price streams are independent") {
    const SimPath base =
        simulate_observed(kBenchOu, kBenchNoise, n_obs, 1.0, 31);
    Ar1NoiseConfig other_noise = kBenchNoise;
    other_noise.var_v = 9e-8;
    const SimPath noise_changed =
        simulate_observed(kBenchOu, other_noise, n_obs, 1.0, 31);
    CHECK(base.efficient == noise_changed.efficient);
    CHECK(base.series.log_prices != noise_changed.series.log_prices);

    OuConfig other_price = kBenchOu;
    other_price.x0 = 2.5;
    const SimPath price_changed =
        simulate_observed(other_price, kBenchNoise, n_obs, 1.0, 31);
    for (std::size_t i = 0; i < n_obs; ++i) {
      const double u0 = base.series.log_prices[i] - base.efficient[i];
      const double u1 =
          price_changed.series.log_prices[i] - price_changed.efficient[i];
      CHECK(u0 == u1);
    }
  }
}

TEST_CASE("observed path on an irregular grid uses exact transitions") {
  const std::vector<double> times{0.0, 0.3, 0.45, 1.0};
  const SimPath p =
      simulate_observed_on_grid(kBenchOu, kBenchNoise, times, 13);
  CHECK(p.series.timestamps == times);
  // Efficient path must equal the chain of exact transitions fed by the
  // same derived stream.
  NormalStream rng(derive_seed(13, 1));
  double x = kBenchOu.x0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    x = ou_step(kBenchOu, x, times[i] - times[i - 1], rng.next());
    CHECK(p.efficient[i] == x);
  }
}

}  // TEST_SUITE
