#include <doctest.h>

#include <cmath>
#include <vector>

#include "ivnoise/mc.hpp"
#include "ivnoise/rng.hpp"
#include "ivnoise/stats.hpp"

using namespace ivnoise;

namespace {

const OuConfig kBenchOu{6e-5, 0.5, 1.6, 1.6};
const Ar1NoiseConfig kBenchNoise{2.9e-8, 4.3e-8, -0.7};

McConfig small_config(std::size_t n_obs = 1201, std::size_t reps = 16) {
  McConfig cfg;
  cfg.design.price = kBenchOu;
  cfg.design.noise = kBenchNoise;
  cfg.n_obs = n_obs;
  cfg.n_reps = reps;
  cfg.base_seed = 9001;
  cfg.pipeline.j_n = 20;
  cfg.pipeline.i_n = 10;
  cfg.pipeline.max_lag = 10;
  cfg.n_steps = 3;
  cfg.workers = 2;
  return cfg;
}

}  // namespace

TEST_SUITE("mc") {

TEST_CASE("single replication reproduces the path estimates with zero sd") {
  McConfig cfg = small_config(2341, 1);
  const McReport rep = run_mc(cfg);

  const SimPath p = simulate_observed(cfg.design.price, cfg.design.noise,
                                      cfg.n_obs, cfg.horizon,
                                      derive_seed(cfg.base_seed, 0));
  const PipelineReport pipe = run_pipeline(p.series, cfg.pipeline, 3, true);
  CHECK(rep.iv.at("step1").mean == pipe.steps[0].iv.iv);
  CHECK(rep.iv.at("step2").mean == pipe.steps[1].iv.iv);
  CHECK(rep.iv.at("step3").mean == pipe.steps[2].iv.iv);
  CHECK(rep.iv.at("raw").mean == pipe.raw_corrected->iv.iv);
  for (const auto& name : rep.estimators) {
    CHECK(rep.iv.at(name).sd == 0.0);
  }
  CHECK(rep.true_iv_paths == std::vector<double>{p.true_iv});
  CHECK(rep.n_paths_ok == 1);
}

TEST_CASE("parallel and serial execution agree exactly") {
  McConfig serial = small_config();
  serial.workers = 1;
  McConfig parallel = small_config();
  parallel.workers = 3;
  const McReport a = run_mc(serial);
  const McReport b = run_mc(parallel);
  REQUIRE(a.estimators == b.estimators);
  for (const auto& name : a.estimators) {
    CHECK(a.iv_paths.at(name) == b.iv_paths.at(name));
    CHECK(a.iv.at(name).mean == b.iv.at(name).mean);
    CHECK(a.iv.at(name).sd == b.iv.at(name).sd);
    CHECK(a.normalized.at(name) == b.normalized.at(name));
    CHECK(a.ci_coverage.at(name) == b.ci_coverage.at(name));
  }
  CHECK(a.true_iv_paths == b.true_iv_paths);
  CHECK(a.tau_paths == b.tau_paths);
}

TEST_CASE("report statistics use the sample definitions") {
  McConfig cfg = small_config(1201, 3);
  const McReport rep = run_mc(cfg);
  for (const auto& name : rep.estimators) {
    const auto& paths = rep.iv_paths.at(name);
    REQUIRE(paths.size() == 3);
    CHECK(rep.iv.at(name).mean == doctest::Approx(mean(paths)).epsilon(1e-14));
    CHECK(rep.iv.at(name).sd ==
          doctest::Approx(sample_sd(paths)).epsilon(1e-12));
  }
}

TEST_CASE("every path failing raises an error") {
  McConfig cfg = small_config(30, 4);  // j_n = 20 cannot fit 29 increments
  CHECK_THROWS(run_mc(cfg));
}

TEST_CASE("rv curve: unadjusted values follow the diffusion bias line") {
  McConfig cfg = small_config(23401, 150);
  cfg.design.noise = Ar1NoiseConfig{0.0, 0.0, 0.0};
  const auto rows = rv_curve(cfg, 30, {6e-5});
  const std::size_t n = cfg.n_obs - 1;
  for (const auto& row : rows) {
    if (row.variant == "rv") {
      const double want = static_cast<double>(row.lag) * 6e-5 /
                          (2.0 * static_cast<double>(n - row.lag + 1));
      CHECK(std::abs(row.value - want) < 0.12 * want + 2e-10);
    } else if (row.variant == "model") {
      CHECK(row.value == 0.0);  // no noise
    }
  }
}

TEST_CASE("rv curve: true-volatility adjustment tracks the model line") {
  McConfig cfg = small_config(23401, 200);
  const auto rows = rv_curve(cfg, 29, {0.8 * 6e-5, 6e-5, 1.2 * 6e-5});
  const double var_u = 7.2e-8;
  std::vector<double> model(30, 0.0);
  for (const auto& row : rows) {
    if (row.variant == "model") model[row.lag] = row.value;
  }
  for (const auto& row : rows) {
    if (row.variant == "adj@6e-05") {
      CHECK(std::abs(row.value - model[row.lag]) < 0.05 * var_u);
    }
  }
  // Model line is the noise variance minus the lag autocovariance.
  CHECK(model[1] ==
        doctest::Approx(7.2e-8 - model_gamma(kBenchNoise, 1)).epsilon(1e-12));
}

TEST_CASE("qq data against injected standard normal draws") {
  NormalStream rng(2718);
  std::vector<double> xs(1000);
  for (auto& x : xs) x = rng.next();
  const QqData q = qq_data_from_samples(xs);
  REQUIRE(q.sample_q.size() == 1000);
  CHECK(q.ks_defined);
  const OlsFit fit = ols_fit(q.normal_q, q.sample_q);
  CHECK(std::abs(fit.slope - 1.0) < 0.02);

  const QqData single = qq_data_from_samples({0.3});
  CHECK(single.sample_q.size() == 1);
  CHECK_FALSE(single.ks_defined);

  CHECK_THROWS(qq_data_from_samples({}));
}

TEST_CASE("acf bands with two replications collapse to min and max") {
  McConfig cfg = small_config(1201, 2);
  const auto rows = acf_band_report(cfg, AcfEstimator::rv);
  REQUIRE(rows.size() == cfg.pipeline.max_lag);
  for (const auto& row : rows) {
    CHECK(row.lo <= row.hi);
    CHECK(row.lo <= row.mean);
    CHECK(row.mean <= row.hi);
    CHECK(row.mean ==
          doctest::Approx(0.5 * (row.lo + row.hi)).epsilon(1e-12));
  }
}

TEST_CASE("corrected bands cover the true autocorrelation") {
  for (double rho : {-0.7, 0.7}) {
    McConfig cfg = small_config(23401, 300);
    cfg.design.noise = Ar1NoiseConfig{2.9e-8, 4.3e-8, rho};
    cfg.base_seed = 313;
    const auto rows = acf_band_report(cfg, AcfEstimator::bcrv);
    for (const auto& row : rows) {
      CHECK(row.lo <= row.true_acf);
      CHECK(row.true_acf <= row.hi);
    }
  }
}

TEST_CASE("zero-noise bands sit on the deterministic bias values") {
  McConfig cfg = small_config(23401, 200);
  cfg.design.noise = Ar1NoiseConfig{0.0, 0.0, 0.0};
  const auto rows = acf_band_report(cfg, AcfEstimator::rv);
  for (const auto& row : rows) {
    // var_u and gamma are both dominated by the diffusion term, so the
    // acf concentrates near 1 - j/j_n rather than the true zero.
    const double biased =
        1.0 - static_cast<double>(row.lag) / static_cast<double>(cfg.pipeline.j_n);
    CHECK(std::abs(row.mean - biased) < 0.1);
    if (row.lag <= 5) {
      CHECK(row.lo > 0.0);  // band excludes the true value of zero
    }
  }
}

TEST_CASE("reports are reproducible across runs") {
  const McConfig cfg = small_config();
  const McReport a = run_mc(cfg);
  const McReport b = run_mc(cfg);
  for (const auto& name : a.estimators) {
    CHECK(a.iv_paths.at(name) == b.iv_paths.at(name));
  }
}

}  // TEST_SUITE
