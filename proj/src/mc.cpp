#include "ivnoise/mc.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "ivnoise/rng.hpp"
#include "ivnoise/stats.hpp"

namespace ivnoise {

namespace detail {

void parallel_for_reps(std::size_t n_reps, std::size_t workers,
                       const std::function<void(std::size_t)>& body) {
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = std::min(workers, n_reps);
  if (workers <= 1) {
    for (std::size_t r = 0; r < n_reps; ++r) body(r);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t r = next.fetch_add(1);
        if (r >= n_reps) break;
        body(r);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

namespace {

struct PathOutcome {
  bool ok = false;
  std::string error;
  double true_iv = 0.0;
  double tau = 0.0;
  std::vector<double> iv;        // one per estimator
  std::vector<double> var_u;
  std::vector<double> sigma2_u;
  std::vector<double> ci_low;
  std::vector<double> ci_high;
};

std::vector<std::string> estimator_names(std::size_t n_steps) {
  std::vector<std::string> names;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    names.push_back("step" + std::to_string(k));
  }
  names.emplace_back("raw");
  return names;
}

EstimatorStats summarize(const std::vector<double>& xs) {
  EstimatorStats s;
  s.mean = mean(xs);
  s.sd = sample_sd(xs);
  return s;
}

}  // namespace

McReport run_mc(const McConfig& cfg) {
  if (cfg.n_reps < 1) {
    throw std::invalid_argument("run_mc: n_reps must be >= 1");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto names = estimator_names(cfg.n_steps);
  const std::size_t n_est = names.size();

  std::vector<PathOutcome> outcomes(cfg.n_reps);
  detail::parallel_for_reps(cfg.n_reps, cfg.workers, [&](std::size_t r) {
    PathOutcome& out = outcomes[r];
    try {
      const SimPath path =
          simulate_observed(cfg.design.price, cfg.design.noise, cfg.n_obs,
                            cfg.horizon, derive_seed(cfg.base_seed, r));
      const PipelineReport rep =
          run_pipeline(path.series, cfg.pipeline, cfg.n_steps, true);
      out.true_iv = path.true_iv;
      out.iv.reserve(n_est);
      for (const auto& step : rep.steps) {
        out.iv.push_back(step.iv.iv);
        out.var_u.push_back(step.noise.var_u);
        out.sigma2_u.push_back(step.noise.sigma2_u);
        out.ci_low.push_back(step.iv.ci_low);
        out.ci_high.push_back(step.iv.ci_high);
      }
      const StepResult& raw = *rep.raw_corrected;
      out.iv.push_back(raw.iv.iv);
      out.var_u.push_back(raw.noise.var_u);
      out.sigma2_u.push_back(raw.noise.sigma2_u);
      out.ci_low.push_back(raw.iv.ci_low);
      out.ci_high.push_back(raw.iv.ci_high);
      out.tau = rep.steps.front().iv.tau;  // shared across estimators
      out.ok = true;
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
    }
  });

  McReport report;
  report.estimators = names;
  for (std::size_t r = 0; r < cfg.n_reps; ++r) {
    if (!outcomes[r].ok) {
      report.failed_paths.push_back(r);
      report.failure_messages.push_back(outcomes[r].error);
    }
  }
  const std::size_t ok = cfg.n_reps - report.failed_paths.size();
  report.n_paths_ok = ok;
  if (ok == 0) {
    throw std::runtime_error("run_mc: every path failed: " +
                             (report.failure_messages.empty()
                                  ? std::string("unknown")
                                  : report.failure_messages.front()));
  }

  report.true_iv_paths.reserve(ok);
  report.tau_paths.reserve(ok);
  for (const auto& o : outcomes) {
    if (!o.ok) continue;
    report.true_iv_paths.push_back(o.true_iv);
    report.tau_paths.push_back(o.tau);
  }
  const double qn =
      std::pow(static_cast<double>(cfg.n_obs - 1), 0.25);
  for (std::size_t e = 0; e < n_est; ++e) {
    std::vector<double> ivs, vus, s2us, norm;
    ivs.reserve(ok);
    std::size_t covered = 0;
    for (const auto& o : outcomes) {
      if (!o.ok) continue;
      ivs.push_back(o.iv[e]);
      vus.push_back(o.var_u[e]);
      s2us.push_back(o.sigma2_u[e]);
      if (o.tau > 0.0) {
        norm.push_back(qn * (o.iv[e] - o.true_iv) / o.tau);
      }
      if (o.ci_low[e] <= o.true_iv && o.true_iv <= o.ci_high[e]) ++covered;
    }
    report.iv[names[e]] = summarize(ivs);
    report.var_u[names[e]] = summarize(vus);
    report.sigma2_u[names[e]] = summarize(s2us);
    report.iv_paths[names[e]] = std::move(ivs);
    report.normalized[names[e]] = std::move(norm);
    report.ci_coverage[names[e]] =
        static_cast<double>(covered) / static_cast<double>(ok);
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

std::vector<RvCurveRow> rv_curve(const McConfig& cfg, std::size_t max_lag,
                                 const std::vector<double>& iv_variants) {
  if (max_lag + 1 > cfg.n_obs) {
    throw std::invalid_argument("rv_curve: max_lag out of range");
  }
  const std::size_t n_reps = cfg.n_reps;
  // Per replication: raw rv at each lag; adjusted values are derived.
  std::vector<std::vector<double>> rv(n_reps);
  detail::parallel_for_reps(n_reps, cfg.workers, [&](std::size_t r) {
    const SimPath path =
        simulate_observed(cfg.design.price, cfg.design.noise, cfg.n_obs,
                          cfg.horizon, derive_seed(cfg.base_seed, r));
    rv[r].resize(max_lag);
    for (std::size_t j = 1; j <= max_lag; ++j) {
      rv[r][j - 1] = rv_lag(path.series, j);
    }
  });

  const std::size_t n = cfg.n_obs - 1;
  std::vector<RvCurveRow> rows;
  for (std::size_t j = 1; j <= max_lag; ++j) {
    std::vector<double> vals(n_reps);
    for (std::size_t r = 0; r < n_reps; ++r) vals[r] = rv[r][j - 1];
    const double m = mean(vals);
    rows.push_back({j, "rv", m});
    for (double iv : iv_variants) {
      const double adj = iv * static_cast<double>(j) /
                         (2.0 * static_cast<double>(n - j + 1));
      char buf[64];
      std::snprintf(buf, sizeof(buf), "adj@%.6g", iv);
      rows.push_back({j, buf, m - adj});
    }
    rows.push_back({j, "model",
                    model_gamma(cfg.design.noise, 0) -
                        model_gamma(cfg.design.noise, j)});
  }
  return rows;
}

QqData qq_data_from_samples(std::vector<double> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("qq_data: empty sample set");
  }
  QqData q;
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  q.normal_q.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    q.normal_q[i] = inverse_normal_cdf((static_cast<double>(i) + 0.5) / n);
  }
  q.ks_defined = samples.size() > 1;
  if (q.ks_defined) q.ks = ks_statistic_normal(samples);
  q.sample_q = std::move(samples);
  return q;
}

QqData qq_data(const McReport& report, const std::string& estimator) {
  const auto it = report.normalized.find(estimator);
  if (it == report.normalized.end()) {
    throw std::invalid_argument("qq_data: unknown estimator " + estimator);
  }
  return qq_data_from_samples(it->second);
}

std::vector<AcfBandRow> acf_band_report(const McConfig& cfg,
                                        AcfEstimator estimator) {
  const std::size_t max_lag = cfg.pipeline.max_lag;
  std::vector<std::vector<double>> acf(cfg.n_reps);
  detail::parallel_for_reps(cfg.n_reps, cfg.workers, [&](std::size_t r) {
    const SimPath path =
        simulate_observed(cfg.design.price, cfg.design.noise, cfg.n_obs,
                          cfg.horizon, derive_seed(cfg.base_seed, r));
    NoiseMoments nm;
    if (estimator == AcfEstimator::bcrv) {
      // Finite-sample corrected with the step-1 integrated volatility.
      const PipelineReport rep = run_pipeline(path.series, cfg.pipeline, 2);
      nm = rep.steps.back().noise;
    } else {
      nm = estimate_noise_moments(path.series, cfg.pipeline.j_n,
                                  cfg.pipeline.i_n, max_lag);
    }
    acf[r].resize(max_lag);
    for (std::size_t j = 1; j <= max_lag; ++j) acf[r][j - 1] = nm.acf_at(j);
  });

  const double g0 = model_gamma(cfg.design.noise, 0);
  std::vector<AcfBandRow> rows(max_lag);
  for (std::size_t j = 1; j <= max_lag; ++j) {
    std::vector<double> vals(cfg.n_reps);
    for (std::size_t r = 0; r < cfg.n_reps; ++r) vals[r] = acf[r][j - 1];
    AcfBandRow& row = rows[j - 1];
    row.lag = j;
    row.mean = mean(vals);
    row.lo = empirical_quantile(vals, 0.025);
    row.hi = empirical_quantile(vals, 0.975);
    row.true_acf = model_gamma(cfg.design.noise, j) / g0;
  }
  return rows;
}

}  // namespace ivnoise
