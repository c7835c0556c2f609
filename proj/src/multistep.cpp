#include "ivnoise/multistep.hpp"

#include <stdexcept>

namespace ivnoise {

namespace {

void collect_warnings(const StepResult& r, std::vector<std::string>* out) {
  const std::string tag =
      r.step == 0 ? std::string("raw") : "step" + std::to_string(r.step);
  if (r.noise.negative_var_u) out->push_back(tag + ": negative var_u");
  if (r.noise.negative_sigma2_u) out->push_back(tag + ": negative sigma2_u");
}

NoiseMoments step1_moments(const RvCache& cache, const PipelineConfig& cfg) {
  NoiseMoments nm;
  nm.var_u = cache.rv(1);
  nm.gamma.assign(cfg.max_lag, 0.0);
  nm.sigma2_u = nm.var_u;
  nm.j_n = 1;  // the variance estimate is the lag-1 realized volatility
  nm.i_n = cfg.i_n;
  nm.bias_corrected = false;
  nm.negative_var_u = nm.var_u < 0.0;
  nm.negative_sigma2_u = nm.sigma2_u < 0.0;
  return nm;
}

}  // namespace

PipelineReport run_pipeline(const TickSeries& s, const PipelineConfig& cfg,
                            std::size_t n_steps, bool with_raw_corrected) {
  if (n_steps < 1) {
    throw std::invalid_argument("run_pipeline: n_steps must be >= 1");
  }
  PipelineReport report;
  report.config = cfg;
  report.n_steps = n_steps;

  // The block statistics do not depend on the noise moments, so one
  // evaluation serves every step; same for the raw lagged sums.
  const PavStats pav = compute_pav_stats(s, cfg.c);
  const RvCache cache(s, cfg.j_n, cfg.max_lag);

  StepResult step1;
  step1.step = 1;
  step1.noise = step1_moments(cache, cfg);
  step1.iv = iv_estimate_from(pav, step1.noise.sigma2_u, cfg.alpha, 1);
  collect_warnings(step1, &report.warnings);
  report.steps.push_back(std::move(step1));

  for (std::size_t k = 2; k <= n_steps; ++k) {
    StepResult step;
    step.step = static_cast<int>(k);
    step.noise = cache.moments(cfg.i_n, report.steps.back().iv.iv);
    step.iv = iv_estimate_from(pav, step.noise.sigma2_u, cfg.alpha,
                               static_cast<int>(k));
    collect_warnings(step, &report.warnings);
    report.steps.push_back(std::move(step));
  }

  if (with_raw_corrected) {
    StepResult raw;
    raw.step = 0;
    raw.noise = cache.moments(cfg.i_n, std::nullopt);
    raw.iv = iv_estimate_from(pav, raw.noise.sigma2_u, cfg.alpha, 0);
    collect_warnings(raw, &report.warnings);
    report.raw_corrected = std::move(raw);
  }
  return report;
}

IvEstimate iv_raw_corrected(const TickSeries& s, const PipelineConfig& cfg) {
  const NoiseMoments nm =
      estimate_noise_moments(s, cfg.j_n, cfg.i_n, cfg.max_lag);
  return iv_estimate_from(compute_pav_stats(s, cfg.c), nm.sigma2_u, cfg.alpha,
                          0);
}

}  // namespace ivnoise
