#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ivnoise/noise_moments.hpp"
#include "ivnoise/preavg.hpp"
#include "ivnoise/tick_series.hpp"

namespace ivnoise {

/// Tuning shared by the estimation pipeline.
struct PipelineConfig {
  double c = 0.2;
  std::size_t j_n = 20;
  std::size_t i_n = 10;
  std::size_t max_lag = 10;  // autocovariance lags carried in reports
  double alpha = 0.05;
};

struct StepResult {
  int step = 0;  // 0 marks the raw-moment estimate
  NoiseMoments noise;
  IvEstimate iv;
};

struct PipelineReport {
  std::vector<StepResult> steps;             // steps 1..n_steps in order
  std::optional<StepResult> raw_corrected;   // populated on request
  PipelineConfig config;
  std::size_t n_steps = 0;
  std::vector<std::string> warnings;
};

/// Interlocked bias-correction pipeline.
///
/// Step 1 assumes independent noise: var_u = sigma2_u = rv(1), all
/// autocovariances zero, and the pre-averaging estimate subtracts that
/// long-run variance. Step k >= 2 re-estimates the noise moments with the
/// step-(k-1) integrated volatility as the finite-sample correction and
/// re-subtracts. Block statistics and raw lagged sums are computed once
/// and shared by all steps. With `with_raw_corrected`, the report also
/// carries the estimate built from uncorrected noise moments.
PipelineReport run_pipeline(const TickSeries& s, const PipelineConfig& cfg,
                            std::size_t n_steps,
                            bool with_raw_corrected = false);

/// The purely asymptotic estimator: noise moments without finite-sample
/// correction, then the pre-averaging estimate.
IvEstimate iv_raw_corrected(const TickSeries& s, const PipelineConfig& cfg);

}  // namespace ivnoise
