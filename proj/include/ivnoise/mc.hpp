#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ivnoise/multistep.hpp"
#include "ivnoise/sim.hpp"

namespace ivnoise {

struct McDesign {
  PriceModel price;
  Ar1NoiseConfig noise;
};

struct McConfig {
  McDesign design;
  std::size_t n_obs = 23401;
  double horizon = 1.0;
  std::size_t n_reps = 1000;
  std::uint64_t base_seed = 1;
  PipelineConfig pipeline;
  std::size_t n_steps = 3;
  std::size_t workers = 0;  // 0 = hardware concurrency
  std::vector<std::string> outputs;  // tables | qq | acf_bands | rv_curve
};

struct EstimatorStats {
  double mean = 0.0;
  double sd = 0.0;
};

/// Aggregated Monte Carlo results. Estimator keys are "step1", "step2",
/// ..., plus "raw" for the uncorrected-moment route. Per-path vectors are
/// ordered by replication index, so the report is a pure function of the
/// configuration regardless of worker count.
struct McReport {
  std::vector<std::string> estimators;
  std::map<std::string, EstimatorStats> iv;
  std::map<std::string, std::vector<double>> iv_paths;
  std::map<std::string, std::vector<double>> normalized;  // CLT statistics
  std::map<std::string, double> ci_coverage;  // share of CIs covering truth
  std::map<std::string, EstimatorStats> var_u;
  std::map<std::string, EstimatorStats> sigma2_u;
  std::vector<double> true_iv_paths;
  std::vector<double> tau_paths;
  std::size_t n_paths_ok = 0;
  std::vector<std::size_t> failed_paths;
  std::vector<std::string> failure_messages;
  double elapsed_seconds = 0.0;
};

/// Runs n_reps replications of the design through the pipeline.
/// Replication r is seeded with derive_seed(base_seed, r); failed paths
/// are recorded and excluded from the moments.
McReport run_mc(const McConfig& cfg);

struct RvCurveRow {
  std::size_t lag = 0;
  std::string variant;  // "rv", "adj@<iv>", "model"
  double value = 0.0;
};

/// Monte Carlo means of the lagged realized volatility and its
/// bias-adjusted versions under each supplied integrated-volatility
/// input, next to the model line Var(U) - gamma(j).
std::vector<RvCurveRow> rv_curve(const McConfig& cfg, std::size_t max_lag,
                                 const std::vector<double>& iv_variants);

struct QqData {
  std::vector<double> sample_q;  // sorted sample quantiles
  std::vector<double> normal_q;  // N(0,1) quantiles at (i-0.5)/N
  double ks = 0.0;
  bool ks_defined = false;       // false for a single sample
};

QqData qq_data_from_samples(std::vector<double> samples);

/// QQ pairs for one estimator's normalized statistics in a report.
QqData qq_data(const McReport& report, const std::string& estimator);

enum class AcfEstimator { rv, bcrv };

struct AcfBandRow {
  std::size_t lag = 0;
  double mean = 0.0;
  double lo = 0.0;   // empirical 2.5% quantile across replications
  double hi = 0.0;   // empirical 97.5% quantile
  double true_acf = 0.0;
};

/// Per-lag mean and 95% band of the estimated noise autocorrelation
/// across replications, with (bcrv) or without (rv) the finite-sample
/// correction.
std::vector<AcfBandRow> acf_band_report(const McConfig& cfg,
                                        AcfEstimator estimator);

namespace detail {
/// Runs body(r) for r in [0, n_reps) on up to `workers` threads. Results
/// must be written to per-replication slots to stay deterministic.
void parallel_for_reps(std::size_t n_reps, std::size_t workers,
                       const std::function<void(std::size_t)>& body);
}  // namespace detail

}  // namespace ivnoise
