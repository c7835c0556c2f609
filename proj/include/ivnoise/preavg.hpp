#pragma once

#include <cstddef>
#include <vector>

#include "ivnoise/tick_series.hpp"

namespace ivnoise {

/// Non-overlapping block layout for pre-averaging.
///
/// k_n = max(1, floor(c sqrt(n))) and m_n = floor(n / (2 k_n)), which
/// guarantees the last block's maximal index stays within the sample.
struct PavGeometry {
  double c = 0.2;
  std::size_t k_n = 0;
  std::size_t m_n = 0;
  std::size_t n = 0;  // largest observation index
};

/// Throws when the series is too short to fit a single block.
PavGeometry pav_geometry(std::size_t n_obs, double c);

/// Block pre-average: the mean of the k_n spanning increments
///   (1/k_n) sum_{i=(2m-2)k_n}^{(2m-1)k_n - 1} (Y_{i+k_n} - Y_i),
/// for block index 1 <= m <= m_n. Block m reads only indices in
/// [(2m-2)k_n, 2m k_n - 1], so consecutive blocks are disjoint.
double block_preaverage(const TickSeries& s, const PavGeometry& g,
                        std::size_t m);

/// Pre-averaged power statistics of the observed log price.
struct PavStats {
  PavGeometry geometry;
  double pav2 = 0.0;  // sum of squared block pre-averages
  double pav4 = 0.0;  // sqrt(n)-scaled sum of fourth powers
  std::vector<double> block_means;  // populated on request
};

PavStats compute_pav_stats(const TickSeries& s, double c,
                           bool keep_blocks = false);

/// n^{(r-2)/4} sum_m |block pre-average|^r for r in {2, 4}.
double pav_stat(const TickSeries& s, double c, int r);

/// Integrated-volatility estimate with its asymptotic scale and a
/// normal confidence interval.
struct IvEstimate {
  double iv = 0.0;
  double tau = 0.0;             // sqrt(6 * pav4)
  double ci_low = 0.0;
  double ci_high = 0.0;
  double sigma2_u_used = 0.0;   // long-run noise variance subtracted
  double alpha = 0.05;
  int step = 0;                 // 0 = raw-moment route, k = pipeline step k
  std::size_t n = 0;
  bool negative_sigma2_u = false;  // flagged, input used as-is
};

/// iv = 3 (pav2 - sigma2_u_hat / c^2); the confidence interval is
/// iv -+ z_{1-alpha/2} tau / n^{1/4}. Negative sigma2_u_hat inputs are
/// accepted and flagged rather than truncated.
IvEstimate iv_estimate(const TickSeries& s, double c, double sigma2_u_hat,
                       double alpha = 0.05);

/// Same estimate from precomputed block statistics (the pipeline shares
/// one PavStats across steps).
IvEstimate iv_estimate_from(const PavStats& pav, double sigma2_u_hat,
                            double alpha, int step);

/// Asymptotic-variance-minimizing window constant 3 sqrt(sigma2_u / iv).
double optimal_c(double sigma2_u, double iv);

/// n^{1/4} (iv - true_iv) / tau, the statistic whose limit is standard
/// normal; used for QQ data. Requires tau > 0.
double normalized_stat(const IvEstimate& est, double true_iv);

}  // namespace ivnoise
