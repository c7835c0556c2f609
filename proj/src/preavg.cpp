#include "ivnoise/preavg.hpp"

#include <cmath>
#include <stdexcept>

#include "ivnoise/stats.hpp"

namespace ivnoise {

PavGeometry pav_geometry(std::size_t n_obs, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("pav_geometry: c must be > 0");
  if (n_obs < 2) {
    throw std::invalid_argument("pav_geometry: need at least 2 observations");
  }
  PavGeometry g;
  g.c = c;
  g.n = n_obs - 1;
  g.k_n = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::floor(c * std::sqrt(static_cast<double>(g.n)))));
  g.m_n = g.n / (2 * g.k_n);
  if (g.m_n == 0) {
    throw std::invalid_argument("pav_geometry: series too short for c");
  }
  return g;
}

namespace {

double block_kernel(const std::vector<double>& y, std::size_t k,
                    std::size_t m) {
  const std::size_t a = (2 * m - 2) * k;
  KahanSum sum;
  for (std::size_t i = a; i < a + k; ++i) {
    sum.add(y[i + k] - y[i]);
  }
  return sum.value() / static_cast<double>(k);
}

}  // namespace

double block_preaverage(const TickSeries& s, const PavGeometry& g,
                        std::size_t m) {
  if (m < 1 || m > g.m_n) {
    throw std::invalid_argument("block_preaverage: block index out of range");
  }
  if (s.n() != g.n) {
    throw std::invalid_argument("block_preaverage: geometry/series mismatch");
  }
  return block_kernel(s.log_prices, g.k_n, m);
}

PavStats compute_pav_stats(const TickSeries& s, double c, bool keep_blocks) {
  PavStats stats;
  stats.geometry = pav_geometry(s.size(), c);
  const std::size_t k = stats.geometry.k_n;
  KahanSum p2, p4;
  if (keep_blocks) stats.block_means.reserve(stats.geometry.m_n);
  for (std::size_t m = 1; m <= stats.geometry.m_n; ++m) {
    const double v = block_kernel(s.log_prices, k, m);
    p2.add(v * v);
    p4.add(v * v * v * v);
    if (keep_blocks) stats.block_means.push_back(v);
  }
  stats.pav2 = p2.value();
  stats.pav4 = std::sqrt(static_cast<double>(stats.geometry.n)) * p4.value();
  return stats;
}

double pav_stat(const TickSeries& s, double c, int r) {
  if (r != 2 && r != 4) {
    throw std::invalid_argument("pav_stat: r must be 2 or 4");
  }
  const PavStats stats = compute_pav_stats(s, c);
  return r == 2 ? stats.pav2 : stats.pav4;
}

IvEstimate iv_estimate_from(const PavStats& pav, double sigma2_u_hat,
                            double alpha, int step) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("iv_estimate: alpha must be in (0,1)");
  }
  IvEstimate est;
  est.step = step;
  est.n = pav.geometry.n;
  est.alpha = alpha;
  est.sigma2_u_used = sigma2_u_hat;
  est.negative_sigma2_u = sigma2_u_hat < 0.0;
  const double c = pav.geometry.c;
  est.iv = 3.0 * (pav.pav2 - sigma2_u_hat / (c * c));
  est.tau = std::sqrt(6.0 * pav.pav4);
  const double half = normal_quantile_two_sided(alpha) * est.tau /
                      std::pow(static_cast<double>(est.n), 0.25);
  est.ci_low = est.iv - half;
  est.ci_high = est.iv + half;
  return est;
}

IvEstimate iv_estimate(const TickSeries& s, double c, double sigma2_u_hat,
                       double alpha) {
  return iv_estimate_from(compute_pav_stats(s, c), sigma2_u_hat, alpha, 0);
}

double optimal_c(double sigma2_u, double iv) {
  if (!(iv > 0.0)) throw std::invalid_argument("optimal_c: iv must be > 0");
  if (sigma2_u < 0.0) {
    throw std::invalid_argument("optimal_c: sigma2_u must be >= 0");
  }
  return 3.0 * std::sqrt(sigma2_u / iv);
}

double normalized_stat(const IvEstimate& est, double true_iv) {
  if (!(est.tau > 0.0)) {
    throw std::invalid_argument("normalized_stat: tau must be positive");
  }
  return std::pow(static_cast<double>(est.n), 0.25) * (est.iv - true_iv) /
         est.tau;
}

}  // namespace ivnoise
