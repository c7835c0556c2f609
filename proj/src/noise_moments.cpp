#include "ivnoise/noise_moments.hpp"

#include <cmath>
#include <stdexcept>

#include "ivnoise/stats.hpp"

namespace ivnoise {

namespace {

double rv_kernel(const std::vector<double>& y, std::size_t j) {
  const std::size_t n = y.size() - 1;
  KahanSum sum;
  for (std::size_t i = 0; i + j <= n; ++i) {
    const double d = y[i + j] - y[i];
    sum.add(d * d);
  }
  return sum.value() / (2.0 * static_cast<double>(n - j + 1));
}

double adjustment(std::size_t n, std::size_t j, double iv_hat) {
  return iv_hat * static_cast<double>(j) /
         (2.0 * static_cast<double>(n - j + 1));
}

// Shared by estimate_noise_moments and sigma2_u_of so the stored value and
// the recomputation agree bit for bit.
double truncated_long_run_variance(double var_u,
                                   const std::vector<double>& gamma,
                                   std::size_t i_n) {
  double acc = 0.0;
  for (std::size_t j = 1; j <= i_n; ++j) acc += gamma[j - 1];
  return var_u + 2.0 * acc;
}

}  // namespace

double rv_lag(const TickSeries& s, std::size_t j) {
  if (s.size() < 2) throw std::invalid_argument("rv_lag: need 2 observations");
  const std::size_t n = s.n();
  if (j < 1 || j > n) throw std::invalid_argument("rv_lag: lag out of range");
  return rv_kernel(s.log_prices, j);
}

double rv_lag_adjusted(const TickSeries& s, std::size_t j, double iv_hat) {
  return rv_lag(s, j) - adjustment(s.n(), j, iv_hat);
}

RvCache::RvCache(const TickSeries& s, std::size_t j_n, std::size_t max_lag)
    : n_(s.n()), j_n_(j_n), max_lag_(max_lag) {
  if (s.size() < 2) throw std::invalid_argument("RvCache: need 2 observations");
  if (j_n < 1 || j_n >= n_) {
    throw std::invalid_argument("RvCache: require 1 <= j_n < n");
  }
  if (max_lag >= n_) throw std::invalid_argument("RvCache: max_lag >= n");
  const std::size_t top = std::max(max_lag, j_n);
  rv_.resize(top);
  for (std::size_t j = 1; j <= top; ++j) {
    rv_[j - 1] = rv_kernel(s.log_prices, j);
  }
}

double RvCache::rv(std::size_t j) const {
  if (j < 1 || j > rv_.size()) {
    throw std::invalid_argument("RvCache: lag not cached");
  }
  return rv_[j - 1];
}

double RvCache::rv_adjusted(std::size_t j, double iv_hat) const {
  return rv(j) - adjustment(n_, j, iv_hat);
}

NoiseMoments RvCache::moments(std::size_t i_n,
                              std::optional<double> iv_hat) const {
  if (i_n < 1 || i_n > j_n_) {
    throw std::invalid_argument("moments: require 1 <= i_n <= j_n");
  }
  if (max_lag_ < i_n) {
    throw std::invalid_argument("moments: require max_lag >= i_n");
  }
  const double iv = iv_hat.value_or(0.0);
  NoiseMoments nm;
  nm.j_n = j_n_;
  nm.i_n = i_n;
  nm.iv_used = iv_hat;
  nm.bias_corrected = iv_hat.has_value();
  nm.var_u = iv_hat ? rv_adjusted(j_n_, iv) : rv(j_n_);
  nm.gamma.resize(max_lag_);
  for (std::size_t j = 1; j <= max_lag_; ++j) {
    nm.gamma[j - 1] = nm.var_u - (iv_hat ? rv_adjusted(j, iv) : rv(j));
  }
  nm.sigma2_u = truncated_long_run_variance(nm.var_u, nm.gamma, i_n);
  nm.negative_var_u = nm.var_u < 0.0;
  nm.negative_sigma2_u = nm.sigma2_u < 0.0;
  return nm;
}

NoiseMoments estimate_noise_moments(const TickSeries& s, std::size_t j_n,
                                    std::size_t i_n, std::size_t max_lag,
                                    std::optional<double> iv_hat) {
  return RvCache(s, j_n, max_lag).moments(i_n, iv_hat);
}

double sigma2_u_of(const NoiseMoments& nm) {
  if (nm.gamma.size() < nm.i_n) {
    throw std::invalid_argument("sigma2_u_of: gamma shorter than i_n");
  }
  return truncated_long_run_variance(nm.var_u, nm.gamma, nm.i_n);
}

double fit_ar1_acf(const NoiseMoments& nm, std::size_t max_fit_lag) {
  if (!(nm.var_u > 0.0)) {
    throw std::invalid_argument("fit_ar1_acf: var_u must be positive");
  }
  if (max_fit_lag < 1 || max_fit_lag > nm.max_lag()) {
    throw std::invalid_argument("fit_ar1_acf: max_fit_lag out of range");
  }
  std::vector<double> acf(max_fit_lag);
  for (std::size_t j = 1; j <= max_fit_lag; ++j) acf[j - 1] = nm.acf_at(j);

  const auto objective = [&](double rho) {
    double s = 0.0;
    double p = 1.0;
    for (std::size_t j = 1; j <= max_fit_lag; ++j) {
      p *= rho;
      const double d = acf[j - 1] - p;
      s += d * d;
    }
    return s;
  };

  constexpr double lo = -0.999, hi = 0.999;
  // Coarse scan guards against the local minima an alternating acf creates,
  // then golden-section refinement.
  double best = 0.0, best_val = objective(0.0);
  constexpr int kGrid = 1999;
  for (int g = 0; g <= kGrid; ++g) {
    const double rho = lo + (hi - lo) * g / kGrid;
    const double val = objective(rho);
    if (val < best_val) {
      best_val = val;
      best = rho;
    }
  }
  const double step = (hi - lo) / kGrid;
  double a = std::max(lo, best - step), b = std::min(hi, best + step);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  while (b - a > 1e-7) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = objective(x2);
    }
  }
  return 0.5 * (a + b);
}

double order_continuation_probability(double rho) { return (1.0 + rho) / 2.0; }

LogAcfFit log_acf_regression(const NoiseMoments& nm, std::size_t max_fit_lag) {
  if (!(nm.var_u > 0.0)) {
    throw std::invalid_argument("log_acf_regression: var_u must be positive");
  }
  if (max_fit_lag < 1 || max_fit_lag > nm.max_lag()) {
    throw std::invalid_argument("log_acf_regression: max_fit_lag out of range");
  }
  std::vector<double> xs, ys;
  LogAcfFit fit;
  for (std::size_t j = 1; j <= max_fit_lag; ++j) {
    const double a = nm.acf_at(j);
    if (a > 0.0) {
      xs.push_back(static_cast<double>(j));
      ys.push_back(std::log(a));
      fit.used_lags.push_back(j);
    }
  }
  if (xs.size() < 2) {
    throw std::invalid_argument(
        "log_acf_regression: fewer than 2 lags with positive acf");
  }
  const OlsFit ols = ols_fit(xs, ys);
  fit.slope = ols.slope;
  fit.intercept = ols.intercept;
  fit.r_squared = ols.r_squared;
  return fit;
}

}  // namespace ivnoise
