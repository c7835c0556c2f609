#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ivnoise {

/// Compensated (Kahan) accumulator. Values of order 1e-8 summed over
/// hundreds of thousands of terms lose digits under naive summation.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse standard normal CDF on (0,1). Rational approximation
/// (Acklam's coefficient table) refined by one Halley step; absolute
/// error is far below the 1e-9 required for quantile work.
double inverse_normal_cdf(double p);

/// Two-sided normal critical value z_{1-alpha/2}.
double normal_quantile_two_sided(double alpha);

double mean(std::span<const double> xs);

/// Sample standard deviation with the (n-1) denominator.
double sample_sd(std::span<const double> xs);

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of y on x. Requires at least two points.
OlsFit ols_fit(std::span<const double> x, std::span<const double> y);

/// Kolmogorov-Smirnov statistic of the sample against N(0,1).
double ks_statistic_normal(std::vector<double> samples);

/// Asymptotic KS critical value at level alpha for sample size n
/// (c(alpha)/sqrt(n) with c(0.01)=1.62762, c(0.05)=1.35810).
double ks_critical_value(double alpha, std::size_t n);

/// Lower empirical quantile: the order statistic of rank
/// max(1, ceil(p*n)) of the sorted sample. For n=2 this maps
/// p<=0.5 to the minimum and p>0.5 to the maximum.
double empirical_quantile(std::vector<double> samples, double p);

}  // namespace ivnoise
