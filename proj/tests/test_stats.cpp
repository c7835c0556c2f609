#include <doctest.h>

#include <cmath>
#include <vector>

#include "ivnoise/rng.hpp"
#include "ivnoise/stats.hpp"

using namespace ivnoise;

TEST_SUITE("stats") {

TEST_CASE("inverse normal cdf hits reference quantiles") {
  CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(inverse_normal_cdf(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-11));
  CHECK(inverse_normal_cdf(0.995) ==
        doctest::Approx(2.575829303548901).epsilon(1e-11));
  CHECK(inverse_normal_cdf(0.0013498980316300945) ==
        doctest::Approx(-3.0).epsilon(1e-11));
  for (double p = 1e-8; p < 1.0; p += 0.0097) {
    CHECK(normal_cdf(inverse_normal_cdf(p)) ==
          doctest::Approx(p).epsilon(1e-12));
  }
  CHECK_THROWS(inverse_normal_cdf(0.0));
  CHECK_THROWS(inverse_normal_cdf(1.0));
  CHECK(normal_quantile_two_sided(0.05) ==
        doctest::Approx(1.959963984540054).epsilon(1e-11));
}

TEST_CASE("kahan summation keeps precision on adversarial input") {
  KahanSum s;
  s.add(1.0);
  for (int i = 0; i < 1000000; ++i) s.add(1e-16);
  CHECK(s.value() == doctest::Approx(1.0 + 1e-10).epsilon(1e-14));
}

TEST_CASE("mean and sd use the (n-1) denominator") {
  const std::vector<double> xs{1.0, 2.0, 3.0};
  CHECK(mean(xs) == doctest::Approx(2.0));
  CHECK(sample_sd(xs) == doctest::Approx(1.0));
  CHECK(sample_sd(std::vector<double>{5.0}) == 0.0);
}

TEST_CASE("ols recovers an exact line") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y{1.5, 3.5, 5.5, 7.5};
  const OlsFit fit = ols_fit(x, y);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS(ols_fit(std::vector<double>{1.0}, std::vector<double>{1.0}));
}

TEST_CASE("ks statistic is small for ideal normal scores") {
  std::vector<double> xs;
  const int n = 500;
  for (int i = 0; i < n; ++i) {
    xs.push_back(inverse_normal_cdf((i + 0.5) / n));
  }
  CHECK(ks_statistic_normal(xs) < 1.0 / n + 1e-12);
  CHECK(ks_critical_value(0.01, 1000) ==
        doctest::Approx(1.6276236115189504 / std::sqrt(1000.0)).epsilon(1e-9));
}

TEST_CASE("empirical quantile of two points is min or max") {
  const std::vector<double> xs{3.0, -1.0};
  CHECK(empirical_quantile(xs, 0.025) == -1.0);
  CHECK(empirical_quantile(xs, 0.975) == 3.0);
  const std::vector<double> ys{1.0, 2.0, 3.0, 4.0};
  CHECK(empirical_quantile(ys, 0.5) == 2.0);
  CHECK(empirical_quantile(ys, 1.0) == 4.0);
}

TEST_CASE("seed derivation separates streams") {
  CHECK(derive_seed(42, 1) != derive_seed(42, 2));
  CHECK(derive_seed(42, 1) != derive_seed(43, 1));
  CHECK(derive_seed(42, 7) == derive_seed(42, 7));
  NormalStream a(derive_seed(9, 0));
  NormalStream b(derive_seed(9, 0));
  for (int i = 0; i < 16; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("normal stream matches sample moments") {
  NormalStream rng(123);
  const int n = 200000;
  std::vector<double> xs(n);
  for (auto& x : xs) x = rng.next();
  CHECK(std::abs(mean(xs)) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(sample_sd(xs) == doctest::Approx(1.0).epsilon(0.01));
}

}  // TEST_SUITE
