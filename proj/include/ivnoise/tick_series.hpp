#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ivnoise {

/// Ordered log-price observations. Timestamps are seconds since the
/// session open and serve as metadata for sampling transforms and
/// reporting; the estimators treat any series as index-equidistant.
struct TickSeries {
  std::vector<double> timestamps;
  std::vector<double> log_prices;
  std::string label;

  std::size_t size() const { return log_prices.size(); }

  /// Largest observation index (observation count minus one). The
  /// lagged-sum denominators depend on this convention, so it is
  /// centralized here.
  std::size_t n() const { return log_prices.empty() ? 0 : log_prices.size() - 1; }
};

/// Throws std::invalid_argument if lengths differ, timestamps are not
/// strictly increasing, or any value is non-finite.
void validate(const TickSeries& s);

/// Validating constructor.
TickSeries make_tick_series(std::vector<double> timestamps,
                            std::vector<double> log_prices,
                            std::string label = {});

/// Series on a regular grid with spacing dt, for simulated data and tests.
TickSeries series_from_prices(std::vector<double> log_prices, double dt = 1.0,
                              std::string label = {});

}  // namespace ivnoise
