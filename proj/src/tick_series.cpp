#include "ivnoise/tick_series.hpp"

#include <cmath>
#include <stdexcept>

namespace ivnoise {

void validate(const TickSeries& s) {
  if (s.timestamps.size() != s.log_prices.size()) {
    throw std::invalid_argument("TickSeries: timestamp/price length mismatch");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s.timestamps[i]) || !std::isfinite(s.log_prices[i])) {
      throw std::invalid_argument("TickSeries: non-finite value at index " +
                                  std::to_string(i));
    }
    if (i > 0 && !(s.timestamps[i] > s.timestamps[i - 1])) {
      throw std::invalid_argument(
          "TickSeries: timestamps not strictly increasing at index " +
          std::to_string(i));
    }
  }
}

TickSeries make_tick_series(std::vector<double> timestamps,
                            std::vector<double> log_prices,
                            std::string label) {
  TickSeries s{std::move(timestamps), std::move(log_prices), std::move(label)};
  validate(s);
  return s;
}

TickSeries series_from_prices(std::vector<double> log_prices, double dt,
                              std::string label) {
  std::vector<double> ts(log_prices.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ts[i] = static_cast<double>(i) * dt;
  }
  return make_tick_series(std::move(ts), std::move(log_prices),
                          std::move(label));
}

}  // namespace ivnoise
