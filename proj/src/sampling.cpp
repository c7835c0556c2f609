#include "ivnoise/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace ivnoise {

TickSeries calendar_subsample(const TickSeries& s, double grid_step) {
  if (!(grid_step > 0.0)) {
    throw std::invalid_argument("calendar_subsample: grid_step must be > 0");
  }
  if (s.size() == 0) {
    throw std::invalid_argument("calendar_subsample: empty series");
  }
  TickSeries out;
  out.label = s.label.empty() ? "calendar" : s.label + "|calendar";
  long long last_cell = -1;
  bool have_cell = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto cell =
        static_cast<long long>(std::floor(s.timestamps[i] / grid_step));
    if (!have_cell || cell != last_cell) {
      out.timestamps.push_back(s.timestamps[i]);
      out.log_prices.push_back(s.log_prices[i]);
      last_cell = cell;
      have_cell = true;
    }
  }
  return out;
}

TickSeries tick_filter(const TickSeries& s) {
  TickSeries out;
  out.label = s.label.empty() ? "tick" : s.label + "|tick";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (out.log_prices.empty() || s.log_prices[i] != out.log_prices.back()) {
      out.timestamps.push_back(s.timestamps[i]);
      out.log_prices.push_back(s.log_prices[i]);
    }
  }
  return out;
}

std::vector<double> time_warp_grid(std::size_t n_obs,
                                   const std::function<double(double)>& f) {
  if (n_obs < 2) {
    throw std::invalid_argument("time_warp_grid: need at least 2 points");
  }
  const auto n = static_cast<double>(n_obs - 1);
  std::vector<double> t(n_obs);
  for (std::size_t i = 0; i < n_obs; ++i) {
    t[i] = f(static_cast<double>(i) / n);
    if (!std::isfinite(t[i])) {
      throw std::invalid_argument("time_warp_grid: non-finite warp value");
    }
    if (i > 0 && !(t[i] > t[i - 1])) {
      throw std::invalid_argument(
          "time_warp_grid: warp not strictly increasing on the grid");
    }
  }
  if (t.front() != 0.0 || t.back() != 1.0) {
    throw std::invalid_argument("time_warp_grid: endpoints must be 0 and 1");
  }
  return t;
}

}  // namespace ivnoise
