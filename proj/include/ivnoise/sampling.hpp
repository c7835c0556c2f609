#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ivnoise/tick_series.hpp"

namespace ivnoise {

/// Keeps the first observation in each cell [k*grid_step, (k+1)*grid_step);
/// cells without observations produce no output point. Output rows keep
/// their original timestamps.
TickSeries calendar_subsample(const TickSeries& s, double grid_step);

/// Keeps the first observation, then every observation whose log-price
/// differs from the last kept one, so all zero returns are suppressed.
TickSeries tick_filter(const TickSeries& s);

/// Deterministic irregular grid t_i = f(i/n), i = 0..n with n = n_obs-1.
/// f must map [0,1] onto [0,1] with f(0)=0, f(1)=1 and be strictly
/// increasing; violations detected on the evaluation grid throw.
std::vector<double> time_warp_grid(std::size_t n_obs,
                                   const std::function<double(double)>& f);

}  // namespace ivnoise
