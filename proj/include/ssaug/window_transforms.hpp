#ifndef SSAUG_WINDOW_TRANSFORMS_HPP
#define SSAUG_WINDOW_TRANSFORMS_HPP

#include <vector>

#include "ssaug/rng.hpp"
#include "ssaug/time_series.hpp"

namespace ssaug {

// Baseline augmenters: crop or locally time-warp a random window, then
// resample back to the original length.

struct SliceConfig {
    double keep_fraction = 0.9;  // in (0, 1]
};

struct WarpConfig {
    double window_fraction = 0.1;            // in (0, 1)
    std::vector<double> warp_ratios = {0.5, 2.0};
};

// Linear interpolation at target_len uniformly spaced positions spanning the
// input; endpoints are copied exactly.
Eigen::VectorXd resample_linear(const Eigen::VectorXd& values, Eigen::Index target_len);

// Keep a random contiguous ceil(keep_fraction*N) segment, stretch it back to
// length N.
TimeSeries window_slice(const TimeSeries& s, const SliceConfig& cfg, Rng& rng);

// Resample a random ceil(window_fraction*N) window by a ratio drawn from
// warp_ratios, splice, and resample the whole thing back to length N.
TimeSeries window_warp(const TimeSeries& s, const WarpConfig& cfg, Rng& rng);

}  // namespace ssaug

#endif
