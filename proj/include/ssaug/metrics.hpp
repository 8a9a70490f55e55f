#ifndef SSAUG_METRICS_HPP
#define SSAUG_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ssaug/time_series.hpp"

namespace ssaug {

// Fidelity measures between an original and a synthesized series: percent
// deltas of mean and standard deviation, RMS difference of autocorrelation
// functions, and length-normalized DTW on z-normalized signals.

// Percent change of the mean relative to the original's mean.
// Throws ZeroDenominator when |mean(original)| < 1e-12.
double delta_mean_pct(const TimeSeries& original, const TimeSeries& synthetic);

// Percent change of the sample standard deviation.
double delta_std_pct(const TimeSeries& original, const TimeSeries& synthetic);

// Biased autocorrelation estimate, acf[0] == 1. max_lag < N.
std::vector<double> acf(const TimeSeries& s, int max_lag);

// Root-mean-square difference of the two ACFs over lags 0..max_lag.
double acf_rmsd(const TimeSeries& a, const TimeSeries& b, int max_lag);

// Classic full-window DTW with absolute-difference local cost on z-normalized
// inputs, divided by the length of a.
double dtw_norm(const TimeSeries& a, const TimeSeries& b);

constexpr int default_max_lag(Eigen::Index n) { return static_cast<int>(std::min<Eigen::Index>(n - 1, 40)); }

// One Table-style comparison row. A degenerate metric (zero denominator or
// constant input) is reported as a flag instead of a number.
struct FidelityReport {
    std::optional<double> delta_mean_pct;
    std::optional<double> delta_std_pct;
    std::optional<double> acf_rmsd;
    std::optional<double> dtw_norm;
    std::string delta_mean_flag;  // empty when the value is present
    std::string delta_std_flag;
    std::string acf_rmsd_flag;
    std::string dtw_flag;
};

FidelityReport fidelity_report(const TimeSeries& original, const TimeSeries& synthetic, int max_lag);

}  // namespace ssaug

#endif
