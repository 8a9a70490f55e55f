#ifndef SSAUG_TIME_SERIES_HPP
#define SSAUG_TIME_SERIES_HPP

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssaug/errors.hpp"

namespace ssaug {

// A finite real-valued sequence, the currency of every operation.
// Invariants: length >= 1, every sample finite.
struct TimeSeries {
    Eigen::VectorXd values;
    std::optional<double> sample_rate_hz;

    TimeSeries() = default;
    explicit TimeSeries(Eigen::VectorXd v, std::optional<double> rate = std::nullopt);

    Eigen::Index length() const { return values.size(); }
};

struct LabeledSeries {
    TimeSeries series;
    int label = 0;
    std::string subject_id;
    std::string trial_id;
};

struct Dataset {
    std::vector<LabeledSeries> items;

    std::map<int, std::size_t> class_counts() const;
    std::size_t size() const { return items.size(); }
    bool empty() const { return items.empty(); }
};

// Zero-pad or truncate to target_len; leading min(N, target_len) samples
// are copied unchanged.
TimeSeries canonicalize_length(const TimeSeries& s, Eigen::Index target_len);

// Shift/scale to zero mean and unit sample standard deviation.
// Throws TooShort (N < 2) or ZeroVariance (constant input).
TimeSeries znormalize(const TimeSeries& s);

struct SummaryStats {
    double mean = 0.0;
    double std = 0.0;  // sample convention (divide by N-1); 0 for N == 1
};

// Mean and sample standard deviation, both accumulated with exactly rounded
// summation so permutations of the same multiset give bit-identical results.
SummaryStats summary_stats(const TimeSeries& s);

}  // namespace ssaug

#endif
