#include "ssaug/time_series.hpp"

#include <cmath>

#include "ssaug/exact_sum.hpp"

namespace ssaug {

TimeSeries::TimeSeries(Eigen::VectorXd v, std::optional<double> rate)
    : values(std::move(v)), sample_rate_hz(rate) {
    if (values.size() < 1) throw Error("TimeSeries requires at least one sample");
    if (!values.allFinite()) throw Error("TimeSeries samples must be finite");
    if (sample_rate_hz && *sample_rate_hz <= 0.0) throw Error("sample_rate_hz must be positive");
}

std::map<int, std::size_t> Dataset::class_counts() const {
    std::map<int, std::size_t> counts;
    for (const auto& it : items) ++counts[it.label];
    return counts;
}

TimeSeries canonicalize_length(const TimeSeries& s, Eigen::Index target_len) {
    if (target_len < 1) throw Error("target_len must be >= 1");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(target_len);
    const Eigen::Index keep = std::min(s.length(), target_len);
    out.head(keep) = s.values.head(keep);
    return TimeSeries(std::move(out), s.sample_rate_hz);
}

SummaryStats summary_stats(const TimeSeries& s) {
    const Eigen::Index n = s.length();
    const double mean = exact_sum(s.values) / static_cast<double>(n);
    if (n < 2) return {mean, 0.0};
    ExactSum ss;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = s.values[i] - mean;
        ss.add(d * d);
    }
    return {mean, std::sqrt(ss.value() / static_cast<double>(n - 1))};
}

TimeSeries znormalize(const TimeSeries& s) {
    if (s.length() < 2) throw TooShort("znormalize requires at least two samples");
    const auto [mean, sd] = summary_stats(s);
    if (sd <= 0.0) throw ZeroVariance("znormalize: constant series");
    return TimeSeries((s.values.array() - mean) / sd, s.sample_rate_hz);
}

}  // namespace ssaug
