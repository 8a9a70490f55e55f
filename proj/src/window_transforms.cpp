#include "ssaug/window_transforms.hpp"

#include <cmath>

namespace ssaug {

Eigen::VectorXd resample_linear(const Eigen::VectorXd& values, Eigen::Index target_len) {
    const Eigen::Index n = values.size();
    if (n < 2 || target_len < 2) throw TooShort("resample_linear needs length >= 2 on both sides");
    Eigen::VectorXd out(target_len);
    const double step = static_cast<double>(n - 1) / static_cast<double>(target_len - 1);
    for (Eigen::Index i = 0; i < target_len; ++i) {
        const double pos = static_cast<double>(i) * step;
        const Eigen::Index lo = std::min<Eigen::Index>(static_cast<Eigen::Index>(pos), n - 2);
        const double frac = pos - static_cast<double>(lo);
        out[i] = frac == 0.0 ? values[lo] : values[lo] + frac * (values[lo + 1] - values[lo]);
    }
    out[0] = values[0];
    out[target_len - 1] = values[n - 1];
    return out;
}

TimeSeries window_slice(const TimeSeries& s, const SliceConfig& cfg, Rng& rng) {
    const Eigen::Index n = s.length();
    if (cfg.keep_fraction <= 0.0 || cfg.keep_fraction > 1.0) throw Error("keep_fraction must be in (0,1]");
    const auto seg_len = static_cast<Eigen::Index>(std::ceil(cfg.keep_fraction * static_cast<double>(n)));
    if (n < 3 || seg_len < 2) throw TooShort("window_slice: series or kept segment too short");
    const auto offset = static_cast<Eigen::Index>(rng.uniform_int(0, static_cast<std::uint64_t>(n - seg_len)));
    return TimeSeries(resample_linear(s.values.segment(offset, seg_len), n), s.sample_rate_hz);
}

TimeSeries window_warp(const TimeSeries& s, const WarpConfig& cfg, Rng& rng) {
    const Eigen::Index n = s.length();
    if (n < 10) throw TooShort("window_warp requires at least 10 samples");
    if (cfg.window_fraction <= 0.0 || cfg.window_fraction >= 1.0) throw Error("window_fraction must be in (0,1)");
    if (cfg.warp_ratios.empty()) throw Error("warp_ratios must be non-empty");

    const auto wlen = std::max<Eigen::Index>(
        2, static_cast<Eigen::Index>(std::ceil(cfg.window_fraction * static_cast<double>(n))));
    const auto offset = static_cast<Eigen::Index>(rng.uniform_int(0, static_cast<std::uint64_t>(n - wlen)));
    const double ratio = cfg.warp_ratios[rng.uniform_int(0, cfg.warp_ratios.size() - 1)];
    if (ratio <= 0.0) throw Error("warp ratio must be positive");
    const auto warped_len = std::max<Eigen::Index>(
        2, static_cast<Eigen::Index>(std::llround(ratio * static_cast<double>(wlen))));

    Eigen::VectorXd warped = resample_linear(s.values.segment(offset, wlen), warped_len);
    Eigen::VectorXd spliced(n - wlen + warped_len);
    spliced.head(offset) = s.values.head(offset);
    spliced.segment(offset, warped_len) = warped;
    spliced.tail(n - offset - wlen) = s.values.tail(n - offset - wlen);
    return TimeSeries(resample_linear(spliced, n), s.sample_rate_hz);
}

}  // namespace ssaug
