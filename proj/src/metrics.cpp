#include "ssaug/metrics.hpp"

#include <cmath>

#include "ssaug/exact_sum.hpp"

namespace ssaug {

double delta_mean_pct(const TimeSeries& original, const TimeSeries& synthetic) {
    const double mo = summary_stats(original).mean;
    if (std::abs(mo) < 1e-12) throw ZeroDenominator("delta_mean_pct: original mean is (near) zero");
    return 100.0 * (summary_stats(synthetic).mean - mo) / mo;
}

double delta_std_pct(const TimeSeries& original, const TimeSeries& synthetic) {
    const double so = summary_stats(original).std;
    if (so <= 0.0) throw ZeroDenominator("delta_std_pct: original is constant");
    return 100.0 * (summary_stats(synthetic).std - so) / so;
}

std::vector<double> acf(const TimeSeries& s, int max_lag) {
    const Eigen::Index n = s.length();
    if (n < 2) throw TooShort("acf requires at least two samples");
    if (max_lag < 1 || max_lag >= n) throw Error("acf: max_lag must be in [1, N)");
    const double mean = exact_sum(s.values) / static_cast<double>(n);
    Eigen::VectorXd c = s.values.array() - mean;
    const double denom = c.squaredNorm();
    if (denom <= 0.0) throw ZeroVariance("acf: constant series");
    std::vector<double> out(static_cast<std::size_t>(max_lag) + 1);
    out[0] = 1.0;
    for (int lag = 1; lag <= max_lag; ++lag)
        out[static_cast<std::size_t>(lag)] = c.head(n - lag).dot(c.tail(n - lag)) / denom;
    return out;
}

double acf_rmsd(const TimeSeries& a, const TimeSeries& b, int max_lag) {
    const std::vector<double> fa = acf(a, max_lag);
    const std::vector<double> fb = acf(b, max_lag);
    double ss = 0.0;
    for (std::size_t i = 0; i < fa.size(); ++i) {
        const double d = fa[i] - fb[i];
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(fa.size()));
}

double dtw_norm(const TimeSeries& a, const TimeSeries& b) {
    const Eigen::VectorXd x = znormalize(a).values;
    const Eigen::VectorXd y = znormalize(b).values;
    const Eigen::Index n = x.size(), m = y.size();

    // rolling-row dynamic program, O(n*m) time, O(m) space
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(static_cast<std::size_t>(m), inf), cur(static_cast<std::size_t>(m), inf);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            const double cost = std::abs(x[i] - y[j]);
            double best;
            if (i == 0 && j == 0)
                best = 0.0;
            else if (i == 0)
                best = cur[static_cast<std::size_t>(j - 1)];
            else if (j == 0)
                best = prev[0];
            else
                best = std::min({prev[static_cast<std::size_t>(j - 1)], prev[static_cast<std::size_t>(j)],
                                 cur[static_cast<std::size_t>(j - 1)]});
            cur[static_cast<std::size_t>(j)] = cost + best;
        }
        std::swap(prev, cur);
    }
    return prev[static_cast<std::size_t>(m - 1)] / static_cast<double>(n);
}

FidelityReport fidelity_report(const TimeSeries& original, const TimeSeries& synthetic, int max_lag) {
    FidelityReport r;
    try {
        r.delta_mean_pct = delta_mean_pct(original, synthetic);
    } catch (const ZeroDenominator&) {
        r.delta_mean_flag = "ZeroDenominator";
    }
    try {
        r.delta_std_pct = delta_std_pct(original, synthetic);
    } catch (const ZeroDenominator&) {
        r.delta_std_flag = "ZeroDenominator";
    }
    try {
        r.acf_rmsd = acf_rmsd(original, synthetic, max_lag);
    } catch (const ZeroVariance&) {
        r.acf_rmsd_flag = "ZeroVariance";
    }
    try {
        r.dtw_norm = dtw_norm(original, synthetic);
    } catch (const ZeroVariance&) {
        r.dtw_flag = "ZeroVariance";
    }
    return r;
}

}  // namespace ssaug
