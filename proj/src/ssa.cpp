#include "ssaug/ssa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace ssaug {

TrajectoryMatrix embed(const TimeSeries& s, const SsaConfig& cfg) {
    const Eigen::Index n = s.length();
    const int m = cfg.window;
    if (m < 2) throw Error("SSA window must be >= 2");
    if (m >= n) throw WindowTooLarge("SSA window must be < series length");
    const Eigen::Index rows = n - m + 1;
    TrajectoryMatrix y;
    y.origin_len = n;
    y.rows.resize(rows, m);
    for (Eigen::Index i = 0; i < rows; ++i) y.rows.row(i) = s.values.segment(i, m).transpose();
    return y;
}

Eigen::MatrixXd covariance(const TrajectoryMatrix& y) {
    // divisor is the original series length N, not the row count
    Eigen::MatrixXd c = y.rows.transpose() * y.rows / static_cast<double>(y.origin_len);
    c = ((c + c.transpose()) / 2.0).eval();
    return c;
}

namespace {

// cyclic Jacobi sweeps on a symmetric matrix; A is destroyed
void jacobi_eigen(Eigen::MatrixXd a, Eigen::VectorXd& evals, Eigen::MatrixXd& evecs) {
    const Eigen::Index n = a.rows();
    evecs = Eigen::MatrixXd::Identity(n, n);
    const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
    const double tol = 1e-12 * scale;
    const int max_sweeps = 100;

    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(off) <= tol) {
            converged = true;
            break;
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= tol * 1e-3) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // A <- J^T A J on rows/cols p,q
                for (Eigen::Index i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (Eigen::Index i = 0; i < n; ++i) {
                    const double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (Eigen::Index i = 0; i < n; ++i) {
                    const double vip = evecs(i, p), viq = evecs(i, q);
                    evecs(i, p) = c * vip - s * viq;
                    evecs(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    if (!converged) {
        // final check after the last sweep
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(off) > tol) throw EigenFailure("Jacobi eigensolver did not converge in 100 sweeps");
    }
    evals = a.diagonal();
}

}  // namespace

SsaDecomposition decompose(const TimeSeries& s, const SsaConfig& cfg) {
    TrajectoryMatrix y = embed(s, cfg);
    Eigen::MatrixXd c = covariance(y);

    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs;
    jacobi_eigen(c, evals, evecs);

    const int m = cfg.window;
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return evals[i] > evals[j]; });

    SsaDecomposition d;
    d.window = m;
    d.origin_len = y.origin_len;
    d.eigenvalues.resize(m);
    d.eigenvectors.resize(m, m);
    for (int k = 0; k < m; ++k) {
        d.eigenvalues[k] = std::max(evals[order[k]], 0.0);
        Eigen::VectorXd e = evecs.col(order[k]);
        // deterministic sign: largest-magnitude entry positive, earliest index on ties
        Eigen::Index imax = 0;
        for (Eigen::Index i = 1; i < e.size(); ++i)
            if (std::abs(e[i]) > std::abs(e[imax])) imax = i;
        if (e[imax] < 0.0) e = -e;
        d.eigenvectors.col(k) = e;
    }
    d.pcs = y.rows * d.eigenvectors;
    return d;
}

TimeSeries reconstruct(const SsaDecomposition& d, const std::set<int>& group) {
    if (group.empty()) throw EmptyGroup("reconstruct: empty component set");
    const int m = d.window;
    const Eigen::Index n = d.origin_len;
    for (int k : group)
        if (k < 0 || k >= m) throw IndexOutOfRange("reconstruct: component index out of range");

    // sum the selected rank-1 terms, then diagonal-average; equivalent to the
    // three-branch head/middle/tail formulation
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        const Eigen::Index jlo = std::max<Eigen::Index>(0, t - (n - m));
        const Eigen::Index jhi = std::min<Eigen::Index>(m - 1, t);
        double acc = 0.0;
        for (Eigen::Index j = jlo; j <= jhi; ++j) {
            const Eigen::Index pc_idx = t - j;
            for (int k : group) acc += d.pcs(pc_idx, k) * d.eigenvectors(j, k);
        }
        out[t] = acc / static_cast<double>(jhi - jlo + 1);
    }
    return TimeSeries(std::move(out));
}

namespace {

int knee_index(const Eigen::VectorXd& lambda) {
    const Eigen::Index m = lambda.size();
    if (m < 3) return 1;
    // maximum discrete curvature of the scree curve; the knee sits one past
    // the last signal component
    double best = -std::numeric_limits<double>::infinity();
    Eigen::Index best_i = 1;
    for (Eigen::Index i = 1; i + 1 < m; ++i) {
        const double curv = lambda[i - 1] - 2.0 * lambda[i] + lambda[i + 1];
        if (curv > best) {
            best = curv;
            best_i = i;
        }
    }
    return static_cast<int>(best_i);
}

}  // namespace

ComponentGrouping select_significant(const SsaDecomposition& d, const SelectorSpec& method) {
    const int m = d.window;
    const double total = d.eigenvalues.sum();
    int k = 1;
    if (total <= 0.0) {
        k = 1;  // degenerate spectrum
    } else if (const auto* f = std::get_if<FixedK>(&method)) {
        k = std::clamp(f->k, 1, m);
    } else if (const auto* v = std::get_if<VarianceThreshold>(&method)) {
        double cum = 0.0;
        for (k = 1; k <= m; ++k) {
            cum += d.eigenvalues[k - 1];
            if (cum / total >= v->fraction) break;
        }
        k = std::min(k, m);
    } else {
        k = knee_index(d.eigenvalues);
    }

    ComponentGrouping g;
    for (int i = 0; i < m; ++i) (i < k ? g.signal_set : g.noise_set).insert(i);
    return g;
}

}  // namespace ssaug
