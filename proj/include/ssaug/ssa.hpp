#ifndef SSAUG_SSA_HPP
#define SSAUG_SSA_HPP

#include <Eigen/Core>
#include <set>
#include <variant>

#include "ssaug/time_series.hpp"

namespace ssaug {

// Basic SSA: Hankel embedding, lag-covariance eigendecomposition, principal
// components, diagonal-averaging reconstruction, significant-component
// selection.

struct SsaConfig {
    int window = 17;  // embedding dimension M, 2 <= M < N
};

// (N-M+1) x M Hankel matrix of lagged windows.
struct TrajectoryMatrix {
    Eigen::MatrixXd rows;
    Eigen::Index origin_len = 0;

    int window() const { return static_cast<int>(rows.cols()); }
};

struct SsaDecomposition {
    Eigen::VectorXd eigenvalues;   // descending, clamped at 0
    Eigen::MatrixXd eigenvectors;  // column k = e^k, orthonormal
    Eigen::MatrixXd pcs;           // column k = a^k, length N-M+1
    int window = 0;
    Eigen::Index origin_len = 0;
};

// Partition of component indices {0..M-1} into a signal (shape) prefix and
// the irregular remainder.
struct ComponentGrouping {
    std::set<int> signal_set;
    std::set<int> noise_set;
};

// Selector for select_significant. FixedK pins k outright; VarianceThreshold
// takes the shortest prefix reaching the given cumulative-variance fraction;
// ScreeKnee picks the maximum-curvature point of the scree plot.
struct FixedK {
    int k = 1;
};
struct VarianceThreshold {
    double fraction = 0.9;
};
struct ScreeKnee {};
using SelectorSpec = std::variant<FixedK, VarianceThreshold, ScreeKnee>;

// Embed into the trajectory matrix; row i is [x(i), ..., x(i+M-1)] (0-based).
// Throws WindowTooLarge unless 2 <= M < N.
TrajectoryMatrix embed(const TimeSeries& s, const SsaConfig& cfg);

// C = Y^T Y / N with N the original series length, symmetrized exactly.
Eigen::MatrixXd covariance(const TrajectoryMatrix& y);

// Eigendecompose the lag covariance by cyclic Jacobi rotations (cap 100
// sweeps, off-diagonal tolerance 1e-12 relative). Eigenvalue order is
// descending; each eigenvector's largest-magnitude entry is made positive.
// pcs column k is Y e^k.
SsaDecomposition decompose(const TimeSeries& s, const SsaConfig& cfg);

// Diagonal-averaging reconstruction over the given component set (0-based
// indices into the sorted spectrum). Output has the original length; the sum
// over all M single-component reconstructions reproduces the input.
TimeSeries reconstruct(const SsaDecomposition& d, const std::set<int>& group);

ComponentGrouping select_significant(const SsaDecomposition& d, const SelectorSpec& method);

}  // namespace ssaug

#endif
