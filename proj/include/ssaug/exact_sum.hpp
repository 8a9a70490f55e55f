#ifndef SSAUG_EXACT_SUM_HPP
#define SSAUG_EXACT_SUM_HPP

#include <Eigen/Core>
#include <cmath>
#include <vector>

namespace ssaug {

// Shewchuk-style exactly rounded summation. The running sum is kept as a
// non-overlapping expansion of partials, so the result is the correctly
// rounded sum of the inputs and therefore invariant under permutation of
// the input order. Means and variances of a permuted multiset come out
// bit-identical to the original's.
class ExactSum {
public:
    void add(double x) {
        std::size_t used = 0;
        for (double p : partials_) {
            if (std::abs(x) < std::abs(p)) std::swap(x, p);
            double hi = x + p;
            double lo = p - (hi - x);
            if (lo != 0.0) partials_[used++] = lo;
            x = hi;
        }
        partials_.resize(used);
        partials_.push_back(x);
    }

    double value() const {
        double s = 0.0;
        for (double p : partials_) s += p;
        return s;
    }

private:
    std::vector<double> partials_;
};

inline double exact_sum(const Eigen::VectorXd& v) {
    ExactSum acc;
    for (Eigen::Index i = 0; i < v.size(); ++i) acc.add(v[i]);
    return acc.value();
}

}  // namespace ssaug

#endif
