#ifndef SSAUG_AUGMENT_HPP
#define SSAUG_AUGMENT_HPP

#include <map>
#include <variant>

#include "ssaug/ssa.hpp"
#include "ssaug/surrogate.hpp"
#include "ssaug/window_transforms.hpp"

namespace ssaug {

// Shape-preserving augmentation pipeline: split a signal into SSA shape and
// irregular parts, randomize only the irregular part with an AAFT surrogate,
// recombine. Dispatches the baseline methods too, and expands a dataset by
// per-class fold factors.

struct SsaSurrogateMethod {
    SsaConfig ssa;
    SelectorSpec selector = VarianceThreshold{0.9};
};
struct SurrogateOnlyMethod {};
struct WindowSliceMethod {
    SliceConfig cfg;
};
struct WindowWarpMethod {
    WarpConfig cfg;
};
using AugmentMethod =
    std::variant<SsaSurrogateMethod, SurrogateOnlyMethod, WindowSliceMethod, WindowWarpMethod>;

struct AugmentPlan {
    std::map<int, std::size_t> per_class_fold;
    AugmentMethod method;
    std::uint64_t base_seed = 0;
};

// One synthetic series. For ssa_surrogate: shape = reconstruction over the
// significant set, irregular = residual, output = shape + aaft(irregular).
// A constant irregular component passes through unchanged; *degenerate is
// set when a diagnostic pointer is supplied.
TimeSeries synthesize_one(const TimeSeries& s, const AugmentMethod& method, Rng& rng,
                          bool* degenerate = nullptr);

// fold(c) * count(c) synthetic series per class; originals are not included
// (they are the held-out test set). Seeds derive from
// (base_seed, series id, replica), so output is order-stable and
// reproducible.
Dataset augment_dataset(const Dataset& d, const AugmentPlan& plan);

// Per-class fold factors: fold(c) = fold_for_majority * floor(max_count /
// count(c)), equalizing minority classes to roughly the majority's synthetic
// count.
std::map<int, std::size_t> derive_fold_plan(const std::map<int, std::size_t>& counts,
                                            std::size_t fold_for_majority);

}  // namespace ssaug

#endif
