#include "ssaug/augment.hpp"

#include <cmath>

namespace ssaug {

TimeSeries synthesize_one(const TimeSeries& s, const AugmentMethod& method, Rng& rng, bool* degenerate) {
    if (degenerate) *degenerate = false;
    if (const auto* m = std::get_if<SsaSurrogateMethod>(&method)) {
        const SsaDecomposition d = decompose(s, m->ssa);
        const ComponentGrouping g = select_significant(d, m->selector);
        const TimeSeries shape = reconstruct(d, g.signal_set);
        // residual form guarantees exact additive recombination
        Eigen::VectorXd irregular = s.values - shape.values;
        const double span = irregular.maxCoeff() - irregular.minCoeff();
        const double scale = std::max(s.values.cwiseAbs().maxCoeff(), 1e-300);
        if (span <= 1e-12 * scale) {
            if (degenerate) *degenerate = true;
            return TimeSeries(shape.values + irregular, s.sample_rate_hz);
        }
        const TimeSeries randomized = aaft(TimeSeries(std::move(irregular)), rng);
        return TimeSeries(shape.values + randomized.values, s.sample_rate_hz);
    }
    if (std::holds_alternative<SurrogateOnlyMethod>(method)) return aaft(s, rng);
    if (const auto* m = std::get_if<WindowSliceMethod>(&method)) return window_slice(s, m->cfg, rng);
    return window_warp(s, std::get<WindowWarpMethod>(method).cfg, rng);
}

Dataset augment_dataset(const Dataset& d, const AugmentPlan& plan) {
    for (const auto& [label, count] : d.class_counts()) {
        (void)count;
        if (!plan.per_class_fold.count(label))
            throw MissingFoldFactor("no fold factor for label " + std::to_string(label));
    }
    Dataset out;
    for (std::size_t idx = 0; idx < d.items.size(); ++idx) {
        const LabeledSeries& item = d.items[idx];
        const std::size_t fold = plan.per_class_fold.at(item.label);
        const std::string parent_id = item.subject_id + "/" + item.trial_id;
        for (std::size_t rep = 0; rep < fold; ++rep) {
            Rng rng(mix_seed(plan.base_seed, parent_id, rep));
            LabeledSeries synth;
            synth.series = synthesize_one(item.series, plan.method, rng);
            synth.label = item.label;
            synth.subject_id = item.subject_id;
            synth.trial_id = item.trial_id + "#aug" + std::to_string(rep);
            out.items.push_back(std::move(synth));
        }
    }
    return out;
}

std::map<int, std::size_t> derive_fold_plan(const std::map<int, std::size_t>& counts,
                                            std::size_t fold_for_majority) {
    if (counts.empty()) return {};
    std::size_t max_count = 0;
    for (const auto& [label, c] : counts) {
        if (c < 1) throw Error("derive_fold_plan: class counts must be >= 1");
        max_count = std::max(max_count, c);
    }
    std::map<int, std::size_t> folds;
    for (const auto& [label, c] : counts) folds[label] = fold_for_majority * (max_count / c);
    return folds;
}

}  // namespace ssaug
