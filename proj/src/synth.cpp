#include "ssaug/synth.hpp"

#include <cmath>
#include <numbers>

namespace ssaug {

namespace {

// raised-cosine lift -> hold -> lower pulse with a class-dependent
// deformation; u in [0,1] is the normalized time axis
double pulse_value(double u, int label, double distortion, double jitter) {
    const double rise_start = 0.08 + jitter;
    const double rise_end = 0.30 + jitter;
    const double fall_start = 0.68 + jitter;
    const double fall_end = 0.92 + jitter;

    double env;
    if (u <= rise_start || u >= fall_end)
        env = 0.0;
    else if (u < rise_end)
        env = 0.5 * (1.0 - std::cos(std::numbers::pi * (u - rise_start) / (rise_end - rise_start)));
    else if (u <= fall_start)
        env = 1.0;
    else
        env = 0.5 * (1.0 + std::cos(std::numbers::pi * (u - fall_start) / (fall_end - fall_start)));

    switch (label) {
        case 0:
            return env;
        case 1: {
            // hesitant movement: a dip in the middle of the hold phase
            const double dip = std::exp(-std::pow((u - 0.5) / 0.10, 2.0));
            return env * (1.0 - distortion * dip);
        }
        default: {
            // impaired movement: slow tremor riding on a weaker hold
            const double tremor = std::sin(2.0 * std::numbers::pi * 5.0 * u);
            return env * (1.0 - 0.3 * distortion + 0.35 * distortion * tremor);
        }
    }
}

Eigen::VectorXd make_signal(const SynthSpec& spec, int label, double amp, double jitter, Rng& rng,
                            bool with_noise) {
    const Eigen::Index n = spec.length;
    const SynthClass& cls = spec.classes[static_cast<std::size_t>(label)];
    Eigen::VectorXd out(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        const double u = static_cast<double>(t) / static_cast<double>(n - 1);
        out[t] = amp * pulse_value(u, label, cls.distortion, jitter);
    }
    if (with_noise && spec.noise_amp > 0.0) {
        // AR(1) scaled so its stationary std equals noise_amp
        const double drive = spec.noise_amp * std::sqrt(1.0 - spec.ar_coeff * spec.ar_coeff);
        double state = spec.noise_amp * rng.normal();
        for (Eigen::Index t = 0; t < n; ++t) {
            out[t] += state;
            state = spec.ar_coeff * state + drive * rng.normal();
        }
    }
    return out;
}

}  // namespace

Eigen::VectorXd class_template(const SynthSpec& spec, int label) {
    Rng rng(0);
    return make_signal(spec, label, 1.0, 0.0, rng, false);
}

Dataset generate(const SynthSpec& spec) {
    if (spec.per_class_count < 1) throw Error("per_class_count must be >= 1");
    if (spec.length < 8) throw Error("length must be >= 8");
    if (std::abs(spec.ar_coeff) >= 1.0) throw Error("ar_coeff must be in (-1,1)");

    Dataset d;
    for (int label = 0; label < 3; ++label) {
        const SynthClass& cls = spec.classes[static_cast<std::size_t>(label)];
        for (int i = 0; i < spec.per_class_count; ++i) {
            const std::string id = "synth-c" + std::to_string(label) + "-" + std::to_string(i);
            Rng rng(mix_seed(spec.seed, id, 0));
            const double amp = cls.amp_lo + (cls.amp_hi - cls.amp_lo) * rng.uniform();
            const double jitter = 0.03 * (2.0 * rng.uniform() - 1.0);
            LabeledSeries item;
            item.series = TimeSeries(make_signal(spec, label, amp, jitter, rng, true), 30.0);
            item.label = label;
            item.subject_id = id;
            item.trial_id = "0";
            d.items.push_back(std::move(item));
        }
    }
    return d;
}

}  // namespace ssaug
