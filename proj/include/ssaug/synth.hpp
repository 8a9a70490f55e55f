#ifndef SSAUG_SYNTH_HPP
#define SSAUG_SYNTH_HPP

#include <array>

#include "ssaug/rng.hpp"
#include "ssaug/time_series.hpp"

namespace ssaug {

// Deterministic generator of 3-class, movement-like signals: a raised-cosine
// lift-hold-lower pulse with class-dependent distortion plus AR(1) noise.
// Stands in for unavailable measured data in tests and demos.

struct SynthClass {
    double amp_lo = 0.8;
    double amp_hi = 1.2;
    double distortion = 0.0;  // strength of the class's characteristic deformation
};

struct SynthSpec {
    std::array<SynthClass, 3> classes = {SynthClass{0.9, 1.2, 0.0},
                                         SynthClass{0.7, 1.0, 0.45},
                                         SynthClass{0.5, 0.9, 0.9}};
    int per_class_count = 10;
    Eigen::Index length = 91;
    double ar_coeff = 0.8;     // in (-1, 1)
    double noise_amp = 0.05;   // stationary std of the AR(1) noise
    std::uint64_t seed = 0;
};

Dataset generate(const SynthSpec& spec);

// Noise-free class template at unit amplitude; exposed so tests can check
// class separation against the noise level.
Eigen::VectorXd class_template(const SynthSpec& spec, int label);

}  // namespace ssaug

#endif
