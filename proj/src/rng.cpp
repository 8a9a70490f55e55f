#include "ssaug/rng.hpp"

#include <cmath>
#include <numbers>

namespace ssaug {

double Rng::normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    // u1 in (0,1] so the log is finite
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
}

std::uint64_t mix_seed(std::uint64_t base_seed, std::string_view id, std::uint64_t replica) {
    // FNV-1a over the id, then splitmix64-style finalization of the combination
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : id) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t z = base_seed;
    auto mix = [](std::uint64_t v) {
        v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
        v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
        return v ^ (v >> 31);
    };
    z = mix(z + 0x9e3779b97f4a7c15ULL + h);
    z = mix(z + 0x9e3779b97f4a7c15ULL + replica);
    return z;
}

}  // namespace ssaug
