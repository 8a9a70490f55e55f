#ifndef SSAUG_RNG_HPP
#define SSAUG_RNG_HPP

#include <cstdint>
#include <string_view>

namespace ssaug {

// Seed for the deterministic generator. Same state -> bit-identical stream
// on every platform.
struct RngState {
    std::uint64_t seed = 0;
    static constexpr std::string_view algorithm_id = "splitmix64/box-muller";
};

// splitmix64 stream with Box-Muller normals. Not cryptographic; chosen for
// an exactly reproducible cross-platform stream (std distributions are not
// bit-stable across standard libraries).
class Rng {
public:
    explicit Rng(RngState s) : state_(s.seed) {}
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [lo, hi] inclusive
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        return lo + next_u64() % (hi - lo + 1);
    }

    // standard normal via Box-Muller; second deviate of each pair is cached
    double normal();

private:
    std::uint64_t state_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

// Stable 64-bit mixing hash used to derive per-work-unit seeds from
// (base_seed, id, replica). Order-independent parallel generation relies
// on this being a pure function of its inputs.
std::uint64_t mix_seed(std::uint64_t base_seed, std::string_view id, std::uint64_t replica);

}  // namespace ssaug

#endif
