#ifndef SSAUG_SURROGATE_HPP
#define SSAUG_SURROGATE_HPP

#include <complex>
#include <vector>

#include "ssaug/rng.hpp"
#include "ssaug/time_series.hpp"

namespace ssaug {

// Amplitude adjusted Fourier transform surrogates: rank-match the series to
// Gaussian data, randomize spectral phases, map the ranks back. The output
// is an exact permutation of the input samples.

struct SortWithRanks {
    std::vector<double> sorted;          // ascending
    std::vector<std::size_t> sort_index; // sorted position -> original position
    std::vector<std::size_t> rank_index; // original position -> sorted position (inverse)
};

// Stable ascending sort with both permutations. Ties keep original order.
SortWithRanks sort_with_ranks(const std::vector<double>& values);

// Forward DFT, any length, direct summation with a radix-2 fast path for
// powers of two.
std::vector<std::complex<double>> dft(const std::vector<double>& values);
std::vector<std::complex<double>> idft(const std::vector<std::complex<double>>& spectrum);

// Rotate bins 1..floor(N/2) by independent uniform phases and mirror the
// conjugates into the upper half so the inverse transform stays real. The DC
// bin is untouched; for even N the Nyquist bin is flipped in sign with
// probability 1/2 (a 0-or-pi rotation keeps it real). Bin magnitudes are
// preserved.
std::vector<std::complex<double>> phase_randomize(const std::vector<std::complex<double>>& spectrum,
                                                  Rng& rng);

// Intermediates of the surrogate algorithm, exposed for diagnostics.
struct AaftIntermediates {
    std::vector<double> x_sorted;
    std::vector<std::size_t> sort_index;
    std::vector<std::size_t> rank_index;
    std::vector<double> gaussian_sorted;
    std::vector<double> gaussian_reranked;
    std::vector<std::complex<double>> spectrum;
    std::vector<std::complex<double>> randomized_spectrum;
    std::vector<double> phase_randomized_series;
    std::vector<std::size_t> s_rank_index;
};

TimeSeries aaft(const TimeSeries& s, Rng& rng, AaftIntermediates* diag = nullptr);

inline TimeSeries aaft(const TimeSeries& s, RngState state, AaftIntermediates* diag = nullptr) {
    Rng rng(state);
    return aaft(s, rng, diag);
}

}  // namespace ssaug

#endif
