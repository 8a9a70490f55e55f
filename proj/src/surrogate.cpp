#include "ssaug/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace ssaug {

using cd = std::complex<double>;

SortWithRanks sort_with_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    SortWithRanks r;
    r.sort_index.resize(n);
    std::iota(r.sort_index.begin(), r.sort_index.end(), std::size_t{0});
    std::stable_sort(r.sort_index.begin(), r.sort_index.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    r.sorted.resize(n);
    r.rank_index.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        r.sorted[p] = values[r.sort_index[p]];
        r.rank_index[r.sort_index[p]] = p;
    }
    return r;
}

namespace {

void fft_radix2(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const cd wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cd u = a[i + j];
                cd v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<cd> transform(std::vector<cd> in, bool inverse) {
    const std::size_t n = in.size();
    if (n >= 2 && (n & (n - 1)) == 0) {
        fft_radix2(in, inverse);
        return in;
    }
    // direct summation; series here are ~91 samples long
    std::vector<cd> out(n);
    const double sign = inverse ? 2.0 : -2.0;
    for (std::size_t k = 0; k < n; ++k) {
        cd acc(0.0);
        for (std::size_t t = 0; t < n; ++t) {
            const double ang = sign * std::numbers::pi * static_cast<double>(k * t) / static_cast<double>(n);
            acc += in[t] * cd(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

}  // namespace

std::vector<cd> dft(const std::vector<double>& values) {
    if (values.empty()) throw Error("dft: empty input");
    std::vector<cd> in(values.begin(), values.end());
    return transform(std::move(in), false);
}

std::vector<cd> idft(const std::vector<cd>& spectrum) {
    if (spectrum.empty()) throw Error("idft: empty input");
    std::vector<cd> out = transform(spectrum, true);
    const double inv_n = 1.0 / static_cast<double>(out.size());
    for (cd& v : out) v *= inv_n;
    return out;
}

std::vector<cd> phase_randomize(const std::vector<cd>& spectrum, Rng& rng) {
    const std::size_t n = spectrum.size();
    if (n < 2) throw TooShort("phase_randomize requires at least two bins");
    std::vector<cd> out = spectrum;
    const std::size_t half = n / 2;
    const bool even = (n % 2) == 0;
    const std::size_t last_free = even ? half - 1 : half;
    for (std::size_t k = 1; k <= last_free; ++k) {
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        out[k] = spectrum[k] * cd(std::cos(phi), std::sin(phi));
        out[n - k] = std::conj(out[k]);
    }
    if (even) {
        // Nyquist bin must stay real
        if (rng.uniform() < 0.5) out[half] = -out[half];
    }
    return out;
}

TimeSeries aaft(const TimeSeries& s, Rng& rng, AaftIntermediates* diag) {
    const std::size_t n = static_cast<std::size_t>(s.length());
    if (n < 2) throw TooShort("aaft requires at least two samples");

    std::vector<double> x(s.values.data(), s.values.data() + n);

    // 1. sort x, keep both permutations
    SortWithRanks xs = sort_with_ranks(x);

    // 2-3. sorted Gaussian sample, reranked to follow x's ordering
    std::vector<double> gauss(n);
    for (double& g : gauss) g = rng.normal();
    std::sort(gauss.begin(), gauss.end());
    std::vector<double> rrv(n);
    for (std::size_t t = 0; t < n; ++t) rrv[t] = gauss[xs.rank_index[t]];

    // 4-5. randomize spectral phases, back to time domain
    std::vector<cd> ft = dft(rrv);
    std::vector<cd> ft_r = phase_randomize(ft, rng);
    std::vector<cd> inv = idft(ft_r);
    double max_re = 0.0, max_im = 0.0;
    for (const cd& v : inv) {
        max_re = std::max(max_re, std::abs(v.real()));
        max_im = std::max(max_im, std::abs(v.imag()));
    }
    if (max_im > 1e-9 * std::max(max_re, 1e-300))
        throw Error("aaft: inverse transform is not real within tolerance");
    std::vector<double> srs(n);
    for (std::size_t t = 0; t < n; ++t) srs[t] = inv[t].real();

    // 6-7. the surrogate takes x's sorted amplitudes in the rank order of srs
    SortWithRanks ss = sort_with_ranks(srs);
    Eigen::VectorXd out(n);
    for (std::size_t t = 0; t < n; ++t) out[static_cast<Eigen::Index>(t)] = xs.sorted[ss.rank_index[t]];

    if (diag) {
        diag->x_sorted = xs.sorted;
        diag->sort_index = xs.sort_index;
        diag->rank_index = xs.rank_index;
        diag->gaussian_sorted = gauss;
        diag->gaussian_reranked = rrv;
        diag->spectrum = ft;
        diag->randomized_spectrum = ft_r;
        diag->phase_randomized_series = srs;
        diag->s_rank_index = ss.rank_index;
    }
    return TimeSeries(std::move(out), s.sample_rate_hz);
}

}  // namespace ssaug
