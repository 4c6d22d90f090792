#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "swl/complex_signal.hpp"
#include "swl/errors.hpp"
#include "swl/fft.hpp"
#include "swl/rng.hpp"

namespace swl {

inline std::vector<double> zero_phases(std::size_t n_tones) {
    return std::vector<double>(n_tones, 0.0);
}

inline std::vector<double> random_phases(std::size_t n_tones, std::uint64_t seed) {
    Rng rng(derive_seed(seed, "multisine_phases"));
    std::vector<double> ph(n_tones);
    for (auto& p : ph) p = 2.0 * M_PI * rng.uniform();
    return ph;
}

// Sum of equal-amplitude complex exponentials on an integer frequency comb
// centred near DC, normalized to unit mean power. With zero phases the
// coherent peak sits at sample 0, so PAPR = 10 log10(n_tones) whenever
// n_samples spans whole periods (n_samples multiple of fs/spacing).
inline ComplexSignal gen_multisine(std::size_t n_tones, double tone_spacing_hz,
                                   std::size_t n_samples, double sample_rate_hz,
                                   const std::vector<double>& phases) {
    if (n_tones == 0 || n_samples == 0) throw config_error("gen_multisine: empty request");
    if (!(tone_spacing_hz > 0.0) || !(sample_rate_hz > 0.0))
        throw config_error("gen_multisine: spacing and sample rate must be > 0");
    if (static_cast<double>(n_tones) * tone_spacing_hz >= sample_rate_hz)
        throw config_error("gen_multisine: n_tones*tone_spacing >= sample_rate (aliasing)");
    if (phases.size() != n_tones) throw config_error("gen_multisine: phase count != n_tones");

    const long k0 = static_cast<long>((n_tones - 1) / 2);
    std::vector<cplx> s(n_samples, {0.0, 0.0});
    for (std::size_t k = 0; k < n_tones; ++k) {
        const double f = (static_cast<double>(k) - static_cast<double>(k0)) * tone_spacing_hz;
        const double w = 2.0 * M_PI * f / sample_rate_hz;
        for (std::size_t n = 0; n < n_samples; ++n) {
            const double arg = w * static_cast<double>(n) + phases[k];
            s[n] += cplx(std::cos(arg), std::sin(arg));
        }
    }
    ComplexSignal out(std::move(s), sample_rate_hz);
    return out.scaled_to_power(1.0);
}

enum class Constellation { QPSK, QAM16 };

inline Constellation constellation_from_string(const std::string& s) {
    if (s == "QPSK" || s == "qpsk") return Constellation::QPSK;
    if (s == "16QAM" || s == "16qam" || s == "QAM16") return Constellation::QAM16;
    throw config_error("unknown constellation: " + s);
}

namespace detail {

inline cplx draw_symbol(Constellation c, Rng& rng) {
    if (c == Constellation::QPSK) {
        const double re = (rng.next_u64() & 1) ? 1.0 : -1.0;
        const double im = (rng.next_u64() & 1) ? 1.0 : -1.0;
        return cplx(re, im) / std::sqrt(2.0);
    }
    static const double lv[4] = {-3.0, -1.0, 1.0, 3.0};
    const double re = lv[rng.next_u64() & 3];
    const double im = lv[rng.next_u64() & 3];
    return cplx(re, im) / std::sqrt(10.0);
}

} // namespace detail

// Cyclic-prefix-free multicarrier waveform: per symbol, n_subcarriers data
// symbols on centred bins of an oversampled IFFT. Symbol edges get a
// raised-cosine taper (fraction of the symbol length) for spectral
// containment; taper 0 disables it. Unit mean power, deterministic per seed.
inline ComplexSignal gen_ofdm_like(std::size_t n_subcarriers, std::size_t n_symbols,
                                   Constellation constellation, std::size_t oversampling,
                                   std::uint64_t seed, double sample_rate_hz = 1.0,
                                   double edge_taper = 0.1) {
    if (n_subcarriers == 0 || n_symbols == 0) throw config_error("gen_ofdm_like: empty request");
    if (oversampling < 2) throw config_error("gen_ofdm_like: oversampling must be >= 2");
    if (edge_taper < 0.0 || edge_taper >= 0.5) throw config_error("gen_ofdm_like: edge_taper must be in [0, 0.5)");

    const std::size_t nfft = n_subcarriers * oversampling;
    Rng rng(derive_seed(seed, "ofdm_like"));

    std::vector<double> win(nfft, 1.0);
    const std::size_t k = static_cast<std::size_t>(edge_taper * static_cast<double>(nfft));
    for (std::size_t i = 0; i < k; ++i) {
        const double r = 0.5 * (1.0 - std::cos(M_PI * (static_cast<double>(i) + 0.5) / static_cast<double>(k)));
        win[i] = r;
        win[nfft - 1 - i] = r;
    }

    std::vector<cplx> out;
    out.reserve(nfft * n_symbols);
    for (std::size_t sym = 0; sym < n_symbols; ++sym) {
        std::vector<cplx> bins(nfft, {0.0, 0.0});
        for (std::size_t sc = 0; sc < n_subcarriers; ++sc) {
            const long idx = static_cast<long>(sc) - static_cast<long>(n_subcarriers / 2);
            const std::size_t bin = static_cast<std::size_t>((idx + static_cast<long>(nfft)) % static_cast<long>(nfft));
            bins[bin] = detail::draw_symbol(constellation, rng);
        }
        std::vector<cplx> td = ifft(std::move(bins));
        const double g = static_cast<double>(nfft) / std::sqrt(static_cast<double>(n_subcarriers));
        for (std::size_t n = 0; n < nfft; ++n) out.push_back(td[n] * g * win[n]);
    }
    ComplexSignal sig(std::move(out), sample_rate_hz);
    return sig.scaled_to_power(1.0);
}

// Multiply by a complex exponential: shifts the spectrum by f_offset_hz.
inline ComplexSignal frequency_shift(const ComplexSignal& sig, double f_offset_hz) {
    ComplexSignal out(sig);
    const double w = 2.0 * M_PI * f_offset_hz / sig.sample_rate_hz;
    for (std::size_t n = 0; n < out.samples.size(); ++n)
        out.samples[n] *= cplx(std::cos(w * static_cast<double>(n)), std::sin(w * static_cast<double>(n)));
    return out;
}

// Surrogate for a multi-channel carrier block: n_bands frequency-shifted
// OFDM-like sub-band signals summed, band centres spaced band_spacing_hz
// apart and centred around DC. Unit mean power.
inline ComplexSignal gen_multiband(std::size_t n_bands, double band_spacing_hz,
                                   std::size_t n_subcarriers, std::size_t n_symbols,
                                   Constellation constellation, std::size_t oversampling,
                                   std::uint64_t seed, double sample_rate_hz,
                                   double edge_taper = 0.1) {
    if (n_bands == 0) throw config_error("gen_multiband: n_bands must be >= 1");
    ComplexSignal acc = gen_ofdm_like(n_subcarriers, n_symbols, constellation, oversampling,
                                      derive_seed(seed, "band", 0), sample_rate_hz, edge_taper);
    const double c0 = 0.5 * static_cast<double>(n_bands - 1);
    acc = frequency_shift(acc, (0.0 - c0) * band_spacing_hz);
    for (std::size_t b = 1; b < n_bands; ++b) {
        ComplexSignal band = gen_ofdm_like(n_subcarriers, n_symbols, constellation, oversampling,
                                           derive_seed(seed, "band", b), sample_rate_hz, edge_taper);
        band = frequency_shift(band, (static_cast<double>(b) - c0) * band_spacing_hz);
        for (std::size_t n = 0; n < acc.samples.size(); ++n) acc.samples[n] += band.samples[n];
    }
    return acc.scaled_to_power(1.0);
}

} // namespace swl
