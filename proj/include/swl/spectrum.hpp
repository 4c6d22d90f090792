#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "swl/complex_signal.hpp"
#include "swl/errors.hpp"
#include "swl/fft.hpp"
#include "swl/units.hpp"

namespace swl {

// Two-sided Welch PSD, frequencies ascending (-fs/2 .. fs/2). psd_db is a
// power density relative to the signal's total mean power, so that
// sum(10^(psd_db/10)) * bin_width == 1 exactly.
struct SpectrumEstimate {
    std::vector<double> freqs_hz;
    std::vector<double> psd_db;
    std::size_t segment_length = 0;
    double overlap_fraction = 0.0;
    double total_power_w = 0.0;

    double bin_width_hz() const {
        return freqs_hz.size() > 1 ? freqs_hz[1] - freqs_hz[0] : 0.0;
    }

    // Absolute density (W/Hz) at bin i.
    double psd_linear_w_per_hz(std::size_t i) const {
        return db_to_linear(psd_db[i]) * total_power_w;
    }
};

// Welch estimate with a Hann window. The averaged periodogram is rescaled so
// the integral over frequency equals the signal's exact mean power.
inline SpectrumEstimate psd_welch(const ComplexSignal& sig, std::size_t segment_length,
                                  double overlap_fraction = 0.5) {
    const std::size_t n = sig.samples.size();
    if (segment_length < 2) throw config_error("psd_welch: segment_length must be >= 2");
    if (segment_length > n) throw config_error("psd_welch: segment longer than signal");
    if (overlap_fraction < 0.0 || overlap_fraction >= 1.0)
        throw config_error("psd_welch: overlap_fraction must be in [0,1)");

    const std::size_t L = segment_length;
    const std::size_t hop = std::max<std::size_t>(1, L - static_cast<std::size_t>(overlap_fraction * static_cast<double>(L)));
    const std::size_t n_seg = (n - L) / hop + 1;

    std::vector<double> win(L);
    for (std::size_t i = 0; i < L; ++i)
        win[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(L - 1)));

    std::vector<double> acc(L, 0.0);
    std::vector<cplx> seg(L);
    for (std::size_t k = 0; k < n_seg; ++k) {
        for (std::size_t i = 0; i < L; ++i) seg[i] = sig.samples[k * hop + i] * win[i];
        std::vector<cplx> spec = fft(seg);
        for (std::size_t i = 0; i < L; ++i) acc[i] += std::norm(spec[i]);
    }

    const double fs = sig.sample_rate_hz;
    const double df = fs / static_cast<double>(L);
    const double total_power = sig.mean_power();
    if (!(total_power > 0.0)) throw undefined_statistic_error("psd_welch: zero-power signal");

    // fftshift and normalize: integral of density over frequency == 1
    double sum = 0.0;
    for (double v : acc) sum += v;
    if (!(sum > 0.0)) throw undefined_statistic_error("psd_welch: empty spectrum");

    SpectrumEstimate out;
    out.segment_length = L;
    out.overlap_fraction = overlap_fraction;
    out.total_power_w = total_power;
    out.freqs_hz.resize(L);
    out.psd_db.resize(L);
    const std::size_t half = L / 2;
    for (std::size_t i = 0; i < L; ++i) {
        const std::size_t src = (i + half) % L; // bin order: -fs/2 .. fs/2
        out.freqs_hz[i] = (static_cast<double>(i) - static_cast<double>(half)) * df;
        const double density = std::max(acc[src] / (sum * df), 1e-300);
        out.psd_db[i] = linear_to_db(density);
    }
    return out;
}

// Fraction of total power in [f_lo, f_hi) (bin centres).
inline double band_power_fraction(const SpectrumEstimate& spec, double f_lo, double f_hi) {
    if (!(f_lo < f_hi)) throw config_error("band_power_fraction: empty band");
    const double df = spec.bin_width_hz();
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < spec.freqs_hz.size(); ++i) {
        if (spec.freqs_hz[i] >= f_lo && spec.freqs_hz[i] < f_hi) {
            acc += db_to_linear(spec.psd_db[i]) * df;
            ++count;
        }
    }
    if (count == 0) throw config_error("band_power_fraction: no bins inside band");
    return acc;
}

// Adjacent-channel power ratio: main-band power over adjacent-band power (dBc).
inline double acpr_db(const SpectrumEstimate& spec,
                      std::pair<double, double> main_band,
                      std::pair<double, double> adjacent_band) {
    const double fs_half = -spec.freqs_hz.front();
    auto check = [&](std::pair<double, double> b, const char* name) {
        if (!(b.first < b.second)) throw config_error(std::string("acpr_db: empty ") + name);
        if (b.first < -fs_half - 1e-12 || b.second > fs_half + spec.bin_width_hz() + 1e-12)
            throw config_error(std::string("acpr_db: ") + name + " outside Nyquist range");
    };
    check(main_band, "main band");
    check(adjacent_band, "adjacent band");
    if (main_band.second > adjacent_band.first && adjacent_band.second > main_band.first)
        throw config_error("acpr_db: bands overlap");

    const double pm = band_power_fraction(spec, main_band.first, main_band.second);
    const double pa = band_power_fraction(spec, adjacent_band.first, adjacent_band.second);
    return linear_to_db(pm / std::max(pa, 1e-300));
}

} // namespace swl
