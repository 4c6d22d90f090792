#pragma once

#include <cmath>
#include <vector>

#include "swl/complex_signal.hpp"
#include "swl/errors.hpp"
#include "swl/units.hpp"

namespace swl {

// Synthetic "physical" amplifier: a short FIR (memory) followed by a Rapp
// AM/AM nonlinearity, phase preserved. Stands in for a measured class-AB
// device when generating identification data and running experiment chains.
struct ReferenceAmplifier {
    cvec memory_fir;
    double smoothness = 1.0;           // Rapp knee sharpness s
    double saturation_amplitude = std::sqrt(2.0); // a_sat: unit-power drive sits 3 dB below
    double small_signal_gain = 1.0;

    ReferenceAmplifier() : memory_fir(default_taps()) {}
    ReferenceAmplifier(cvec taps, double s, double a_sat, double gain)
        : memory_fir(std::move(taps)), smoothness(s), saturation_amplitude(a_sat), small_signal_gain(gain) {
        if (memory_fir.empty()) throw config_error("ReferenceAmplifier: empty FIR");
        if (!(smoothness > 0.0) || !(saturation_amplitude > 0.0) || !(small_signal_gain > 0.0))
            throw config_error("ReferenceAmplifier: smoothness, saturation and gain must be > 0");
    }

    // Default memory: a dominant tap plus small echoes, L2-normalized.
    static cvec default_taps() {
        cvec t = {cplx(1.0, 0.0), cplx(0.003, 0.0), cplx(-0.001, 0.0), cplx(0.0003, 0.0)};
        double norm = 0.0;
        for (const cplx& v : t) norm += std::norm(v);
        norm = std::sqrt(norm);
        for (cplx& v : t) v /= norm;
        return t;
    }

    // Amplifier whose saturation sits backoff_db above the given mean drive
    // power, keeping experiment operating points explicit.
    static ReferenceAmplifier for_drive_power(double drive_power_w, double backoff_db,
                                              double s = 1.0, double gain = 1.0) {
        if (!(drive_power_w > 0.0)) throw config_error("for_drive_power: drive power must be > 0");
        return ReferenceAmplifier(default_taps(), s, std::sqrt(drive_power_w * db_to_linear(backoff_db)), gain);
    }

    // Rapp AM/AM: G a / (1 + (a/a_sat)^{2s})^{1/(2s)}
    double am_am(double a) const {
        const double r = a / saturation_amplitude;
        return small_signal_gain * a / std::pow(1.0 + std::pow(r, 2.0 * smoothness), 1.0 / (2.0 * smoothness));
    }
};

inline ComplexSignal eval_reference(const ReferenceAmplifier& amp, const ComplexSignal& x_in) {
    const std::size_t n = x_in.samples.size();
    std::vector<cplx> y(n);
    for (std::size_t t = 0; t < n; ++t) {
        cplx u{0.0, 0.0};
        for (std::size_t m = 0; m < amp.memory_fir.size() && m <= t; ++m)
            u += amp.memory_fir[m] * x_in.samples[t - m];
        const double a = std::abs(u);
        y[t] = (a > 0.0) ? u * (amp.am_am(a) / a) : cplx(0.0, 0.0);
    }
    return ComplexSignal(std::move(y), x_in.sample_rate_hz);
}

} // namespace swl
