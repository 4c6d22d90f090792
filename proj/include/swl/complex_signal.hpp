#pragma once

#include <complex>
#include <vector>

#include "swl/errors.hpp"

namespace swl {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Uniformly sampled complex baseband sequence. Immutable by convention:
// every DSP stage returns a new signal.
struct ComplexSignal {
    std::vector<cplx> samples;
    double sample_rate_hz = 1.0;

    ComplexSignal() = default;
    ComplexSignal(std::vector<cplx> s, double fs) : samples(std::move(s)), sample_rate_hz(fs) {
        if (samples.empty()) throw config_error("ComplexSignal: empty sample vector");
        if (!(sample_rate_hz > 0.0)) throw config_error("ComplexSignal: sample_rate_hz must be > 0");
    }

    std::size_t size() const { return samples.size(); }

    double mean_power() const {
        double acc = 0.0;
        for (const cplx& s : samples) acc += std::norm(s);
        return acc / static_cast<double>(samples.size());
    }

    double peak_power() const {
        double pk = 0.0;
        for (const cplx& s : samples) pk = std::max(pk, std::norm(s));
        return pk;
    }

    // Returns a copy scaled to the requested mean power.
    ComplexSignal scaled_to_power(double target_power_w) const {
        const double p = mean_power();
        if (!(p > 0.0)) throw undefined_statistic_error("scaled_to_power: zero-power signal");
        ComplexSignal out(*this);
        const double g = std::sqrt(target_power_w / p);
        for (cplx& s : out.samples) s *= g;
        return out;
    }
};

} // namespace swl
