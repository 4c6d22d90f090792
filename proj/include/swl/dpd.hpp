#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "swl/complex_signal.hpp"
#include "swl/errors.hpp"
#include "swl/memory_polynomial.hpp"

namespace swl {

struct DpdConfig {
    double tolerance = 1e-8;       // amplitude units
    std::size_t max_iterations = 50;
    double saturation_guard = 1.0; // max |x_dpd| as a multiple of the amplifier's saturation amplitude
    // Absolute clamp for |x_dpd|. When 0 the guard is saturation_guard times
    // the model's own fold-over amplitude; callers that know the physical
    // amplifier (or the fit coverage) set it directly.
    double guard_amplitude = 0.0;

    void validate() const {
        if (!(tolerance > 0.0)) throw config_error("DpdConfig: tolerance must be > 0");
        if (max_iterations < 1) throw config_error("DpdConfig: max_iterations must be >= 1");
        if (!(saturation_guard > 0.0)) throw config_error("DpdConfig: saturation_guard must be > 0");
        if (guard_amplitude < 0.0) throw config_error("DpdConfig: guard_amplitude must be >= 0");
    }
};

struct DpdReport {
    std::vector<std::size_t> iterations_per_sample;
    std::vector<bool> converged;
    std::vector<bool> clipped; // guard bound the sample (unachievable target)
    std::vector<double> residual;

    std::size_t clipped_count() const {
        return static_cast<std::size_t>(std::count(clipped.begin(), clipped.end(), true));
    }
    bool all_converged() const {
        return std::all_of(converged.begin(), converged.end(), [](bool b) { return b; });
    }
};

// Iterative pre-inversion of a memory-polynomial amplifier. Samples are
// processed causally: the memory distortion at n uses the already-inverted
// past x_dpd(n-m), matching the cascade the amplifier physically sees.
// Per sample the update
//     x^ <- (1-lambda) x^ + lambda (x_in - delta) / Delta(|x^|)
// runs from x^ = x_in(n) until successive iterates differ by <= tolerance.
// lambda starts at 1 and halves when |x^| grows twice in a row. Targets the
// amplifier cannot reach are clipped at the guard amplitude and flagged,
// never aborting the run.
inline std::pair<ComplexSignal, DpdReport> dpd_invert(const MemoryPolynomial& model,
                                                      const ComplexSignal& x_in,
                                                      const DpdConfig& cfg) {
    cfg.validate();
    if (std::abs(model.c(1, 0)) == 0.0)
        throw numerical_error("dpd_invert: c_{1,0} = 0, model is not invertible");

    const std::size_t n = x_in.samples.size();
    double max_in = 0.0;
    for (const cplx& v : x_in.samples) max_in = std::max(max_in, std::abs(v));

    double guard_amp = cfg.guard_amplitude;
    if (guard_amp == 0.0) {
        const double sat = model.saturation_input_amplitude(std::max(8.0 * max_in, 1.0));
        guard_amp = std::isfinite(sat) ? cfg.saturation_guard * sat
                                       : std::numeric_limits<double>::infinity();
    }

    std::vector<cplx> xd(n, {0.0, 0.0});
    DpdReport rep;
    rep.iterations_per_sample.assign(n, 0);
    rep.converged.assign(n, false);
    rep.clipped.assign(n, false);
    rep.residual.assign(n, 0.0);

    const std::size_t mm = model.memory_m();
    for (std::size_t t = 0; t < n; ++t) {
        cplx delta{0.0, 0.0};
        for (std::size_t m = 1; m <= mm; ++m) {
            if (t < m) break;
            const cplx v = xd[t - m];
            const double a = std::abs(v);
            cplx basis = v;
            for (std::size_t p = 1; p <= model.order_p(); ++p) {
                delta += model.c(p, m) * basis;
                basis *= a;
            }
        }
        const cplx target = x_in.samples[t] - delta;

        cplx xh = x_in.samples[t];
        double lambda = 1.0;
        int grow_streak = 0;
        double prev_resid = std::numeric_limits<double>::infinity();
        bool clipped = false;
        std::size_t it = 0;
        double resid = 0.0;
        bool done = false;
        for (it = 1; it <= cfg.max_iterations; ++it) {
            const cplx d = model.scaling_at(std::abs(xh));
            if (std::abs(d) < 1e-300)
                throw numerical_error("dpd_invert: scaling factor vanished during iteration");
            const cplx mapped = target / d;
            resid = std::abs(mapped - xh); // undamped fixed-point displacement
            if (resid <= cfg.tolerance) {
                done = true;
                break;
            }
            // divergence shows up as a growing displacement; damp the update
            if (resid > prev_resid * (1.0 + 1e-12)) {
                if (++grow_streak >= 2) {
                    lambda = std::max(lambda * 0.5, 1.0 / 64.0);
                    grow_streak = 0;
                }
            } else {
                grow_streak = 0;
            }
            prev_resid = resid;
            cplx next = (1.0 - lambda) * xh + lambda * mapped;
            const double mag = std::abs(next);
            if (mag > guard_amp) {
                next *= guard_amp / mag;
                clipped = true;
            }
            xh = next;
        }
        xd[t] = xh;
        rep.iterations_per_sample[t] = std::min<std::size_t>(it, cfg.max_iterations);
        rep.residual[t] = resid;
        rep.clipped[t] = clipped;
        rep.converged[t] = done && !clipped;
    }
    return {ComplexSignal(std::move(xd), x_in.sample_rate_hz), std::move(rep)};
}

// NMSE (dB) of the DPD+HPA cascade against the desired signal.
inline double linearization_error(const MemoryPolynomial& model, const ComplexSignal& x_in,
                                  const ComplexSignal& x_dpd) {
    if (x_in.samples.size() != x_dpd.samples.size())
        throw config_error("linearization_error: length mismatch");
    const ComplexSignal y = eval_mpm(model, x_dpd);
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < y.samples.size(); ++t) {
        num += std::norm(y.samples[t] - x_in.samples[t]);
        den += std::norm(x_in.samples[t]);
    }
    if (!(den > 0.0)) throw undefined_statistic_error("linearization_error: zero-power x_in");
    return std::max(10.0 * std::log10(std::max(num, 1e-320) / den), -400.0);
}

} // namespace swl
