#pragma once

#include <cmath>
#include <variant>

#include "swl/beamforming.hpp"
#include "swl/channel.hpp"
#include "swl/dpd.hpp"
#include "swl/errors.hpp"
#include "swl/memory_polynomial.hpp"
#include "swl/reference_amplifier.hpp"

namespace swl {

struct LinkNoise {
    double sigma_v_sq_w = 0.0; // antenna noise
    double sigma_a_sq_w = 0.0; // RF-to-baseband conversion noise (ID path only)

    void validate() const {
        if (!(sigma_v_sq_w > 0.0) || !(sigma_a_sq_w > 0.0))
            throw config_error("LinkNoise: noise powers must be > 0");
    }
};

namespace detail {

// Combine per-antenna signals through the channel and receive weights:
// psi(n) = w_r^H H s(n).
inline cvec combine(const ChannelMatrix& ch, const cvec& w_r,
                    const std::vector<ComplexSignal>& per_antenna) {
    const std::size_t n = per_antenna.front().samples.size();
    const std::size_t nr = ch.n_rx();
    const std::size_t nt = ch.n_tx();
    // row vector q = w_r^H H, then psi = q . s
    cvec q(nt, {0.0, 0.0});
    for (std::size_t t = 0; t < nt; ++t) {
        cplx acc{0.0, 0.0};
        for (std::size_t r = 0; r < nr; ++r) acc += std::conj(w_r[r]) * ch.h(r, t);
        q[t] = acc;
    }
    cvec psi(n, {0.0, 0.0});
    for (std::size_t t = 0; t < nt; ++t)
        for (std::size_t i = 0; i < n; ++i) psi[i] += q[t] * per_antenna[t].samples[i];
    return psi;
}

inline double mean_norm(const cvec& v) {
    double acc = 0.0;
    for (const cplx& x : v) acc += std::norm(x);
    return acc / static_cast<double>(v.size());
}

} // namespace detail

struct LinkSnr {
    double gamma = 0.0;
    double distortion_power_w = 0.0; // D entering (or reported next to) the SNR
};

// Post-combining SNR conditioned on the channel:
//   gamma = P_t Lambda_max ||w_r||^2 / (zeta D + sigma_v^2 ||w_r||^2)
// D is obtained by simulating the per-antenna amplifier chain on the actual
// drive signals. With zeta=1 the chain is the raw amplifier and D is the
// combined power of the memory distortion; with zeta=0 the chain is
// DPD+amplifier, the residual (tolerance-level) distortion is reported but
// excluded from the SNR.
inline LinkSnr link_snr(const ChannelMatrix& ch, const BeamformingSolution& sol,
                        const MemoryPolynomial& model, const ComplexSignal& x,
                        double symbol_power_w, const LinkNoise& noise, int zeta,
                        const DpdConfig& dpd_cfg) {
    noise.validate();
    if (zeta != 0 && zeta != 1) throw config_error("link_snr: zeta must be 0 or 1");
    const double px = x.mean_power();
    if (std::abs(px - 1.0) > 1e-6)
        throw config_error("link_snr: x must have unit mean power before scaling");

    const std::size_t nt = ch.n_tx();
    const double amp = std::sqrt(symbol_power_w);
    const double wr2 = vec_norm(sol.w_r) * vec_norm(sol.w_r);

    double d_power = 0.0;
    if (zeta == 1) {
        std::vector<ComplexSignal> delta_sig;
        delta_sig.reserve(nt);
        for (std::size_t i = 0; i < nt; ++i) {
            ComplexSignal drive(x);
            for (cplx& s : drive.samples) s *= sol.w_t[i] * amp;
            Decomposition dec = decompose(model, drive);
            delta_sig.emplace_back(std::move(dec.distortion), x.sample_rate_hz);
        }
        d_power = detail::mean_norm(detail::combine(ch, sol.w_r, delta_sig));
    } else {
        // DPD chain on the uncompensated MRT targets (the cascade is linear,
        // so no per-antenna gain division is needed)
        const cvec mrt = mrt_direction(ch, sol.w_r);
        std::vector<ComplexSignal> err_sig;
        err_sig.reserve(nt);
        for (std::size_t i = 0; i < nt; ++i) {
            ComplexSignal target(x);
            for (cplx& s : target.samples) s *= mrt[i] * amp;
            auto [xd, rep] = dpd_invert(model, target, dpd_cfg);
            ComplexSignal out = eval_mpm(model, xd);
            for (std::size_t k = 0; k < out.samples.size(); ++k) out.samples[k] -= target.samples[k];
            err_sig.push_back(std::move(out));
        }
        d_power = detail::mean_norm(detail::combine(ch, sol.w_r, err_sig));
    }

    LinkSnr out;
    out.distortion_power_w = d_power;
    const double zeta_d = (zeta == 1) ? d_power : 0.0;
    // with no distortion term the ||w_r||^2 factors cancel algebraically,
    // recovering the classical MRC/MRT expression bit for bit
    out.gamma = (zeta_d == 0.0)
                    ? symbol_power_w * sol.lambda_max / noise.sigma_v_sq_w
                    : symbol_power_w * sol.lambda_max * wr2 / (zeta_d + noise.sigma_v_sq_w * wr2);
    return out;
}

// ---- experiment-level chain measurement ----

using HpaVariant = std::variant<MemoryPolynomial, ReferenceAmplifier>;

inline ComplexSignal eval_hpa(const HpaVariant& amp, const ComplexSignal& x) {
    if (std::holds_alternative<MemoryPolynomial>(amp))
        return eval_mpm(std::get<MemoryPolynomial>(amp), x);
    return eval_reference(std::get<ReferenceAmplifier>(amp), x);
}

// One transmit chain: the physical amplifier plus the identified model the
// predistorter (and the beamforming bookkeeping) works with.
struct HpaChain {
    HpaVariant truth;
    MemoryPolynomial dpd_model;
    DpdConfig dpd;
};

// Everything the SWIPT formulas need from one channel realization. The
// achieved/residual split comes from projecting the combined amplifier
// output onto the transmitted symbol sequence (least squares), so
// achieved + residual equals the combined signal power exactly.
struct LinkMeasurement {
    double lambda_max = 0.0;
    double nominal_signal_w = 0.0;    // P_t Lambda_max
    double achieved_signal_w = 0.0;   // |alpha|^2, x unit power
    double residual_w = 0.0;          // everything the chain added besides alpha x
    double memory_distortion_w = 0.0; // Eq-form distortion for the rate denominator
    double eh_input_w = 0.0;          // time-averaged |Psi|^2 + sigma_v^2
    std::size_t clipped_samples = 0;
    bool all_converged = true;
};

// Simulate one realization. zeta=1 drives the raw amplifier with plain MRT
// weights (an HPA-unaware transmitter); zeta=0 predistorts the same targets.
// For zeta=1 memory_distortion_w is the combined power of the model's memory
// distortion on the drive; for zeta=0 it is the combined residual restricted
// to samples whose inversion was flagged (zero when everything converged).
inline LinkMeasurement measure_link(const ChannelMatrix& ch, const EigResult& eig,
                                    const ComplexSignal& x, double symbol_power_w,
                                    const LinkNoise& noise, int zeta, const HpaChain& chain) {
    noise.validate();
    const std::size_t nt = ch.n_tx();
    const std::size_t n = x.samples.size();
    const double amp = std::sqrt(symbol_power_w);
    const cvec mrt = mrt_direction(ch, eig.w_r);

    LinkMeasurement out;
    out.lambda_max = eig.lambda_max;
    out.nominal_signal_w = symbol_power_w * eig.lambda_max;

    std::vector<ComplexSignal> tx;
    tx.reserve(nt);
    std::vector<bool> flagged(n, false);

    if (zeta == 1) {
        std::vector<ComplexSignal> delta_sig;
        for (std::size_t i = 0; i < nt; ++i) {
            ComplexSignal drive(x);
            for (cplx& s : drive.samples) s *= mrt[i] * amp;
            Decomposition dec = decompose(chain.dpd_model, drive);
            delta_sig.emplace_back(std::move(dec.distortion), x.sample_rate_hz);
            tx.push_back(eval_hpa(chain.truth, drive));
        }
        out.memory_distortion_w = detail::mean_norm(detail::combine(ch, eig.w_r, delta_sig));
    } else {
        for (std::size_t i = 0; i < nt; ++i) {
            ComplexSignal target(x);
            for (cplx& s : target.samples) s *= mrt[i] * amp;
            auto [xd, rep] = dpd_invert(chain.dpd_model, target, chain.dpd);
            out.clipped_samples += rep.clipped_count();
            if (!rep.all_converged()) out.all_converged = false;
            for (std::size_t k = 0; k < n; ++k)
                if (!rep.converged[k]) flagged[k] = true;
            tx.push_back(eval_hpa(chain.truth, xd));
        }
    }

    const cvec psi = detail::combine(ch, eig.w_r, tx);
    cplx alpha{0.0, 0.0};
    double px = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        alpha += psi[k] * std::conj(x.samples[k]);
        px += std::norm(x.samples[k]);
    }
    alpha /= px;
    double resid = 0.0, resid_flagged = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double e = std::norm(psi[k] - alpha * x.samples[k]);
        resid += e;
        if (zeta == 0 && flagged[k]) resid_flagged += e;
    }
    out.achieved_signal_w = std::norm(alpha) * px / static_cast<double>(n);
    out.residual_w = resid / static_cast<double>(n);
    if (zeta == 0) out.memory_distortion_w = resid_flagged / static_cast<double>(n);
    out.eh_input_w = out.achieved_signal_w + out.residual_w + noise.sigma_v_sq_w;
    return out;
}

} // namespace swl
