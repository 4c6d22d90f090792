#pragma once

#include <cmath>

#include "swl/channel.hpp"
#include "swl/complex_signal.hpp"
#include "swl/errors.hpp"
#include "swl/linalg.hpp"
#include "swl/memory_polynomial.hpp"

namespace swl {

struct EigResult {
    double lambda_max = 0.0;
    cvec w_r;               // unit norm, first nonzero component real positive
    bool degenerate = false; // relative eigengap below 1e-10
    std::size_t iterations = 0;
};

namespace detail {

inline void fix_phase(cvec& v) {
    for (const cplx& x : v) {
        const double a = std::abs(x);
        if (a > 1e-12) {
            const cplx rot = std::conj(x) / a;
            for (cplx& y : v) y *= rot;
            break;
        }
    }
}

inline double power_iterate(const CMatrix& g, cvec& v, std::size_t max_iter, std::size_t* iters_out) {
    double lambda = 0.0;
    std::size_t it = 0;
    for (it = 1; it <= max_iter; ++it) {
        cvec gv = g.mul(v);
        lambda = std::real(vec_dot(v, gv)); // Rayleigh quotient (v unit norm)
        double resid = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) resid += std::norm(gv[i] - lambda * v[i]);
        resid = std::sqrt(resid);
        const double nrm = vec_norm(gv);
        if (nrm > 0.0)
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = gv[i] / nrm;
        if (resid <= 1e-12 * std::max(lambda, 1e-300)) break;
    }
    if (iters_out) *iters_out = std::min(it, max_iter);
    return lambda;
}

} // namespace detail

// Dominant eigenpair of H H^H by power iteration from the deterministic
// all-ones start vector, Rayleigh-quotient residual test at 1e-12. A
// relative eigengap below 1e-10 sets the degenerate flag (result still
// returned, phase convention breaks the tie).
inline EigResult principal_eig(const ChannelMatrix& ch) {
    const std::size_t nr = ch.n_rx();
    if (nr == 0) throw config_error("principal_eig: empty channel");
    const CMatrix g = ch.h.gram_left();

    EigResult out;
    out.w_r.assign(nr, cplx(1.0 / std::sqrt(static_cast<double>(nr)), 0.0));
    out.lambda_max = detail::power_iterate(g, out.w_r, 5000, &out.iterations);
    detail::fix_phase(out.w_r);

    if (nr > 1) {
        // second eigenvalue from the deflated matrix, for the gap diagnostic
        CMatrix defl = g;
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nr; ++j)
                defl(i, j) -= out.lambda_max * out.w_r[i] * std::conj(out.w_r[j]);
        cvec v2(nr);
        for (std::size_t i = 0; i < nr; ++i)
            v2[i] = cplx(1.0 / std::sqrt(static_cast<double>(nr)), (i % 2) ? 1e-3 : -1e-3);
        const double n2 = vec_norm(v2);
        for (cplx& x : v2) x /= n2;
        const double lambda2 = detail::power_iterate(defl, v2, 200, nullptr);
        if (out.lambda_max > 0.0 &&
            (out.lambda_max - std::abs(lambda2)) / out.lambda_max < 1e-10)
            out.degenerate = true;
    }
    return out;
}

struct BeamformingSolution {
    cvec w_r;           // receive combiner, unit norm
    cvec w_t;           // transmit weights after the per-antenna gain division
    double lambda_max = 0.0;
    cvec delta_vec;     // per-antenna average scaling at the operating point
};

// MRT direction H^H w_r / ||H^H w_r||.
inline cvec mrt_direction(const ChannelMatrix& ch, const cvec& w_r) {
    cvec d = ch.h.mul_adjoint(w_r);
    const double n = vec_norm(d);
    if (!(n > 0.0)) throw numerical_error("mrt_direction: zero channel");
    for (cplx& x : d) x /= n;
    return d;
}

// Transmit weights with per-antenna amplifier compensation: the MRT direction
// Hadamard-divided by the average scaling each amplifier applies at its
// operating point. The scaling depends on the drive, which depends on the
// weights, so the division is iterated to a fixed point (tol 1e-9, 20 rounds).
// The average gain is E{Delta(x_in_i(n))} over the actual drive sequence.
inline BeamformingSolution hpa_aware_weights(const ChannelMatrix& ch, const EigResult& eig,
                                             const MemoryPolynomial& model,
                                             double symbol_power_w, const ComplexSignal& x) {
    const cvec mrt = mrt_direction(ch, eig.w_r);
    const std::size_t nt = ch.n_tx();
    const double amp_scale = std::sqrt(symbol_power_w);

    BeamformingSolution sol;
    sol.w_r = eig.w_r;
    sol.lambda_max = eig.lambda_max;
    sol.w_t = mrt;
    sol.delta_vec.assign(nt, cplx(1.0, 0.0));

    for (std::size_t round = 0; round < 20; ++round) {
        cvec delta(nt);
        for (std::size_t i = 0; i < nt; ++i) {
            cplx acc{0.0, 0.0};
            const double wmag = std::abs(sol.w_t[i]) * amp_scale;
            for (const cplx& s : x.samples) acc += model.scaling_at(wmag * std::abs(s));
            delta[i] = acc / static_cast<double>(x.samples.size());
            if (std::abs(delta[i]) < 1e-12)
                throw numerical_error("hpa_aware_weights: vanishing scaling on antenna " + std::to_string(i));
        }
        double change = 0.0;
        for (std::size_t i = 0; i < nt; ++i) {
            const cplx next = mrt[i] / delta[i];
            change = std::max(change, std::abs(next - sol.w_t[i]));
            sol.w_t[i] = next;
        }
        sol.delta_vec = delta;
        if (change <= 1e-9) break;
    }
    return sol;
}

} // namespace swl
