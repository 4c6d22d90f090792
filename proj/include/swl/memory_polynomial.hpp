#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <json.hpp>

#include "swl/complex_signal.hpp"
#include "swl/errors.hpp"

namespace swl {

// Memory polynomial amplifier model:
//   y(n) = sum_{p=1..P} sum_{m=0..M} c_{p,m} x(n-m) |x(n-m)|^{p-1}
// Coefficients are stored in C ordering (p=1,m=0..M), (p=2,m=0..M), ...
// Pre-history is zero-padded: x(n) = 0 for n < 0.
class MemoryPolynomial {
public:
    MemoryPolynomial() = default;
    MemoryPolynomial(std::size_t order_p, std::size_t memory_m, cvec coeffs)
        : order_p_(order_p), memory_m_(memory_m), coeffs_(std::move(coeffs)) {
        if (order_p_ == 0) throw config_error("MemoryPolynomial: order_p must be >= 1");
        if (coeffs_.size() != order_p_ * (memory_m_ + 1))
            throw config_error("MemoryPolynomial: expected P*(M+1) coefficients");
    }

    std::size_t order_p() const { return order_p_; }
    std::size_t memory_m() const { return memory_m_; }
    std::size_t n_coeffs() const { return coeffs_.size(); }
    const cvec& coeffs() const { return coeffs_; }

    // c_{p,m} with p in [1,P], m in [0,M]
    const cplx& c(std::size_t p, std::size_t m) const {
        return coeffs_[(p - 1) * (memory_m_ + 1) + m];
    }

    // Per-sample scaling factor at input amplitude a: sum_p c_{p,0} a^{p-1}.
    cplx scaling_at(double a) const {
        cplx acc{0.0, 0.0};
        double pw = 1.0;
        for (std::size_t p = 1; p <= order_p_; ++p) {
            acc += c(p, 0) * pw;
            pw *= a;
        }
        return acc;
    }

    // Memoryless AM/AM response |a * scaling(a)|.
    double am_am(double a) const { return std::abs(scaling_at(a)) * a; }

    // Input amplitude of the first AM/AM peak (the invertibility limit).
    // Beyond it the response folds over, so the scan stops at the first
    // persistent drop. Returns +inf when the response is still growing at
    // search_max (e.g. a linear model).
    double saturation_input_amplitude(double search_max, std::size_t grid = 4096) const {
        double best_a = 0.0, best_g = 0.0;
        bool interior_peak = false;
        for (std::size_t i = 1; i <= grid; ++i) {
            const double a = search_max * static_cast<double>(i) / static_cast<double>(grid);
            const double g = am_am(a);
            if (g > best_g) {
                best_g = g;
                best_a = a;
            } else if (g < best_g * (1.0 - 1e-6)) {
                interior_peak = true;
                break;
            }
        }
        if (!interior_peak) return std::numeric_limits<double>::infinity();
        // golden-section refine around the grid peak
        double lo = std::max(best_a - 2.0 * search_max / static_cast<double>(grid), 0.0);
        double hi = std::min(best_a + 2.0 * search_max / static_cast<double>(grid), search_max);
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        for (int it = 0; it < 80; ++it) {
            if (am_am(x1) < am_am(x2)) lo = x1; else hi = x2;
            x1 = hi - gr * (hi - lo);
            x2 = lo + gr * (hi - lo);
        }
        return 0.5 * (lo + hi);
    }

private:
    std::size_t order_p_ = 1, memory_m_ = 0;
    cvec coeffs_ = {cplx(1.0, 0.0)};
};

// Direct evaluation of the model. Output has the input's length; the first M
// samples see zero pre-history.
inline ComplexSignal eval_mpm(const MemoryPolynomial& model, const ComplexSignal& x_in) {
    const std::size_t n = x_in.samples.size();
    if (n <= model.memory_m()) throw config_error("eval_mpm: signal shorter than memory depth");
    std::vector<cplx> y(n, {0.0, 0.0});
    for (std::size_t t = 0; t < n; ++t) {
        cplx acc{0.0, 0.0};
        for (std::size_t m = 0; m <= model.memory_m(); ++m) {
            if (t < m) break;
            const cplx v = x_in.samples[t - m];
            const double a = std::abs(v);
            cplx basis = v; // v * a^{p-1}, built incrementally
            for (std::size_t p = 1; p <= model.order_p(); ++p) {
                acc += model.c(p, m) * basis;
                basis *= a;
            }
        }
        y[t] = acc;
    }
    return ComplexSignal(std::move(y), x_in.sample_rate_hz);
}

// Regression matrix Phi for n = M .. N-1 (rows) against C-ordered columns:
// entry = x(n-m) |x(n-m)|^{p-1}.
inline std::vector<cvec> build_phi(const ComplexSignal& x_in, std::size_t order_p, std::size_t memory_m) {
    const std::size_t n = x_in.samples.size();
    if (n < memory_m + 1) throw config_error("build_phi: signal shorter than memory depth + 1");
    const std::size_t n_rows = n - memory_m;
    const std::size_t n_cols = order_p * (memory_m + 1);
    std::vector<cvec> phi(n_rows, cvec(n_cols));
    for (std::size_t r = 0; r < n_rows; ++r) {
        const std::size_t t = r + memory_m;
        for (std::size_t m = 0; m <= memory_m; ++m) {
            const cplx v = x_in.samples[t - m];
            const double a = std::abs(v);
            cplx basis = v;
            for (std::size_t p = 1; p <= order_p; ++p) {
                phi[r][(p - 1) * (memory_m + 1) + m] = basis;
                basis *= a;
            }
        }
    }
    return phi;
}

// Split of the model output into the per-sample scaling of the current input
// and the additive memory distortion. scaling[n]*x[n] + distortion[n]
// reproduces eval_mpm exactly.
struct Decomposition {
    cvec scaling;
    cvec distortion;
};

inline Decomposition decompose(const MemoryPolynomial& model, const ComplexSignal& x_in) {
    const std::size_t n = x_in.samples.size();
    if (n <= model.memory_m()) throw config_error("decompose: signal shorter than memory depth");
    Decomposition out;
    out.scaling.resize(n);
    out.distortion.assign(n, {0.0, 0.0});
    for (std::size_t t = 0; t < n; ++t) {
        out.scaling[t] = model.scaling_at(std::abs(x_in.samples[t]));
        cplx acc{0.0, 0.0};
        for (std::size_t m = 1; m <= model.memory_m(); ++m) {
            if (t < m) break;
            const cplx v = x_in.samples[t - m];
            const double a = std::abs(v);
            cplx basis = v;
            for (std::size_t p = 1; p <= model.order_p(); ++p) {
                acc += model.c(p, m) * basis;
                basis *= a;
            }
        }
        out.distortion[t] = acc;
    }
    return out;
}

// Empirical E{x*(n) delta(n)} over n >= M plus its standard error, the
// quantity behind the input-distortion correlation claim: zero (statistically)
// for i.i.d. input, nonzero for autocorrelated input.
struct CorrelationEstimate {
    cplx mean{0.0, 0.0};
    double std_error = 0.0;
    std::size_t count = 0;
};

inline CorrelationEstimate input_distortion_correlation(const MemoryPolynomial& model,
                                                        const ComplexSignal& x_in) {
    const std::size_t m0 = model.memory_m();
    if (x_in.samples.size() < 10 * (m0 + 1))
        throw config_error("input_distortion_correlation: signal too short (need >= 10*(M+1))");
    const Decomposition d = decompose(model, x_in);
    const std::size_t n = x_in.samples.size();
    cplx sum{0.0, 0.0};
    for (std::size_t t = m0; t < n; ++t) sum += std::conj(x_in.samples[t]) * d.distortion[t];
    const std::size_t count = n - m0;
    const cplx mean = sum / static_cast<double>(count);

    double var = 0.0;
    for (std::size_t t = m0; t < n; ++t) {
        const cplx z = std::conj(x_in.samples[t]) * d.distortion[t] - mean;
        var += std::norm(z);
    }
    var /= static_cast<double>(count > 1 ? count - 1 : 1);

    CorrelationEstimate out;
    out.mean = mean;
    out.std_error = std::sqrt(var / static_cast<double>(count));
    out.count = count;
    return out;
}

// JSON round trip: {order_p, memory_m, coeffs: [[re, im], ...]} in C ordering.
inline nlohmann::json to_json(const MemoryPolynomial& model) {
    nlohmann::json j;
    j["order_p"] = model.order_p();
    j["memory_m"] = model.memory_m();
    nlohmann::json arr = nlohmann::json::array();
    for (const cplx& c : model.coeffs()) arr.push_back({c.real(), c.imag()});
    j["coeffs"] = arr;
    return j;
}

inline MemoryPolynomial mpm_from_json(const nlohmann::json& j) {
    const std::size_t p = j.at("order_p").get<std::size_t>();
    const std::size_t m = j.at("memory_m").get<std::size_t>();
    cvec coeffs;
    for (const auto& e : j.at("coeffs")) coeffs.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return MemoryPolynomial(p, m, std::move(coeffs));
}

} // namespace swl
