#pragma once

#include <sstream>
#include <string>

#include "swl/linalg.hpp"
#include "swl/memory_polynomial.hpp"

namespace swl {

struct MpmFit {
    MemoryPolynomial model;
    double condition_estimate = 0.0;
    double residual_norm = 0.0;
    std::size_t rows_used = 0;
};

namespace detail {

inline std::string column_name(std::size_t col, std::size_t memory_m) {
    const std::size_t p = col / (memory_m + 1) + 1;
    const std::size_t m = col % (memory_m + 1);
    std::ostringstream os;
    os << "c(p=" << p << ",m=" << m << ")";
    return os.str();
}

} // namespace detail

// Least-squares identification of c_{p,m} from input/output records. The
// first M rows are dropped (zero pre-history would bias them). Solved by
// pivoted Householder QR; a rank-deficient basis (constant-envelope input,
// duplicate amplitude levels) raises identifiability_error naming the
// deficient columns.
inline MpmFit fit_mpm(const ComplexSignal& x_in, const ComplexSignal& x_out,
                      std::size_t order_p, std::size_t memory_m) {
    if (x_in.samples.size() != x_out.samples.size())
        throw config_error("fit_mpm: input/output length mismatch");
    const std::size_t n_cols = order_p * (memory_m + 1);
    const std::size_t n = x_in.samples.size();
    if (n < memory_m + 1) throw config_error("fit_mpm: signal shorter than memory depth");
    const std::size_t rows = n - memory_m;
    if (rows < 3 * n_cols) {
        std::ostringstream os;
        os << "fit_mpm: " << rows << " usable rows < 3*P*(M+1) = " << 3 * n_cols;
        throw identifiability_error(os.str());
    }

    std::vector<cvec> phi = build_phi(x_in, order_p, memory_m);
    cvec rhs(x_out.samples.begin() + static_cast<std::ptrdiff_t>(memory_m), x_out.samples.end());

    LstsqResult ls = lstsq_qr(std::move(phi), std::move(rhs));
    if (!ls.deficient_columns.empty()) {
        std::ostringstream os;
        os << "fit_mpm: rank-deficient regression basis; deficient columns:";
        for (std::size_t c : ls.deficient_columns) os << " " << detail::column_name(c, memory_m);
        throw identifiability_error(os.str());
    }

    MpmFit out;
    out.model = MemoryPolynomial(order_p, memory_m, std::move(ls.solution));
    out.condition_estimate = ls.condition_estimate;
    out.residual_norm = ls.residual_norm;
    out.rows_used = rows;
    return out;
}

// 10 log10( sum|eval(model,x)-y|^2 / sum|y|^2 ), skipping the first M samples.
// Floored at -400 dB so an exact fit stays finite.
inline double nmse_db(const MemoryPolynomial& model, const ComplexSignal& x_in,
                      const ComplexSignal& y_ref) {
    if (x_in.samples.size() != y_ref.samples.size())
        throw config_error("nmse_db: length mismatch");
    const ComplexSignal y = eval_mpm(model, x_in);
    double num = 0.0, den = 0.0;
    for (std::size_t t = model.memory_m(); t < y.samples.size(); ++t) {
        num += std::norm(y.samples[t] - y_ref.samples[t]);
        den += std::norm(y_ref.samples[t]);
    }
    if (!(den > 0.0)) throw undefined_statistic_error("nmse_db: zero-power reference");
    return std::max(10.0 * std::log10(num / den), -400.0);
}

} // namespace swl
