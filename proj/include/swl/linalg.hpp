#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "swl/complex_signal.hpp"
#include "swl/errors.hpp"

namespace swl {

// Small dense complex matrix, row-major. Sized for link-level work
// (a handful of antennas), not for large numerics.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, {0.0, 0.0}) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::complex<double>& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const std::complex<double>& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const cvec& data() const { return data_; }
    cvec& data() { return data_; }

    // y = A x
    cvec mul(const cvec& x) const {
        cvec y(rows_, {0.0, 0.0});
        for (std::size_t r = 0; r < rows_; ++r) {
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
            y[r] = acc;
        }
        return y;
    }

    // y = A^H x
    cvec mul_adjoint(const cvec& x) const {
        cvec y(cols_, {0.0, 0.0});
        for (std::size_t c = 0; c < cols_; ++c) {
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t r = 0; r < rows_; ++r) acc += std::conj((*this)(r, c)) * x[r];
            y[c] = acc;
        }
        return y;
    }

    // A A^H (Hermitian, rows x rows)
    CMatrix gram_left() const {
        CMatrix g(rows_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < rows_; ++j) {
                std::complex<double> acc{0.0, 0.0};
                for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(i, c) * std::conj((*this)(j, c));
                g(i, j) = acc;
            }
        return g;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    cvec data_;
};

inline double vec_norm(const cvec& v) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return std::sqrt(acc);
}

inline std::complex<double> vec_dot(const cvec& a, const cvec& b) {
    // conjugate-linear in the first argument
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

struct LstsqResult {
    cvec solution;
    double condition_estimate = 0.0; // |R_11|/|R_kk| ratio from the pivoted QR
    double residual_norm = 0.0;
    std::vector<std::size_t> deficient_columns; // empty when full rank
};

// Least squares via Householder QR with column pivoting. Dense row-major A
// (rows >= cols assumed by callers). Rank deficiency is reported, not solved:
// callers treat it as an identifiability failure.
inline LstsqResult lstsq_qr(std::vector<cvec> a, cvec b, double rank_tol = 1e-10) {
    const std::size_t m = a.size();
    if (m == 0) throw config_error("lstsq_qr: empty system");
    const std::size_t n = a[0].size();
    if (b.size() != m) throw config_error("lstsq_qr: rhs size mismatch");
    if (m < n) throw identifiability_error("lstsq_qr: fewer rows than unknowns");

    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < n; ++j) perm[j] = j;

    std::vector<double> colnorm(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) colnorm[j] += std::norm(a[i][j]);

    const std::size_t steps = std::min(m, n);
    std::vector<double> rdiag(steps, 0.0);

    for (std::size_t k = 0; k < steps; ++k) {
        // pivot: remaining column with the largest residual norm
        std::size_t piv = k;
        for (std::size_t j = k + 1; j < n; ++j)
            if (colnorm[j] > colnorm[piv]) piv = j;
        if (piv != k) {
            for (std::size_t i = 0; i < m; ++i) std::swap(a[i][k], a[i][piv]);
            std::swap(colnorm[k], colnorm[piv]);
            std::swap(perm[k], perm[piv]);
        }

        double xnorm = 0.0;
        for (std::size_t i = k; i < m; ++i) xnorm += std::norm(a[i][k]);
        xnorm = std::sqrt(xnorm);
        rdiag[k] = xnorm;
        if (xnorm == 0.0) continue; // exactly dependent column

        // Householder vector v = x + e^{i arg(x_k)} ||x|| e_k
        std::complex<double> alpha = a[k][k];
        const double aabs = std::abs(alpha);
        const std::complex<double> phase = (aabs > 0.0) ? alpha / aabs : std::complex<double>(1.0, 0.0);
        const std::complex<double> beta = phase * xnorm;

        cvec v(m - k);
        v[0] = alpha + beta;
        double vnorm2 = std::norm(v[0]);
        for (std::size_t i = k + 1; i < m; ++i) {
            v[i - k] = a[i][k];
            vnorm2 += std::norm(v[i - k]);
        }
        if (vnorm2 == 0.0) continue;

        auto apply = [&](auto& col) {
            std::complex<double> dot{0.0, 0.0};
            for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i - k]) * col[i];
            dot *= 2.0 / vnorm2;
            for (std::size_t i = k; i < m; ++i) col[i] -= dot * v[i - k];
        };

        // apply to remaining columns of A (column views) and to b
        for (std::size_t j = k; j < n; ++j) {
            std::complex<double> dot{0.0, 0.0};
            for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i - k]) * a[i][j];
            dot *= 2.0 / vnorm2;
            for (std::size_t i = k; i < m; ++i) a[i][j] -= dot * v[i - k];
        }
        apply(b);
        rdiag[k] = std::abs(a[k][k]);

        for (std::size_t j = k + 1; j < n; ++j) {
            colnorm[j] -= std::norm(a[k][j]);
            if (colnorm[j] < 0.0) colnorm[j] = 0.0;
        }
    }

    LstsqResult out;
    const double rmax = *std::max_element(rdiag.begin(), rdiag.end());
    double rmin = rmax;
    for (std::size_t k = 0; k < steps; ++k) {
        if (rdiag[k] < rank_tol * rmax) out.deficient_columns.push_back(perm[k]);
        rmin = std::min(rmin, rdiag[k]);
    }
    out.condition_estimate = (rmin > 0.0) ? rmax / rmin : std::numeric_limits<double>::infinity();
    std::sort(out.deficient_columns.begin(), out.deficient_columns.end());
    if (!out.deficient_columns.empty()) return out; // caller raises identifiability error

    // back substitution R z = Q^H b
    cvec z(n, {0.0, 0.0});
    for (std::size_t kk = n; kk-- > 0;) {
        std::complex<double> acc = b[kk];
        for (std::size_t j = kk + 1; j < n; ++j) acc -= a[kk][j] * z[j];
        z[kk] = acc / a[kk][kk];
    }
    out.solution.assign(n, {0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) out.solution[perm[j]] = z[j];

    double rn = 0.0;
    for (std::size_t i = n; i < m; ++i) rn += std::norm(b[i]);
    out.residual_norm = std::sqrt(rn);
    return out;
}

} // namespace swl
