#pragma once

#include <complex>
#include <vector>

#include "swl/errors.hpp"

namespace swl {
namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 Cooley-Tukey. n must be a power of two.
inline void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace detail

// DFT of arbitrary length: radix-2 when possible, Bluestein otherwise.
inline std::vector<std::complex<double>> fft(std::vector<std::complex<double>> a, bool inverse = false) {
    const std::size_t n = a.size();
    if (n == 0) throw config_error("fft: empty input");
    if (detail::is_pow2(n)) {
        detail::fft_pow2(a, inverse);
        return a;
    }
    // Bluestein: turn the DFT into a convolution of length >= 2n-1.
    const double sign = inverse ? 1.0 : -1.0;
    const std::size_t m = detail::next_pow2(2 * n - 1);
    std::vector<std::complex<double>> u(m, {0.0, 0.0}), v(m, {0.0, 0.0});
    std::vector<std::complex<double>> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the chirp argument bounded
        const double ang = sign * M_PI * static_cast<double>((k * k) % (2 * n)) / static_cast<double>(n);
        chirp[k] = {std::cos(ang), std::sin(ang)};
        u[k] = a[k] * chirp[k];
        v[k] = std::conj(chirp[k]);
        if (k != 0) v[m - k] = std::conj(chirp[k]);
    }
    detail::fft_pow2(u, false);
    detail::fft_pow2(v, false);
    for (std::size_t i = 0; i < m; ++i) u[i] *= v[i];
    detail::fft_pow2(u, true);
    for (std::size_t k = 0; k < n; ++k) a[k] = u[k] * chirp[k];
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
    return a;
}

inline std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> a) {
    return fft(std::move(a), true);
}

} // namespace swl
