#include <catch2/catch_amalgamated.hpp>

#include "swl/mpm_fit.hpp"
#include "swl/reference_amplifier.hpp"
#include "swl/rng.hpp"
#include "swl/waveforms.hpp"

using namespace swl;

namespace {

ComplexSignal gaussian_signal(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> v(n);
    for (auto& x : v) x = rng.cgaussian();
    return ComplexSignal(std::move(v), 1.0);
}

} // namespace

TEST_CASE("noiseless data recovers the generating model") {
    Rng rng(5);
    cvec c(5 * 3);
    for (auto& v : c) v = 0.1 * rng.cgaussian();
    c[0] = cplx(1.0, 0.2);
    const MemoryPolynomial truth(5, 2, c);

    const ComplexSignal x = gaussian_signal(4096, 6);
    const ComplexSignal y = eval_mpm(truth, x);
    const MpmFit fit = fit_mpm(x, y, 5, 2);

    for (std::size_t i = 0; i < c.size(); ++i)
        CHECK(std::abs(fit.model.coeffs()[i] - c[i]) <= 1e-8 * std::max(1.0, std::abs(c[i])));
    CHECK(fit.condition_estimate > 0.0);
}

TEST_CASE("identity data fits to the identity model") {
    const ComplexSignal x = gaussian_signal(2048, 8);
    const MpmFit fit = fit_mpm(x, x, 3, 1);
    CHECK(std::abs(fit.model.c(1, 0) - cplx(1.0, 0.0)) <= 1e-10);
    for (std::size_t p = 1; p <= 3; ++p)
        for (std::size_t m = 0; m <= 1; ++m)
            if (!(p == 1 && m == 0)) CHECK(std::abs(fit.model.c(p, m)) <= 1e-10);
}

TEST_CASE("constant-envelope input is not identifiable") {
    // |x| constant makes the p-branches of each delay colinear
    std::vector<cplx> v(1024);
    Rng rng(9);
    for (auto& x : v) {
        const double ph = 2.0 * M_PI * rng.uniform();
        x = cplx(std::cos(ph), std::sin(ph));
    }
    const ComplexSignal x(std::move(v), 1.0);
    const ComplexSignal y = eval_mpm(MemoryPolynomial(1, 0, {cplx(1.0, 0.0)}), x);
    try {
        fit_mpm(x, y, 3, 1);
        FAIL("expected identifiability_error");
    } catch (const identifiability_error& e) {
        CHECK(std::string(e.what()).find("c(p=") != std::string::npos);
    }
}

TEST_CASE("too few rows is an identifiability error") {
    // 14 usable rows < 3 * P * (M+1) = 18
    const ComplexSignal x = gaussian_signal(15, 10);
    CHECK_THROWS_AS(fit_mpm(x, x, 3, 1), identifiability_error);
}

TEST_CASE("length mismatch is a configuration error") {
    const ComplexSignal x = gaussian_signal(64, 11);
    const ComplexSignal y = gaussian_signal(65, 12);
    CHECK_THROWS_AS(fit_mpm(x, y, 1, 0), config_error);
}

TEST_CASE("reference amplifier identifies to below -40 dB at (7,3)") {
    const ReferenceAmplifier amp; // defaults: soft knee at sqrt(2), unit-power drive 3 dB below
    const ComplexSignal x =
        gen_ofdm_like(64, 48, Constellation::QPSK, 4, 31).scaled_to_power(amp.saturation_amplitude *
                                                                          amp.saturation_amplitude / 2.0);
    const ComplexSignal y = eval_reference(amp, x);
    const MpmFit fit = fit_mpm(x, y, 7, 3);

    const ComplexSignal xh =
        gen_ofdm_like(64, 48, Constellation::QPSK, 4, 32).scaled_to_power(amp.saturation_amplitude *
                                                                          amp.saturation_amplitude / 2.0);
    const ComplexSignal yh = eval_reference(amp, xh);
    CHECK(nmse_db(fit.model, xh, yh) <= -40.0);
}

TEST_CASE("fit idempotence on exciting inputs") {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const std::size_t p = 1 + trial % 5;
        const std::size_t m = trial % 3;
        Rng rng(500 + trial);
        cvec c(p * (m + 1));
        for (auto& v : c) v = 0.08 * rng.cgaussian();
        c[0] = cplx(1.0, 0.0);
        const MemoryPolynomial truth(p, m, c);
        const ComplexSignal x = gaussian_signal(1024, 600 + trial);
        const MpmFit fit = fit_mpm(x, eval_mpm(truth, x), p, m);
        for (std::size_t i = 0; i < c.size(); ++i)
            CHECK(std::abs(fit.model.coeffs()[i] - c[i]) <= 1e-8 * std::max(1.0, std::abs(c[i])));
    }
}
