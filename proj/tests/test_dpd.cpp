#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "swl/dpd.hpp"
#include "swl/rng.hpp"
#include "swl/waveforms.hpp"

using namespace swl;

namespace {

const MemoryPolynomial kCubic(3, 0, {cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(-0.1, 0.0)});

ComplexSignal gaussian_signal(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> v(n);
    for (auto& x : v) x = rng.cgaussian();
    return ComplexSignal(std::move(v), 1.0);
}

} // namespace

TEST_CASE("linear amplifier inverts in one step") {
    const MemoryPolynomial lin(1, 0, {cplx(2.0, 0.5)});
    const ComplexSignal x = gaussian_signal(128, 1);
    auto [xd, rep] = dpd_invert(lin, x, {});
    for (std::size_t i = 0; i < x.samples.size(); ++i)
        CHECK(std::abs(xd.samples[i] - x.samples[i] / cplx(2.0, 0.5)) < 1e-15);
    CHECK(rep.all_converged());
    CHECK(linearization_error(lin, x, xd) <= -200.0);
}

TEST_CASE("memoryless cubic matches the bisection oracle") {
    // r (1 - 0.1 r^2) = 0.5, real root
    const double root = oracles::bisect([](double r) { return r - 0.1 * r * r * r - 0.5; }, 0.0, 1.8);
    CHECK(root == Catch::Approx(0.5135435270201546).epsilon(1e-10));

    ComplexSignal x(std::vector<cplx>{cplx(0.5, 0.0)}, 1.0);
    auto [xd, rep] = dpd_invert(kCubic, x, {});
    CHECK(std::abs(xd.samples[0].real() - root) <= 1e-6);
    CHECK(std::abs(xd.samples[0].imag()) <= 1e-9);
    CHECK(rep.converged[0]);
}

TEST_CASE("zero input maps to zero output") {
    const MemoryPolynomial model(3, 1, {cplx(1.0, 0.0), cplx(0.2, 0.0), cplx(0.0, 0.0),
                                        cplx(0.0, 0.0), cplx(-0.1, 0.0), cplx(0.05, 0.0)});
    ComplexSignal x(std::vector<cplx>(32, cplx(0.0, 0.0)), 1.0);
    auto [xd, rep] = dpd_invert(model, x, {});
    for (const cplx& v : xd.samples) CHECK(v == cplx(0.0, 0.0));
    CHECK(rep.all_converged());
}

TEST_CASE("cascade NMSE on an in-range multicarrier signal") {
    // peak 6 dB below the cubic's deliverable limit g(a*) = 1.2172
    ComplexSignal x = gen_ofdm_like(64, 32, Constellation::QPSK, 4, 5);
    const double target_peak = 1.2171612389003692 * std::pow(10.0, -6.0 / 20.0);
    double peak = 0.0;
    for (const cplx& v : x.samples) peak = std::max(peak, std::abs(v));
    for (cplx& v : x.samples) v *= target_peak / peak;

    auto [xd, rep] = dpd_invert(kCubic, x, {});
    CHECK(rep.all_converged());
    CHECK(linearization_error(kCubic, x, xd) <= -50.0);
}

TEST_CASE("overdrive clips at the guard and is flagged") {
    // targets beyond g(a*) = 1.2172 cannot be delivered
    std::vector<cplx> v(64, cplx(1.5, 0.0));
    ComplexSignal x(std::move(v), 1.0);
    auto [xd, rep] = dpd_invert(kCubic, x, {});
    CHECK(rep.clipped_count() > 0);
    CHECK_FALSE(rep.all_converged());
    const double a_star = std::sqrt(10.0 / 3.0);
    for (const cplx& s : xd.samples) CHECK(std::abs(s) <= a_star * (1.0 + 1e-9));
    // clipping energy bounds the cascade error away from zero
    CHECK(linearization_error(kCubic, x, xd) >= -20.0);
}

TEST_CASE("inversion is causal: prefix in, prefix out") {
    const MemoryPolynomial model(3, 2, {cplx(1.0, 0.0), cplx(0.1, 0.02), cplx(-0.04, 0.0),
                                        cplx(0.0, 0.0), cplx(0.02, 0.0), cplx(0.0, 0.0),
                                        cplx(-0.06, 0.0), cplx(0.01, 0.0), cplx(0.0, 0.0)});
    ComplexSignal x = gaussian_signal(96, 6);
    for (cplx& v : x.samples) v *= 0.4;
    auto [full, rep_full] = dpd_invert(model, x, {});
    ComplexSignal head(std::vector<cplx>(x.samples.begin(), x.samples.begin() + 40), 1.0);
    auto [pref, rep_pref] = dpd_invert(model, head, {});
    for (std::size_t i = 0; i < 40; ++i) CHECK(full.samples[i] == pref.samples[i]);
}

TEST_CASE("inversion is deterministic") {
    const MemoryPolynomial model(5, 1, {cplx(1.0, 0.0), cplx(0.05, 0.0), cplx(0.02, 0.0),
                                        cplx(0.0, 0.0), cplx(-0.07, 0.01), cplx(0.0, 0.0),
                                        cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(-0.01, 0.0),
                                        cplx(0.0, 0.0)});
    ComplexSignal x = gaussian_signal(128, 8);
    for (cplx& v : x.samples) v *= 0.5;
    auto [a, ra] = dpd_invert(model, x, {});
    auto [b, rb] = dpd_invert(model, x, {});
    CHECK(a.samples == b.samples);
    CHECK(ra.residual == rb.residual);
}

TEST_CASE("converged samples satisfy the Lipschitz cascade bound") {
    const MemoryPolynomial model(3, 1, {cplx(1.0, 0.0), cplx(0.08, 0.0), cplx(-0.03, 0.0),
                                        cplx(0.0, 0.0), cplx(-0.05, 0.0), cplx(0.0, 0.0)});
    ComplexSignal x = gaussian_signal(256, 9);
    for (cplx& v : x.samples) v *= 0.5;
    DpdConfig cfg;
    cfg.tolerance = 1e-6;
    auto [xd, rep] = dpd_invert(model, x, cfg);

    double sum_c0 = 0.0;
    for (std::size_t p = 1; p <= model.order_p(); ++p) sum_c0 += std::abs(model.c(p, 0));
    const ComplexSignal y = eval_mpm(model, xd);

    for (std::size_t n = 0; n < x.samples.size(); ++n) {
        if (!rep.converged[n]) continue;
        const double kappa = std::abs(model.scaling_at(std::abs(xd.samples[n]))) +
                             static_cast<double>(model.order_p()) * sum_c0;
        CHECK(std::abs(y.samples[n] - x.samples[n]) <= kappa * cfg.tolerance);
    }
}

TEST_CASE("report invariant: converged implies residual within tolerance") {
    const MemoryPolynomial model(3, 1, {cplx(1.0, 0.0), cplx(0.1, 0.0), cplx(-0.06, 0.0),
                                        cplx(0.0, 0.0), cplx(-0.04, 0.0), cplx(0.0, 0.0)});
    ComplexSignal x = gaussian_signal(200, 10);
    for (cplx& v : x.samples) v *= 0.6;
    DpdConfig cfg;
    auto [xd, rep] = dpd_invert(model, x, cfg);
    for (std::size_t n = 0; n < rep.converged.size(); ++n)
        if (rep.converged[n]) CHECK(rep.residual[n] <= cfg.tolerance);
}

TEST_CASE("non-invertible model is rejected") {
    const MemoryPolynomial bad(1, 0, {cplx(0.0, 0.0)});
    CHECK_THROWS_AS(dpd_invert(bad, gaussian_signal(8, 11), {}), numerical_error);
}

TEST_CASE("linearization_error rejects zero-power reference") {
    ComplexSignal zero(std::vector<cplx>(16, cplx(0.0, 0.0)), 1.0);
    const ComplexSignal xd = zero;
    CHECK_THROWS_AS(linearization_error(kCubic, zero, xd), undefined_statistic_error);
}
