#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "swl/stats.hpp"
#include "swl/waveforms.hpp"

using namespace swl;

TEST_CASE("single tone is constant envelope") {
    const ComplexSignal s = gen_multisine(1, 1.0, 256, 64.0, zero_phases(1));
    CHECK(papr_db(s) == Catch::Approx(0.0).margin(1e-9));
    CHECK(s.mean_power() == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero-phase multisine hits the coherent PAPR") {
    // period = fs/spacing = 64 samples; 256 samples = 4 whole periods
    const ComplexSignal s4 = gen_multisine(4, 1.0, 256, 64.0, zero_phases(4));
    CHECK(papr_db(s4) == Catch::Approx(10.0 * std::log10(4.0)).margin(0.05));

    const ComplexSignal s8 = gen_multisine(8, 1.0, 512, 64.0, zero_phases(8));
    CHECK(papr_db(s8) == Catch::Approx(10.0 * std::log10(8.0)).margin(0.05));
}

TEST_CASE("random phases stay below the coherent peak") {
    const ComplexSignal s = gen_multisine(8, 1.0, 512, 64.0, random_phases(8, 7));
    CHECK(papr_db(s) < 10.0 * std::log10(8.0));
}

TEST_CASE("multisine rejects aliasing configurations") {
    CHECK_THROWS_AS(gen_multisine(64, 1.0, 256, 64.0, zero_phases(64)), config_error);
    CHECK_THROWS_AS(gen_multisine(4, 1.0, 256, 64.0, zero_phases(3)), config_error);
}

TEST_CASE("ofdm-like generator is deterministic per seed") {
    const ComplexSignal a = gen_ofdm_like(64, 4, Constellation::QPSK, 4, 1);
    const ComplexSignal b = gen_ofdm_like(64, 4, Constellation::QPSK, 4, 1);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i] == b.samples[i]);

    const ComplexSignal c = gen_ofdm_like(64, 4, Constellation::QPSK, 4, 2);
    CHECK(a.samples != c.samples);
}

TEST_CASE("ofdm-like waveform has unit mean power") {
    CHECK(gen_ofdm_like(64, 8, Constellation::QPSK, 4, 5).mean_power() == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(gen_ofdm_like(32, 8, Constellation::QAM16, 4, 5).mean_power() == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("one subcarrier gives a constant envelope") {
    const ComplexSignal s = gen_ofdm_like(1, 8, Constellation::QPSK, 4, 3, 1.0, 0.0);
    CHECK(papr_db(s) == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("PAPR grows with subcarrier count in distribution") {
    std::vector<double> p64, p256;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        p64.push_back(papr_db(gen_ofdm_like(64, 2, Constellation::QPSK, 4, seed)));
        p256.push_back(papr_db(gen_ofdm_like(256, 2, Constellation::QPSK, 4, seed)));
    }
    std::sort(p64.begin(), p64.end());
    std::sort(p256.begin(), p256.end());
    CHECK(p256[50] >= p64[50]);
}

TEST_CASE("frequency shift moves energy off DC") {
    const ComplexSignal base = gen_multisine(1, 1.0, 256, 64.0, zero_phases(1));
    const ComplexSignal shifted = frequency_shift(base, 8.0);
    // the shifted tone is exp(j 2 pi 8 n / 64); compare against direct synthesis
    for (std::size_t n = 0; n < shifted.samples.size(); ++n) {
        const double arg = 2.0 * M_PI * 8.0 * static_cast<double>(n) / 64.0;
        CHECK(std::abs(shifted.samples[n] - base.samples[n] * cplx(std::cos(arg), std::sin(arg))) < 1e-12);
    }
}

TEST_CASE("multiband surrogate is unit power and seed-stable") {
    const ComplexSignal a = gen_multiband(4, 1.0 / 32.0, 64, 2, Constellation::QPSK, 32, 11, 1.0);
    CHECK(a.mean_power() == Catch::Approx(1.0).epsilon(1e-12));
    const ComplexSignal b = gen_multiband(4, 1.0 / 32.0, 64, 2, Constellation::QPSK, 32, 11, 1.0);
    CHECK(a.samples == b.samples);
}
