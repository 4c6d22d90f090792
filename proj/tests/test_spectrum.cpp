#include <catch2/catch_amalgamated.hpp>

#include "swl/rng.hpp"
#include "swl/spectrum.hpp"
#include "swl/waveforms.hpp"

using namespace swl;

TEST_CASE("psd peak lands on the tone frequency") {
    const double fs = 64.0, f0 = 9.0;
    ComplexSignal tone = frequency_shift(gen_multisine(1, 1.0, 4096, fs, zero_phases(1)), f0);
    const SpectrumEstimate spec = psd_welch(tone, 256);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < spec.psd_db.size(); ++i)
        if (spec.psd_db[i] > spec.psd_db[peak]) peak = i;
    CHECK(std::abs(spec.freqs_hz[peak] - f0) <= spec.bin_width_hz() + 1e-12);
}

TEST_CASE("frequencies ascend and match psd length") {
    const ComplexSignal s = gen_ofdm_like(64, 8, Constellation::QPSK, 4, 3);
    const SpectrumEstimate spec = psd_welch(s, 128);
    REQUIRE(spec.freqs_hz.size() == spec.psd_db.size());
    for (std::size_t i = 1; i < spec.freqs_hz.size(); ++i) CHECK(spec.freqs_hz[i] > spec.freqs_hz[i - 1]);
}

TEST_CASE("white noise psd is flat") {
    Rng rng(2024);
    std::vector<cplx> v(1 << 16);
    for (auto& x : v) x = rng.cgaussian();
    const SpectrumEstimate spec = psd_welch(ComplexSignal(std::move(v), 1.0), 256);
    // unit total power spread over fs = 1 Hz: flat density 1 W/Hz = 0 dB
    const double mean_db = 0.0;
    for (double p : spec.psd_db) {
        CHECK(p <= mean_db + 1.5);
        CHECK(p >= mean_db - 1.5);
    }
}

TEST_CASE("integrated psd equals mean power") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const ComplexSignal s = gen_ofdm_like(64, 16, Constellation::QPSK, 4, seed);
        const SpectrumEstimate spec = psd_welch(s, 512);
        double total = 0.0;
        for (std::size_t i = 0; i < spec.psd_db.size(); ++i)
            total += spec.psd_linear_w_per_hz(i) * spec.bin_width_hz();
        CHECK(10.0 * std::log10(total / s.mean_power()) == Catch::Approx(0.0).margin(0.1));
    }
}

TEST_CASE("segment longer than signal is a configuration error") {
    const ComplexSignal s = gen_ofdm_like(64, 1, Constellation::QPSK, 4, 1);
    CHECK_THROWS_AS(psd_welch(s, s.samples.size() + 1), config_error);
    CHECK_THROWS_AS(psd_welch(s, 64, 1.0), config_error);
}

TEST_CASE("band-limited signal has a clean adjacent band") {
    // on-grid tones confined near DC; Hann leakage spans +-1 bin only
    const double fs = 1.0;
    const ComplexSignal s = gen_multisine(8, fs / 256.0, 1 << 14, fs, zero_phases(8));
    const SpectrumEstimate spec = psd_welch(s, 256);
    const double acpr = acpr_db(spec, {-0.05, 0.05}, {0.15, 0.35});
    CHECK(acpr >= 60.0);
}

TEST_CASE("real signals give symmetric acpr") {
    Rng rng(5);
    std::vector<cplx> v(1 << 14);
    for (auto& x : v) x = cplx(rng.gaussian(), 0.0); // real noise -> symmetric spectrum
    const SpectrumEstimate spec = psd_welch(ComplexSignal(std::move(v), 1.0), 256);
    const double right = acpr_db(spec, {-0.1, 0.1}, {0.15, 0.35});
    const double left = acpr_db(spec, {-0.1, 0.1}, {-0.35, -0.15});
    CHECK(left == Catch::Approx(right).margin(0.1));
}

TEST_CASE("acpr rejects bad bands") {
    const ComplexSignal s = gen_ofdm_like(64, 8, Constellation::QPSK, 4, 3);
    const SpectrumEstimate spec = psd_welch(s, 256);
    CHECK_THROWS_AS(acpr_db(spec, {-0.1, 0.1}, {0.05, 0.2}), config_error);  // overlap
    CHECK_THROWS_AS(acpr_db(spec, {-0.1, 0.1}, {0.6, 0.9}), config_error);   // outside Nyquist
    CHECK_THROWS_AS(acpr_db(spec, {-0.1, 0.1}, {0.2, 0.2}), config_error);   // empty
    // band narrower than a bin -> no bins inside
    CHECK_THROWS_AS(acpr_db(spec, {-0.1, 0.1}, {0.2001, 0.2002}), config_error);
}
