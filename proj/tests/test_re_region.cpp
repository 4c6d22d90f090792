#include <catch2/catch_amalgamated.hpp>

#include "swl/re_region.hpp"
#include "swl/rng.hpp"
#include "swl/waveforms.hpp"

using namespace swl;

namespace {

// In-range MPM truth chain: mild memory, drive far below any saturation.
struct Fixture {
    ReLinkParams lp;
    std::vector<ChannelMatrix> channels;

    explicit Fixture(std::uint64_t seed, double c11 = 0.05, std::size_t n_ch = 12)
        : lp{gen_ofdm_like(64, 4, Constellation::QPSK, 4, seed),
             dbm_to_watt(14.0),
             {dbm_to_watt(-70.0), dbm_to_watt(-50.0)},
             {},
             {},
             1} {
        MemoryPolynomial model(3, 1, {cplx(1.0, 0.0), cplx(c11, 0.0), cplx(-0.02, 0.0),
                                      cplx(0.0, 0.0), cplx(-0.01, 0.0), cplx(0.0, 0.0)});
        lp.chain.truth = model;
        lp.chain.dpd_model = model;
        for (std::size_t i = 0; i < n_ch; ++i)
            channels.push_back(gen_channel(3, 2, 12.0, 2.6, derive_seed(seed, "re_ch", i)));
    }
};

} // namespace

TEST_CASE("TS endpoints: pure harvesting and pure decoding") {
    Fixture f(1);
    const ReRegion r = re_region(SwiptArch::TS, 1, 11, f.channels, f.lp);
    CHECK(r.points.front().split == 0.0);
    CHECK(r.points.front().energy_w == 0.0);
    CHECK(r.points.back().split == 1.0);
    CHECK(r.points.back().rate_bps_hz == 0.0);
    CHECK(r.points.back().energy_w > 0.0);
}

TEST_CASE("TS rate is affine in the split") {
    Fixture f(2);
    const ReRegion r = re_region(SwiptArch::TS, 1, 21, f.channels, f.lp);
    const double r0 = r.points.front().rate_bps_hz;
    const double e1 = r.points.back().energy_w;
    for (const RePoint& p : r.points) {
        CHECK(p.rate_bps_hz == Catch::Approx((1.0 - p.split) * r0).margin(1e-12));
        CHECK(p.energy_w == Catch::Approx(p.split * e1).margin(1e-20));
    }
    // affine frontier -> triangle area
    CHECK(r.area == Catch::Approx(0.5 * r0 * e1).epsilon(1e-9));
}

TEST_CASE("PS endpoints and monotonicities") {
    Fixture f(3);
    const ReRegion r = re_region(SwiptArch::PS, 1, 41, f.channels, f.lp);
    CHECK(r.points.front().energy_w == 0.0);
    CHECK(r.points.back().energy_w > 0.0);
    for (std::size_t i = 1; i < r.points.size(); ++i) {
        CHECK(r.points[i].rate_bps_hz <= r.points[i - 1].rate_bps_hz + 1e-12);
        CHECK(r.points[i].energy_w >= r.points[i - 1].energy_w - 1e-20);
    }
}

TEST_CASE("predistortion never hurts the rate, in-range energy ordered oppositely") {
    Fixture f(4);
    for (SwiptArch arch : {SwiptArch::TS, SwiptArch::PS}) {
        const ReRegion with = re_region(arch, 0, 21, f.channels, f.lp);
        const ReRegion without = re_region(arch, 1, 21, f.channels, f.lp);
        for (std::size_t i = 0; i < with.points.size(); ++i) {
            CHECK(with.points[i].rate_bps_hz >= without.points[i].rate_bps_hz - 1e-12);
            // distortion adds harvestable power for the uncompensated chain
            CHECK(with.points[i].energy_w <= without.points[i].energy_w + 1e-15);
        }
        CHECK(with.area >= without.area * (1.0 - 1e-9));
    }
}

TEST_CASE("region gains: identical regions give zero, dominance gives positive") {
    Fixture f(5);
    const ReRegion a = re_region(SwiptArch::TS, 1, 21, f.channels, f.lp);
    const RegionGain zero = region_gain(a, a);
    CHECK(zero.area_gain == 0.0);
    CHECK(zero.eh_endpoint_gain == 0.0);
    CHECK(zero.id_endpoint_gain == 0.0);

    ReRegion b = a;
    for (RePoint& p : b.points) {
        p.rate_bps_hz *= 1.2;
        p.energy_w *= 1.1;
    }
    b.area = 0.0;
    for (std::size_t i = 1; i < b.points.size(); ++i)
        b.area += 0.5 * (b.points[i].energy_w + b.points[i - 1].energy_w) *
                  std::abs(b.points[i - 1].rate_bps_hz - b.points[i].rate_bps_hz);
    const RegionGain g = region_gain(b, a);
    CHECK(g.area_gain > 0.0);
    CHECK(g.eh_endpoint_gain == Catch::Approx(0.1).epsilon(1e-9));
    CHECK(g.id_endpoint_gain == Catch::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("eh_input_power is the sum of its parts") {
    CHECK(eh_input_power(0.025, 0.015, 1.0, 1e-6, 1e-10) ==
          Catch::Approx(0.025 * 0.015 + 1e-6 + 1e-10).epsilon(1e-15));
    // distortion adds harvestable power
    CHECK(eh_input_power(0.025, 0.015, 1.0, 1e-6, 1e-10) >=
          eh_input_power(0.025, 0.015, 1.0, 0.0, 1e-10));
    // dominant-term limit
    CHECK(eh_input_power(0.025, 0.015, 1.0, 0.0, 1e-12) ==
          Catch::Approx(0.025 * 0.015).epsilon(1e-6));
}

TEST_CASE("parameter validation") {
    Fixture f(6);
    CHECK_THROWS_AS(re_region(SwiptArch::TS, 1, 1, f.channels, f.lp), config_error);
    CHECK_THROWS_AS(re_region(SwiptArch::TS, 2, 11, f.channels, f.lp), config_error);
    CHECK_THROWS_AS(re_region(SwiptArch::TS, 1, 11, {}, f.lp), config_error);
}
