#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "swl/harvester.hpp"
#include "swl/link.hpp"
#include "swl/parallel.hpp"

namespace swl {

enum class SwiptArch { TS, PS };

inline std::string to_string(SwiptArch a) { return a == SwiptArch::TS ? "TS" : "PS"; }

inline SwiptArch arch_from_string(const std::string& s) {
    if (s == "TS" || s == "ts") return SwiptArch::TS;
    if (s == "PS" || s == "ps") return SwiptArch::PS;
    throw config_error("unknown SWIPT architecture: " + s);
}

struct RePoint {
    double split = 0.0;       // tau (TS) or rho (PS)
    double rate_bps_hz = 0.0;
    double energy_w = 0.0;
};

struct ReRegion {
    SwiptArch architecture = SwiptArch::TS;
    int zeta = 1;
    std::vector<RePoint> points; // ascending split
    double area = 0.0;           // trapezoidal area under the (rate, energy) frontier
};

// Total input power at the energy harvester: combined signal power plus the
// distortion and antenna-noise components that also reach the rectifier.
inline double eh_input_power(double symbol_power_w, double lambda_max, double wr_norm_sq,
                             double distortion_power_w, double sigma_v_sq_w) {
    return symbol_power_w * lambda_max * wr_norm_sq + distortion_power_w + sigma_v_sq_w * wr_norm_sq;
}

namespace detail {

inline double frontier_area(const std::vector<RePoint>& pts) {
    // integrate energy over rate along the frontier
    double area = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        area += 0.5 * (pts[i].energy_w + pts[i - 1].energy_w) *
                std::abs(pts[i - 1].rate_bps_hz - pts[i].rate_bps_hz);
    return area;
}

} // namespace detail

struct ReLinkParams {
    ComplexSignal x;          // unit mean power drive waveform
    double symbol_power_w = dbm_to_watt(14.0);
    LinkNoise noise;
    EhModel eh;
    HpaChain chain;
    std::size_t n_threads = 0;
};

// Rate-energy frontier for one architecture and one zeta, ergodic over the
// channel set: per channel the SNR pieces come from the simulated chain
// (zeta=1 raw amplifier, zeta=0 DPD+amplifier), rate and energy are evaluated
// on the split grid, then averaged across channels point by point.
//   TS: R = (1-tau) log2(1 + S/(zeta D + sv + sa)),          E = tau p_h(xi)
//   PS: R = log2(1 + (1-rho) S/((1-rho)(zeta D + sv) + sa)), E = rho p_h(xi)
// with S the nominal P_t Lambda_max, D the chain's distortion power and xi
// the measured combined power at the harvester.
inline ReRegion re_region(SwiptArch arch, int zeta, std::size_t grid_points,
                          const std::vector<ChannelMatrix>& channels,
                          const ReLinkParams& lp) {
    if (grid_points < 2) throw config_error("re_region: grid_points must be >= 2");
    if (channels.empty()) throw config_error("re_region: empty channel set");
    if (zeta != 0 && zeta != 1) throw config_error("re_region: zeta must be 0 or 1");
    lp.noise.validate();
    lp.eh.validate();

    const std::size_t nch = channels.size();
    std::vector<LinkMeasurement> meas(nch);
    parallel_for(nch, [&](std::size_t i) {
        const EigResult eig = principal_eig(channels[i]);
        meas[i] = measure_link(channels[i], eig, lp.x, lp.symbol_power_w, lp.noise, zeta, lp.chain);
    }, lp.n_threads);

    const double sv = lp.noise.sigma_v_sq_w;
    const double sa = lp.noise.sigma_a_sq_w;

    ReRegion region;
    region.architecture = arch;
    region.zeta = zeta;
    region.points.resize(grid_points);
    for (std::size_t g = 0; g < grid_points; ++g) {
        const double split = static_cast<double>(g) / static_cast<double>(grid_points - 1);
        double rate = 0.0, energy = 0.0;
        for (const LinkMeasurement& m : meas) {
            const double s_nom = m.nominal_signal_w;
            // the zeta flag removes the distortion term from the rate when
            // predistortion is employed; the chain's residual still reaches
            // the harvester through eh_input_w
            const double zd = (zeta == 1) ? m.memory_distortion_w : 0.0;
            const double harvested = harvest(lp.eh, m.eh_input_w);
            if (arch == SwiptArch::TS) {
                rate += (1.0 - split) * std::log2(1.0 + s_nom / (zd + sv + sa));
                energy += split * harvested;
            } else {
                const double num = (1.0 - split) * s_nom;
                const double den = (1.0 - split) * (zd + sv) + sa;
                rate += std::log2(1.0 + num / den);
                energy += split * harvested;
            }
        }
        region.points[g] = {split, rate / static_cast<double>(nch), energy / static_cast<double>(nch)};
    }
    region.area = detail::frontier_area(region.points);
    return region;
}

struct RegionGain {
    double area_gain = 0.0;        // (area_with - area_without) / area_without
    double eh_endpoint_gain = 0.0; // energy gain at split = 1 (pure harvesting)
    double id_endpoint_gain = 0.0; // rate gain at split = 0 (pure decoding)
};

inline RegionGain region_gain(const ReRegion& with_dpd, const ReRegion& without_dpd) {
    if (with_dpd.architecture != without_dpd.architecture)
        throw config_error("region_gain: architectures differ");
    if (with_dpd.points.size() != without_dpd.points.size())
        throw config_error("region_gain: grids differ");
    if (!(without_dpd.area > 0.0))
        throw undefined_statistic_error("region_gain: zero baseline area");

    RegionGain g;
    g.area_gain = (with_dpd.area - without_dpd.area) / without_dpd.area;
    const RePoint& eh_w = with_dpd.points.back();
    const RePoint& eh_wo = without_dpd.points.back();
    const RePoint& id_w = with_dpd.points.front();
    const RePoint& id_wo = without_dpd.points.front();
    g.eh_endpoint_gain = (eh_wo.energy_w > 0.0)
                             ? (eh_w.energy_w - eh_wo.energy_w) / eh_wo.energy_w
                             : (eh_w.energy_w > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    g.id_endpoint_gain = (id_wo.rate_bps_hz > 0.0)
                             ? (id_w.rate_bps_hz - id_wo.rate_bps_hz) / id_wo.rate_bps_hz
                             : 0.0;
    return g;
}

} // namespace swl
