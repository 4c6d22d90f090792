#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "swl/config.hpp"
#include "swl/csv.hpp"
#include "swl/link.hpp"
#include "swl/mpm_fit.hpp"
#include "swl/parallel.hpp"
#include "swl/re_region.hpp"
#include "swl/waveforms.hpp"

namespace swl {

namespace detail {

inline void write_metadata(const std::string& out_dir, const std::string& name,
                           const Config& cfg, std::uint64_t seed,
                           const nlohmann::json& extra) {
    if (out_dir.empty()) return;
    nlohmann::json j;
    j["experiment"] = name;
    j["seed"] = seed;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : cfg.values()) params[k] = v;
    j["config"] = params;
    j["results"] = extra;
    std::ofstream out(std::filesystem::path(out_dir) / (name + "_metadata.json"), std::ios::binary);
    if (!out) throw config_error("cannot write metadata in " + out_dir);
    out << j.dump(2) << '\n';
}

inline std::filesystem::path out_path(const std::string& out_dir, const std::string& file) {
    return std::filesystem::path(out_dir) / file;
}

} // namespace detail

// Shared front end: build the reference amplifier, excite it, identify the
// memory-polynomial model the predistorter will use. Signal scales are
// normalized to the amplifier's saturation amplitude through backoff keys.
struct IdentifiedChain {
    ReferenceAmplifier amp;
    MpmFit fit;
    double drive_power_w = 0.0; // waveform power at the amplifier input
};

inline ReferenceAmplifier amp_from_config(const Config& cfg, double sat_amplitude_default,
                                          double smoothness_default) {
    const double s = cfg.get_double("hpa.smoothness", smoothness_default);
    const double sat = cfg.get_double("hpa.sat_amplitude", sat_amplitude_default);
    const double gain = cfg.get_double("hpa.gain", 1.0);
    cvec taps = ReferenceAmplifier::default_taps();
    if (cfg.has("hpa.taps")) {
        taps.clear();
        std::istringstream in(cfg.get_string("hpa.taps"));
        double v;
        while (in >> v) taps.emplace_back(v, 0.0);
        double n2 = 0.0;
        for (const cplx& t : taps) n2 += std::norm(t);
        for (cplx& t : taps) t /= std::sqrt(n2);
    }
    return ReferenceAmplifier(std::move(taps), s, sat, gain);
}

inline IdentifiedChain identify_chain(const Config& cfg, std::uint64_t seed,
                                      double sat_default, double smooth_default,
                                      double fit_backoff_default, double drive_backoff_default) {
    IdentifiedChain ch{amp_from_config(cfg, sat_default, smooth_default), {}, 0.0};
    const double sat2 = ch.amp.saturation_amplitude * ch.amp.saturation_amplitude;
    const double fit_power = sat2 / db_to_linear(cfg.get_double("fit.backoff_db", fit_backoff_default));
    ch.drive_power_w = sat2 / db_to_linear(cfg.get_double("waveform.backoff_db", drive_backoff_default));

    const std::size_t p = static_cast<std::size_t>(cfg.get_int("fit.order_p", 7));
    const std::size_t m = static_cast<std::size_t>(cfg.get_int("fit.memory_m", 3));
    const std::size_t n_sym = static_cast<std::size_t>(cfg.get_int("fit.n_symbols", 64));

    ComplexSignal exc = gen_ofdm_like(64, n_sym, Constellation::QPSK, 4,
                                      derive_seed(seed, "fit_excitation"))
                            .scaled_to_power(fit_power);
    ComplexSignal resp = eval_reference(ch.amp, exc);
    ch.fit = fit_mpm(exc, resp, p, m);
    return ch;
}

// ---- fit: identification error across the (P, M) grid ----

struct FitRunResult {
    std::vector<std::tuple<std::size_t, std::size_t, double>> nmse_table; // (P, M, NMSE dB)
    std::size_t best_p = 0, best_m = 0;
    double best_nmse_db = 0.0;
    MemoryPolynomial best_model;
    double condition_estimate = 0.0;
};

inline FitRunResult run_fit(const Config& cfg, std::uint64_t seed, const std::string& out_dir) {
    ReferenceAmplifier amp = amp_from_config(cfg, 1.0, 1.0);
    const double sat2 = amp.saturation_amplitude * amp.saturation_amplitude;
    const double drive = sat2 / db_to_linear(cfg.get_double("waveform.backoff_db", 3.098));
    const std::size_t n_sym = static_cast<std::size_t>(cfg.get_int("waveform.n_symbols", 48));

    ComplexSignal x = gen_ofdm_like(64, n_sym, Constellation::QPSK, 4,
                                    derive_seed(seed, "fit_train")).scaled_to_power(drive);
    ComplexSignal y = eval_reference(amp, x);
    ComplexSignal xh = gen_ofdm_like(64, n_sym, Constellation::QPSK, 4,
                                     derive_seed(seed, "fit_holdout")).scaled_to_power(drive);
    ComplexSignal yh = eval_reference(amp, xh);

    FitRunResult res;
    res.best_nmse_db = 1e9;
    double best_cond = 0.0;
    for (std::size_t p : {1u, 3u, 5u, 7u}) {
        for (std::size_t m : {0u, 1u, 2u, 3u}) {
            const MpmFit fit = fit_mpm(x, y, p, m);
            const double nm = nmse_db(fit.model, xh, yh);
            res.nmse_table.emplace_back(p, m, nm);
            if (nm < res.best_nmse_db) {
                res.best_nmse_db = nm;
                res.best_p = p;
                res.best_m = m;
                res.best_model = fit.model;
                best_cond = fit.condition_estimate;
            }
        }
    }
    res.condition_estimate = best_cond;

    if (!out_dir.empty()) {
        CsvWriter w(detail::out_path(out_dir, "fit_nmse.csv").string());
        w.row({"order_p", "memory_m", "nmse_db"});
        for (const auto& [p, m, nm] : res.nmse_table)
            w.row({std::to_string(p), std::to_string(m), csv_num(nm)});
        std::ofstream mj(detail::out_path(out_dir, "fit_model.json"), std::ios::binary);
        mj << to_json(res.best_model).dump(2) << '\n';
        detail::write_metadata(out_dir, "fit", cfg, seed,
                               {{"best_p", res.best_p},
                                {"best_m", res.best_m},
                                {"best_nmse_db", res.best_nmse_db},
                                {"condition_estimate", res.condition_estimate}});
    }
    return res;
}

// ---- psd: spectra of input, raw amplifier output and DPD+amplifier output ----

struct PsdRunResult {
    double acpr_in_db = 0.0, acpr_hpa_db = 0.0, acpr_dpd_db = 0.0;
    double improvement_db = 0.0; // DPD+HPA over raw HPA, worse adjacent side
    double regrowth_db = 0.0;    // input over raw HPA
};

inline PsdRunResult run_psd(const Config& cfg, std::uint64_t seed, const std::string& out_dir) {
    IdentifiedChain ch = identify_chain(cfg, seed, 1.0, 1.0, 3.098, 9.897);
    const std::size_t n_sym = static_cast<std::size_t>(cfg.get_int("waveform.n_symbols", 96));

    // four-band surrogate: sub-bands of 64 carriers at oversampling 32,
    // spaced fs/32 -> a contiguous fs/8 block around DC
    ComplexSignal x = gen_multiband(4, 1.0 / 32.0, 64, n_sym, Constellation::QPSK, 32,
                                    derive_seed(seed, "psd_waveform"), 1.0)
                          .scaled_to_power(ch.drive_power_w);
    ComplexSignal y_raw = eval_reference(ch.amp, x);

    DpdConfig dpd;
    dpd.saturation_guard = cfg.get_double("dpd.saturation_guard", 1.0);
    dpd.tolerance = cfg.get_double("dpd.tolerance", 1e-8);
    dpd.max_iterations = static_cast<std::size_t>(cfg.get_int("dpd.max_iterations", 50));
    auto [xd, rep] = dpd_invert(ch.fit.model, x, dpd);
    ComplexSignal y_dpd = eval_reference(ch.amp, xd);

    const std::size_t seg = static_cast<std::size_t>(cfg.get_int("psd.segment_length", 1024));
    const double ov = cfg.get_double("psd.overlap_fraction", 0.5);
    const SpectrumEstimate s_in = psd_welch(x, seg, ov);
    const SpectrumEstimate s_raw = psd_welch(y_raw, seg, ov);
    const SpectrumEstimate s_dpd = psd_welch(y_dpd, seg, ov);

    const double fs = x.sample_rate_hz;
    const std::pair<double, double> main{cfg.get_double("psd.main_lo_hz", -fs / 16.0),
                                         cfg.get_double("psd.main_hi_hz", fs / 16.0)};
    const std::pair<double, double> adj_r{cfg.get_double("psd.adj_lo_hz", fs / 16.0 + fs / 64.0),
                                          cfg.get_double("psd.adj_hi_hz", 3.0 * fs / 16.0 + fs / 64.0)};
    const std::pair<double, double> adj_l{-adj_r.second, -adj_r.first};

    auto worst = [&](const SpectrumEstimate& s) {
        return std::min(acpr_db(s, main, adj_r), acpr_db(s, main, adj_l));
    };
    PsdRunResult res;
    res.acpr_in_db = worst(s_in);
    res.acpr_hpa_db = worst(s_raw);
    res.acpr_dpd_db = worst(s_dpd);
    res.improvement_db = res.acpr_dpd_db - res.acpr_hpa_db;
    res.regrowth_db = res.acpr_in_db - res.acpr_hpa_db;

    if (!out_dir.empty()) {
        write_psd_csv(detail::out_path(out_dir, "psd_input.csv").string(), s_in);
        write_psd_csv(detail::out_path(out_dir, "psd_hpa.csv").string(), s_raw);
        write_psd_csv(detail::out_path(out_dir, "psd_dpd.csv").string(), s_dpd);
        detail::write_metadata(out_dir, "psd", cfg, seed,
                               {{"acpr_in_db", res.acpr_in_db},
                                {"acpr_hpa_db", res.acpr_hpa_db},
                                {"acpr_dpd_db", res.acpr_dpd_db},
                                {"improvement_db", res.improvement_db},
                                {"regrowth_db", res.regrowth_db}});
    }
    return res;
}

// ---- ccdf: instantaneous-power CCDFs for input, raw and predistorted chains ----

struct CcdfRunResult {
    double papr_in_db = 0.0;  // threshold where the input CCDF crosses 1e-3
    double papr_hpa_db = 0.0;
    double papr_dpd_db = 0.0;
    double clipping_gap_db = 0.0;    // input - raw
    double dpd_restoration_db = 0.0; // |input - dpd|
};

inline CcdfRunResult run_ccdf(const Config& cfg, std::uint64_t seed, const std::string& out_dir) {
    IdentifiedChain ch = identify_chain(cfg, seed, 1.0, 1.0, 3.098, 9.897);
    const std::size_t n_sym = static_cast<std::size_t>(cfg.get_int("waveform.n_symbols", 400));

    const std::string wtype = cfg.get_string("waveform.type", "ofdm");
    ComplexSignal x = (wtype == "tone")
                          ? gen_multisine(1, 1.0 / 64.0, n_sym * 256, 1.0, zero_phases(1))
                          : gen_ofdm_like(64, n_sym, Constellation::QPSK, 4,
                                          derive_seed(seed, "ccdf_waveform"));
    x = x.scaled_to_power(ch.drive_power_w);
    ComplexSignal y_raw = eval_reference(ch.amp, x);

    DpdConfig dpd;
    dpd.tolerance = cfg.get_double("dpd.tolerance", 1e-8);
    dpd.max_iterations = static_cast<std::size_t>(cfg.get_int("dpd.max_iterations", 50));
    dpd.saturation_guard = cfg.get_double("dpd.saturation_guard", 1.0);
    auto [xd, rep] = dpd_invert(ch.fit.model, x, dpd);
    ComplexSignal y_dpd = eval_reference(ch.amp, xd);

    std::vector<double> thresholds;
    for (double t = 0.0; t <= 12.0 + 1e-9; t += 0.25) thresholds.push_back(t);

    const double prob = cfg.get_double("ccdf.probability", 1e-3);
    CcdfRunResult res;
    res.papr_in_db = ccdf_threshold_at(x, prob);
    res.papr_hpa_db = ccdf_threshold_at(y_raw, prob);
    res.papr_dpd_db = ccdf_threshold_at(y_dpd, prob);
    res.clipping_gap_db = res.papr_in_db - res.papr_hpa_db;
    res.dpd_restoration_db = std::abs(res.papr_in_db - res.papr_dpd_db);

    if (!out_dir.empty()) {
        write_ccdf_csv(detail::out_path(out_dir, "ccdf_input.csv").string(), ccdf(x, thresholds));
        write_ccdf_csv(detail::out_path(out_dir, "ccdf_hpa.csv").string(), ccdf(y_raw, thresholds));
        write_ccdf_csv(detail::out_path(out_dir, "ccdf_dpd.csv").string(), ccdf(y_dpd, thresholds));
        write_dpd_report_csv(detail::out_path(out_dir, "dpd_report.csv").string(), rep);
        detail::write_metadata(out_dir, "ccdf", cfg, seed,
                               {{"papr_in_db", res.papr_in_db},
                                {"papr_hpa_db", res.papr_hpa_db},
                                {"papr_dpd_db", res.papr_dpd_db},
                                {"clipping_gap_db", res.clipping_gap_db},
                                {"dpd_restoration_db", res.dpd_restoration_db}});
    }
    return res;
}

// ---- shared link-experiment plumbing ----

struct LinkExperimentSetup {
    std::size_t n_t = 3, n_r = 2;
    double distance_m = 12.0, pathloss_exponent = 2.6;
    LinkNoise noise{dbm_to_watt(-70.0), dbm_to_watt(-50.0)};
    std::size_t n_channels = 100;
    std::size_t n_threads = 0;
    ComplexSignal x;
    HpaChain chain;
};

inline LinkExperimentSetup link_setup(const Config& cfg, std::uint64_t seed,
                                      double smoothness, double per_antenna_backoff_db,
                                      double fit_backoff_db, double guard,
                                      std::size_t n_channels_default) {
    LinkExperimentSetup s;
    s.n_t = static_cast<std::size_t>(cfg.get_int("link.n_t", 3));
    s.n_r = static_cast<std::size_t>(cfg.get_int("link.n_r", 2));
    s.distance_m = cfg.get_double("link.distance_m", 12.0);
    s.pathloss_exponent = cfg.get_double("link.pathloss_exponent", 2.6);
    s.noise.sigma_v_sq_w = dbm_to_watt(cfg.get_double("link.sigma_v_sq_dbm", -70.0));
    s.noise.sigma_a_sq_w = dbm_to_watt(cfg.get_double("link.sigma_a_sq_dbm", -50.0));
    s.n_channels = static_cast<std::size_t>(cfg.get_int("link.n_channels", static_cast<long long>(n_channels_default)));
    s.n_threads = static_cast<std::size_t>(cfg.get_int("link.n_threads", 0));

    const std::size_t n_sym = static_cast<std::size_t>(cfg.get_int("waveform.n_symbols", 8));
    s.x = gen_ofdm_like(64, n_sym, Constellation::QPSK, 4, derive_seed(seed, "link_waveform"));

    // amplifier sized against the per-antenna share of the reference power
    const double ref_pt_w = dbm_to_watt(cfg.get_double("hpa.ref_pt_dbm", 14.0));
    const double backoff = cfg.get_double("hpa.per_antenna_backoff_db", per_antenna_backoff_db);
    const double smooth = cfg.get_double("hpa.smoothness", smoothness);
    ReferenceAmplifier amp =
        ReferenceAmplifier::for_drive_power(ref_pt_w / static_cast<double>(s.n_t), backoff, smooth);

    const double sat2 = amp.saturation_amplitude * amp.saturation_amplitude;
    const double fit_power = sat2 / db_to_linear(cfg.get_double("fit.backoff_db", fit_backoff_db));
    ComplexSignal exc = gen_ofdm_like(64, 64, Constellation::QPSK, 4,
                                      derive_seed(seed, "link_fit")).scaled_to_power(fit_power);
    ComplexSignal resp = eval_reference(amp, exc);
    MpmFit fit = fit_mpm(exc, resp, 7, 3);

    s.chain.truth = amp;
    s.chain.dpd_model = fit.model;
    s.chain.dpd.tolerance = cfg.get_double("dpd.tolerance", 1e-8);
    s.chain.dpd.saturation_guard = cfg.get_double("dpd.saturation_guard", guard);
    // clamp inversions at the physical amplifier's headroom; the fitted
    // polynomial is meaningless beyond the excitation range
    s.chain.dpd.guard_amplitude = s.chain.dpd.saturation_guard * amp.saturation_amplitude;
    s.chain.dpd.max_iterations = static_cast<std::size_t>(cfg.get_int("dpd.max_iterations", 50));
    return s;
}

inline std::vector<ChannelMatrix> draw_channels(const LinkExperimentSetup& s, std::uint64_t seed) {
    std::vector<ChannelMatrix> out(s.n_channels);
    for (std::size_t i = 0; i < s.n_channels; ++i)
        out[i] = gen_channel(s.n_t, s.n_r, s.distance_m, s.pathloss_exponent,
                             derive_seed(seed, "channel", i));
    return out;
}

// ---- rate_sweep: ergodic spectral efficiency vs transmit power ----

struct RateSweepPoint {
    double pt_dbm = 0.0;
    double rate_dpd = 0.0;
    double rate_raw = 0.0;
    double gap_fraction = 0.0; // (dpd - raw) / dpd
};

struct RateSweepResult {
    std::vector<RateSweepPoint> points;

    const RateSweepPoint& at(double pt_dbm) const {
        for (const auto& p : points)
            if (std::abs(p.pt_dbm - pt_dbm) < 1e-9) return p;
        throw config_error("rate sweep point not found");
    }
};

// Rates come from the simulated chains: achieved signal power over measured
// residual distortion plus both noise terms, averaged over the channel set.
inline RateSweepResult run_rate_sweep(const Config& cfg, std::uint64_t seed,
                                      const std::string& out_dir) {
    LinkExperimentSetup s = link_setup(cfg, seed, 3.0, 3.0, 5.193, 1.5, 40);
    const double lo = cfg.get_double("sweep.pt_lo_dbm", 0.0);
    const double hi = cfg.get_double("sweep.pt_hi_dbm", 40.0);
    const double step = cfg.get_double("sweep.pt_step_db", 2.0);

    const std::vector<ChannelMatrix> channels = draw_channels(s, seed);
    std::vector<EigResult> eigs(channels.size());
    parallel_for(channels.size(), [&](std::size_t i) { eigs[i] = principal_eig(channels[i]); },
                 s.n_threads);

    RateSweepResult res;
    const double sv = s.noise.sigma_v_sq_w, sa = s.noise.sigma_a_sq_w;
    for (double pt = lo; pt <= hi + 1e-9; pt += step) {
        const double pt_w = dbm_to_watt(pt);
        std::vector<double> r0(channels.size()), r1(channels.size());
        parallel_for(channels.size(), [&](std::size_t i) {
            const LinkMeasurement m0 = measure_link(channels[i], eigs[i], s.x, pt_w, s.noise, 0, s.chain);
            const LinkMeasurement m1 = measure_link(channels[i], eigs[i], s.x, pt_w, s.noise, 1, s.chain);
            r0[i] = std::log2(1.0 + m0.achieved_signal_w / (m0.residual_w + sv + sa));
            r1[i] = std::log2(1.0 + m1.achieved_signal_w / (m1.residual_w + sv + sa));
        }, s.n_threads);
        double rate0 = 0.0, rate1 = 0.0;
        for (std::size_t i = 0; i < channels.size(); ++i) {
            rate0 += r0[i];
            rate1 += r1[i];
        }
        rate0 /= static_cast<double>(channels.size());
        rate1 /= static_cast<double>(channels.size());
        res.points.push_back({pt, rate0, rate1, (rate0 - rate1) / std::max(rate0, 1e-12)});
    }

    if (!out_dir.empty()) {
        CsvWriter w(detail::out_path(out_dir, "rate_sweep.csv").string());
        w.row({"pt_dbm", "rate_dpd_bps_hz", "rate_raw_bps_hz", "gap_fraction"});
        for (const auto& p : res.points)
            w.row({csv_num(p.pt_dbm), csv_num(p.rate_dpd), csv_num(p.rate_raw), csv_num(p.gap_fraction)});
        detail::write_metadata(out_dir, "rate_sweep", cfg, seed,
                               {{"n_points", res.points.size()}, {"n_channels", channels.size()}});
    }
    return res;
}

// ---- re_region: rate-energy frontiers with and without predistortion ----

struct ReRegionRunResult {
    ReRegion ts_dpd, ts_raw, ps_dpd, ps_raw;
    RegionGain ts_gain, ps_gain;
};

inline ReRegionRunResult run_re_region(const Config& cfg, std::uint64_t seed,
                                       const std::string& out_dir) {
    LinkExperimentSetup s = link_setup(cfg, seed, 1.0, 12.0, 3.098, 1.9, 200);
    const double pt_w = dbm_to_watt(cfg.get_double("link.pt_dbm", 14.0));
    const std::size_t grid = static_cast<std::size_t>(cfg.get_int("region.grid_points", 101));

    EhModel eh;
    eh.p_h_l_w = dbm_to_watt(cfg.get_double("eh.p_h_l_dbm", -10.0));
    eh.p_h_u_w = dbm_to_watt(cfg.get_double("eh.p_h_u_dbm", 2.0));
    eh.eta = cfg.get_double("eh.eta", 0.24);

    ReLinkParams lp{s.x, pt_w, s.noise, eh, s.chain, s.n_threads};
    const std::vector<ChannelMatrix> channels = draw_channels(s, seed);

    ReRegionRunResult res;
    res.ts_dpd = re_region(SwiptArch::TS, 0, grid, channels, lp);
    res.ts_raw = re_region(SwiptArch::TS, 1, grid, channels, lp);
    res.ps_dpd = re_region(SwiptArch::PS, 0, grid, channels, lp);
    res.ps_raw = re_region(SwiptArch::PS, 1, grid, channels, lp);
    res.ts_gain = region_gain(res.ts_dpd, res.ts_raw);
    res.ps_gain = region_gain(res.ps_dpd, res.ps_raw);

    if (!out_dir.empty()) {
        write_re_region_csv(detail::out_path(out_dir, "re_ts_dpd.csv").string(), res.ts_dpd);
        write_re_region_csv(detail::out_path(out_dir, "re_ts_raw.csv").string(), res.ts_raw);
        write_re_region_csv(detail::out_path(out_dir, "re_ps_dpd.csv").string(), res.ps_dpd);
        write_re_region_csv(detail::out_path(out_dir, "re_ps_raw.csv").string(), res.ps_raw);
        nlohmann::json chj = nlohmann::json::array();
        for (const ChannelMatrix& ch : channels) chj.push_back(to_json(ch));
        std::ofstream chf(detail::out_path(out_dir, "channels.json"), std::ios::binary);
        chf << chj.dump(2) << '\n';
        auto gain_json = [](const RegionGain& g) {
            return nlohmann::json{{"area_gain", g.area_gain},
                                  {"eh_endpoint_gain", g.eh_endpoint_gain},
                                  {"id_endpoint_gain", g.id_endpoint_gain}};
        };
        detail::write_metadata(out_dir, "re_region", cfg, seed,
                               {{"ts", gain_json(res.ts_gain)},
                                {"ps", gain_json(res.ps_gain)},
                                {"ts_area_dpd", res.ts_dpd.area},
                                {"ts_area_raw", res.ts_raw.area},
                                {"ps_area_dpd", res.ps_dpd.area},
                                {"ps_area_raw", res.ps_raw.area},
                                {"n_channels", channels.size()}});
    }
    return res;
}

// ---- correlation: the input-distortion correlation dichotomy ----

struct CorrelationRunResult {
    CorrelationEstimate iid;
    CorrelationEstimate colored;
    double iid_sigma_ratio = 0.0;     // |mean| / std_error
    double colored_sigma_ratio = 0.0;
};

inline CorrelationRunResult run_correlation(const Config& cfg, std::uint64_t seed,
                                            const std::string& out_dir) {
    const std::size_t n = static_cast<std::size_t>(cfg.get_int("correlation.n_samples", 100000));
    const double c11 = cfg.get_double("correlation.c11", 0.3);

    MemoryPolynomial model(3, 1, {cplx(1.0, 0.0), cplx(c11, 0.0), cplx(-0.05, 0.0), cplx(0.0, 0.0),
                                  cplx(-0.08, 0.0), cplx(0.0, 0.0)});

    Rng rng(derive_seed(seed, "correlation_iid"));
    std::vector<cplx> iid(n);
    for (auto& v : iid) v = rng.cgaussian();
    ComplexSignal x_iid(std::move(iid), 1.0);

    // color by a short FIR (nonzero R_1)
    Rng rng2(derive_seed(seed, "correlation_colored"));
    std::vector<cplx> w(n + 3);
    for (auto& v : w) v = rng2.cgaussian();
    const double fir[4] = {0.7, 0.5, 0.3, 0.1};
    std::vector<cplx> col(n, {0.0, 0.0});
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t k = 0; k < 4; ++k) col[t] += fir[k] * w[t + 3 - k];
    ComplexSignal x_col(std::move(col), 1.0);
    x_col = x_col.scaled_to_power(1.0);

    CorrelationRunResult res;
    res.iid = input_distortion_correlation(model, x_iid);
    res.colored = input_distortion_correlation(model, x_col);
    res.iid_sigma_ratio = std::abs(res.iid.mean) / res.iid.std_error;
    res.colored_sigma_ratio = std::abs(res.colored.mean) / res.colored.std_error;

    if (!out_dir.empty()) {
        CsvWriter w2(detail::out_path(out_dir, "correlation.csv").string());
        w2.row({"case", "corr_re", "corr_im", "corr_abs", "std_error", "sigma_ratio"});
        w2.row({"iid", csv_num(res.iid.mean.real()), csv_num(res.iid.mean.imag()),
                csv_num(std::abs(res.iid.mean)), csv_num(res.iid.std_error),
                csv_num(res.iid_sigma_ratio)});
        w2.row({"colored", csv_num(res.colored.mean.real()), csv_num(res.colored.mean.imag()),
                csv_num(std::abs(res.colored.mean)), csv_num(res.colored.std_error),
                csv_num(res.colored_sigma_ratio)});
        detail::write_metadata(out_dir, "correlation", cfg, seed,
                               {{"iid_sigma_ratio", res.iid_sigma_ratio},
                                {"colored_sigma_ratio", res.colored_sigma_ratio}});
    }
    return res;
}

} // namespace swl
