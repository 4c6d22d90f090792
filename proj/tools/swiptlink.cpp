#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "swl/swl.hpp"

namespace {

struct CliArgs {
    std::string config_path;
    long long seed = -1; // -1: take the config's seed
    std::string out_dir = "out";
};

int dispatch(const std::string& experiment, const CliArgs& args) {
    swl::Config cfg = args.config_path.empty() ? swl::Config() : swl::Config::from_file(args.config_path);
    const std::uint64_t seed = args.seed >= 0
                                   ? static_cast<std::uint64_t>(args.seed)
                                   : static_cast<std::uint64_t>(cfg.get_int("experiment.seed", 1));
    std::filesystem::create_directories(args.out_dir);

    if (experiment == "fit") {
        const swl::FitRunResult r = swl::run_fit(cfg, seed, args.out_dir);
        std::printf("best (P,M) = (%zu,%zu), held-out NMSE = %.2f dB\n", r.best_p, r.best_m, r.best_nmse_db);
    } else if (experiment == "psd") {
        const swl::PsdRunResult r = swl::run_psd(cfg, seed, args.out_dir);
        std::printf("ACPR input %.1f dBc | HPA %.1f dBc | DPD+HPA %.1f dBc (improvement %.1f dB)\n",
                    r.acpr_in_db, r.acpr_hpa_db, r.acpr_dpd_db, r.improvement_db);
    } else if (experiment == "ccdf") {
        const swl::CcdfRunResult r = swl::run_ccdf(cfg, seed, args.out_dir);
        std::printf("PAPR@1e-3: input %.2f dB | HPA %.2f dB | DPD+HPA %.2f dB (clip gap %.2f dB)\n",
                    r.papr_in_db, r.papr_hpa_db, r.papr_dpd_db, r.clipping_gap_db);
    } else if (experiment == "rate_sweep") {
        const swl::RateSweepResult r = swl::run_rate_sweep(cfg, seed, args.out_dir);
        for (const auto& p : r.points)
            std::printf("Pt %5.1f dBm  rate(DPD) %7.3f  rate(raw) %7.3f  gap %+6.2f%%\n",
                        p.pt_dbm, p.rate_dpd, p.rate_raw, 100.0 * p.gap_fraction);
    } else if (experiment == "re_region") {
        const swl::ReRegionRunResult r = swl::run_re_region(cfg, seed, args.out_dir);
        std::printf("TS area gain %+.1f%% (EH endpoint %+.1f%%, ID endpoint %+.2f%%)\n",
                    100.0 * r.ts_gain.area_gain, 100.0 * r.ts_gain.eh_endpoint_gain,
                    100.0 * r.ts_gain.id_endpoint_gain);
        std::printf("PS area gain %+.1f%% (EH endpoint %+.1f%%, ID endpoint %+.2f%%)\n",
                    100.0 * r.ps_gain.area_gain, 100.0 * r.ps_gain.eh_endpoint_gain,
                    100.0 * r.ps_gain.id_endpoint_gain);
    } else if (experiment == "correlation") {
        const swl::CorrelationRunResult r = swl::run_correlation(cfg, seed, args.out_dir);
        std::printf("i.i.d. input: |corr|/SE = %.2f | colored input: |corr|/SE = %.2f\n",
                    r.iid_sigma_ratio, r.colored_sigma_ratio);
    } else {
        std::fprintf(stderr, "unknown experiment: %s\n", experiment.c_str());
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"swiptlink: nonlinear-amplifier MIMO SWIPT link simulator"};
    app.require_subcommand(1);

    CliArgs args;
    const std::vector<std::string> experiments = {"fit", "psd", "ccdf", "rate_sweep", "re_region", "correlation"};
    for (const std::string& name : experiments) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", args.config_path, "config file (key = value with [sections])");
        sub->add_option("--seed", args.seed, "override the config seed");
        sub->add_option("--out", args.out_dir, "output directory (default: out)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    const std::string experiment = app.get_subcommands().front()->get_name();
    try {
        return dispatch(experiment, args);
    } catch (const swl::config_error& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const swl::identifiability_error& e) {
        std::fprintf(stderr, "identifiability error: %s\n", e.what());
        return 3;
    } catch (const swl::numerical_error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
