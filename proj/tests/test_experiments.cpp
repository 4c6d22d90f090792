#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "swl/experiments.hpp"

using namespace swl;

TEST_CASE("fit experiment: error minimum sits at the largest orders") {
    const FitRunResult r = run_fit(Config(), 5, "");
    CHECK(r.best_p == 7);
    CHECK(r.best_m == 3);
    CHECK(r.best_nmse_db <= -40.0);
    // nested models: every (P, M) above (1,0) does at least as well
    double nmse_10 = 0.0;
    for (const auto& [p, m, nm] : r.nmse_table)
        if (p == 1 && m == 0) nmse_10 = nm;
    CHECK(r.best_nmse_db <= nmse_10);
}

TEST_CASE("fit experiment: identity amplifier fits exactly at (1,0)") {
    const Config cfg = Config::from_string(
        "[hpa]\ntaps = 1\nsat_amplitude = 1e6\n");
    const FitRunResult r = run_fit(cfg, 6, "");
    for (const auto& [p, m, nm] : r.nmse_table)
        if (p == 1 && m == 0) CHECK(nm <= -200.0);
}

TEST_CASE("psd experiment: linear amplifier leaves all three spectra equal") {
    const Config cfg = Config::from_string(
        "[hpa]\ntaps = 1\nsat_amplitude = 1e6\n[waveform]\nn_symbols = 24\n");
    const PsdRunResult r = run_psd(cfg, 7, "");
    CHECK(std::abs(r.acpr_in_db - r.acpr_hpa_db) <= 0.2);
    CHECK(std::abs(r.acpr_in_db - r.acpr_dpd_db) <= 0.2);
}

TEST_CASE("psd experiment: spectral regrowth appears and DPD removes it") {
    const Config cfg = Config::from_string("[waveform]\nn_symbols = 48\n");
    const PsdRunResult r = run_psd(cfg, 8, "");
    CHECK(r.regrowth_db >= 10.0);      // raw chain degrades ACPR
    CHECK(r.improvement_db >= 10.0);   // predistortion recovers most of it
}

TEST_CASE("ccdf experiment: constant-envelope input keeps every chain at 0 dB") {
    const Config cfg = Config::from_string(
        "[waveform]\ntype = tone\nn_symbols = 16\n");
    const CcdfRunResult r = run_ccdf(cfg, 9, "");
    CHECK(std::abs(r.papr_in_db) <= 1e-6);
    CHECK(std::abs(r.papr_hpa_db) <= 1e-6);
    CHECK(std::abs(r.papr_dpd_db) <= 0.01);
}

TEST_CASE("ccdf experiment writes the dpd report") {
    const auto dir = std::filesystem::temp_directory_path() / "swl_ccdf_run";
    std::filesystem::create_directories(dir);
    const Config cfg = Config::from_string("[waveform]\nn_symbols = 8\n");
    run_ccdf(cfg, 10, dir.string());
    std::ifstream rep(dir / "dpd_report.csv");
    REQUIRE(rep);
    std::string header;
    std::getline(rep, header);
    CHECK(header == "n,iterations,converged,residual");
    std::filesystem::remove_all(dir);
}
