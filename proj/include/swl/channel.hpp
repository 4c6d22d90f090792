#pragma once

#include <cmath>

#include <json.hpp>

#include "swl/complex_signal.hpp"
#include "swl/errors.hpp"
#include "swl/linalg.hpp"
#include "swl/rng.hpp"

namespace swl {

// Rayleigh MIMO channel with deterministic pathloss folded into the entries
// (amplitude scale sqrt(pathloss)), so downstream SNR/eigen formulas can use
// the matrix verbatim.
struct ChannelMatrix {
    CMatrix h; // N_R x N_T, includes pathloss
    double pathloss_linear = 1.0;

    std::size_t n_rx() const { return h.rows(); }
    std::size_t n_tx() const { return h.cols(); }
};

inline ChannelMatrix gen_channel(std::size_t n_t, std::size_t n_r, double distance_m,
                                 double pathloss_exponent, std::uint64_t seed) {
    if (n_t == 0 || n_r == 0) throw config_error("gen_channel: antenna counts must be >= 1");
    if (!(distance_m > 0.0)) throw config_error("gen_channel: distance must be > 0");
    ChannelMatrix ch;
    ch.pathloss_linear = std::pow(distance_m, -pathloss_exponent);
    ch.h = CMatrix(n_r, n_t);
    Rng rng(derive_seed(seed, "channel"));
    const double amp = std::sqrt(ch.pathloss_linear);
    for (std::size_t r = 0; r < n_r; ++r)
        for (std::size_t c = 0; c < n_t; ++c)
            ch.h(r, c) = amp * rng.cgaussian();
    return ch;
}

// Row-major export, each entry as [re, im].
inline nlohmann::json to_json(const ChannelMatrix& ch) {
    nlohmann::json j;
    j["n_rx"] = ch.n_rx();
    j["n_tx"] = ch.n_tx();
    j["pathloss_linear"] = ch.pathloss_linear;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < ch.n_rx(); ++r)
        for (std::size_t c = 0; c < ch.n_tx(); ++c)
            rows.push_back({ch.h(r, c).real(), ch.h(r, c).imag()});
    j["entries"] = rows;
    return j;
}

inline ChannelMatrix channel_from_json(const nlohmann::json& j) {
    ChannelMatrix ch;
    const std::size_t nr = j.at("n_rx").get<std::size_t>();
    const std::size_t nt = j.at("n_tx").get<std::size_t>();
    ch.pathloss_linear = j.at("pathloss_linear").get<double>();
    ch.h = CMatrix(nr, nt);
    const auto& e = j.at("entries");
    if (e.size() != nr * nt) throw config_error("channel_from_json: entry count mismatch");
    for (std::size_t i = 0; i < nr * nt; ++i)
        ch.h(i / nt, i % nt) = cplx(e[i][0].get<double>(), e[i][1].get<double>());
    return ch;
}

} // namespace swl
