#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "swl/complex_signal.hpp"
#include "swl/errors.hpp"
#include "swl/units.hpp"

namespace swl {

// Peak-to-average power ratio in dB. Always >= 0; 0 only for constant envelope.
inline double papr_db(const ComplexSignal& sig) {
    const double mean = sig.mean_power();
    if (!(mean > 0.0)) throw undefined_statistic_error("papr_db: zero-power signal");
    return linear_to_db(sig.peak_power() / mean);
}

struct CcdfPoint {
    double threshold_db;
    double probability;
};

// CCDF of the instantaneous-power-to-mean-power ratio. thresholds_db must be
// sorted ascending; the result is non-increasing in threshold.
inline std::vector<CcdfPoint> ccdf(const ComplexSignal& sig, const std::vector<double>& thresholds_db) {
    for (std::size_t i = 1; i < thresholds_db.size(); ++i)
        if (thresholds_db[i] < thresholds_db[i - 1])
            throw config_error("ccdf: thresholds must be sorted ascending");
    const double mean = sig.mean_power();
    if (!(mean > 0.0)) throw undefined_statistic_error("ccdf: zero-power signal");

    std::vector<double> ratio_db(sig.samples.size());
    for (std::size_t n = 0; n < sig.samples.size(); ++n)
        ratio_db[n] = linear_to_db(std::max(std::norm(sig.samples[n]) / mean, 1e-300));
    std::sort(ratio_db.begin(), ratio_db.end());

    std::vector<CcdfPoint> out;
    out.reserve(thresholds_db.size());
    const double n_total = static_cast<double>(ratio_db.size());
    for (double t : thresholds_db) {
        const auto it = std::upper_bound(ratio_db.begin(), ratio_db.end(), t);
        out.push_back({t, static_cast<double>(ratio_db.end() - it) / n_total});
    }
    return out;
}

// Threshold (dB) at which the CCDF crosses the given probability; linear
// interpolation between the bracketing order statistics.
inline double ccdf_threshold_at(const ComplexSignal& sig, double probability) {
    if (!(probability > 0.0 && probability < 1.0))
        throw config_error("ccdf_threshold_at: probability must be in (0,1)");
    const double mean = sig.mean_power();
    if (!(mean > 0.0)) throw undefined_statistic_error("ccdf_threshold_at: zero-power signal");
    std::vector<double> r(sig.samples.size());
    for (std::size_t n = 0; n < r.size(); ++n) r[n] = std::norm(sig.samples[n]) / mean;
    std::sort(r.begin(), r.end());
    const double pos = (1.0 - probability) * static_cast<double>(r.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, r.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return linear_to_db(std::max(r[lo] * (1.0 - frac) + r[hi] * frac, 1e-300));
}

} // namespace swl
