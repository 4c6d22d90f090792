#pragma once

#include "swl/errors.hpp"

namespace swl {

// Piecewise-linear energy harvester: dead below the sensitivity threshold,
// linear with efficiency eta in between, flat above saturation. The
// harvesting branch is taken at both breakpoints (left-closed at p_h_l).
struct EhModel {
    double p_h_l_w = 1e-4;        // sensitivity threshold (-10 dBm)
    double p_h_u_w = 1.5848931924611136e-3; // saturation input (2 dBm)
    double eta = 0.24;

    void validate() const {
        if (!(p_h_l_w >= 0.0)) throw config_error("EhModel: p_h_l must be >= 0");
        if (!(p_h_u_w > p_h_l_w)) throw config_error("EhModel: p_h_u must exceed p_h_l");
        if (eta < 0.0 || eta > 1.0) throw config_error("EhModel: eta must be in [0,1]");
    }
};

inline double harvest(const EhModel& eh, double xi_w) {
    eh.validate();
    if (xi_w < 0.0) throw config_error("harvest: input power must be >= 0");
    if (xi_w < eh.p_h_l_w) return 0.0;
    if (xi_w <= eh.p_h_u_w) return eh.eta * xi_w;
    return eh.eta * eh.p_h_u_w;
}

} // namespace swl
