// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace cellcov {

/// Deployment and link parameters shared by every coverage expression.
/// Internal units are SI throughout: density per m^2, heights in meters,
/// power in watts, threshold linear.
struct network_config {
    double lambda = 0.0;        ///< BS density (per m^2)
    double delta_h = 0.0;       ///< antenna-height difference (m)
    double power = 0.1995262314968880;  ///< transmit power (W); 23 dBm
    double tau = 1.0;           ///< SIR decoding threshold (linear)
    int n_antennas = 1;         ///< antennas per BS
    double cp_requirement = 0.0;  ///< coverage-probability floor in [0, 1)

    /// Effective threshold tau / n_antennas used by the exponential
    /// approximation of the beamformed desired gain. Always recomputed.
    double tau_dagger() const { return tau / n_antennas; }

    void validate() const;  // throws domain_error on out-of-domain fields
};

enum class method {
    siso_exact,
    miso_exact,
    miso_approx,
    siso_lower_bound,
    siso_upper_bound,
    monte_carlo,
};

const char* to_string(method m);

/// One evaluated point of the coverage/throughput curves.
struct cp_st_point {
    double lambda = 0.0;  ///< BS per m^2
    double cp = 0.0;      ///< coverage probability
    double st = 0.0;      ///< spatial throughput, bits/(s*Hz*m^2)
    method tag = method::siso_exact;
};

}  // namespace cellcov
