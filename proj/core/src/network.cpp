// SPDX-License-Identifier: Apache-2.0
#include "cellcov/network.hpp"

#include "cellcov/errors.hpp"

namespace cellcov {

void network_config::validate() const {
    if (!(lambda > 0.0)) throw domain_error("network_config: lambda must be > 0");
    if (!(delta_h >= 0.0)) throw domain_error("network_config: delta_h must be >= 0");
    if (!(power > 0.0)) throw domain_error("network_config: power must be > 0");
    if (!(tau > 0.0)) throw domain_error("network_config: tau must be > 0");
    if (n_antennas < 1) throw domain_error("network_config: n_antennas must be >= 1");
    if (!(cp_requirement >= 0.0 && cp_requirement < 1.0))
        throw domain_error("network_config: cp_requirement must lie in [0, 1)");
}

const char* to_string(method m) {
    switch (m) {
        case method::siso_exact: return "siso_exact";
        case method::miso_exact: return "miso_exact";
        case method::miso_approx: return "miso_approx";
        case method::siso_lower_bound: return "siso_lower_bound";
        case method::siso_upper_bound: return "siso_upper_bound";
        case method::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

}  // namespace cellcov
