// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "cellcov/network.hpp"
#include "cellcov/pathloss.hpp"

namespace cellcov {

enum class binding_constraint { unconstrained_peak, cp_boundary };

/// Critical deployment densities: the unconstrained throughput maximizer and
/// the maximizer subject to the coverage floor. When the coverage floor is
/// infeasible both densities are absent.
struct critical_density_result {
    std::optional<double> lambda_unconstrained;  ///< per m^2
    std::optional<double> lambda_constrained;    ///< per m^2
    bool feasible = false;
    binding_constraint binding = binding_constraint::unconstrained_peak;
};

/// Necessary condition for the coverage floor cfg.cp_requirement to be
/// attainable at any density: delta(tau/n_antennas, alpha_last) < 1/eps - 1.
/// eps == 0 is unconditionally feasible.
bool feasibility(const pathloss_model& model, const network_config& cfg);

/// Closed-form critical densities under a single slope alpha0 > 2. Requires
/// delta_h > 0 (the unconstrained peak diverges otherwise). The constrained
/// density solves CP = eps and is capped by the unconstrained peak.
critical_density_result critical_density_sspm(double alpha0, const network_config& cfg);

/// Closed-form critical densities under a dual slope model; valid
/// approximation when the corner distance r1 is large. delta_h = 0 allowed.
critical_density_result critical_density_dspm(double alpha0, double alpha1, double r1,
                                              const network_config& cfg);

/// Numeric critical densities for any model: maximizes spatial throughput on
/// an expanding log grid followed by golden-section refinement (0.5%
/// relative), with the exact beamforming CP (use_exact) or the
/// effective-threshold approximation. The constrained density intersects
/// CP = eps by bisection. Throws shape_error when the throughput profile
/// shows several distinct maxima.
critical_density_result critical_density_numeric(const pathloss_model& model,
                                                 const network_config& cfg, bool use_exact);

namespace detail {

/// Golden-section maximizer in log space on [lo, hi]; returns {argmax, max}.
/// rel_tol is the relative width of the final bracket.
std::pair<double, double> golden_max_log(const std::function<double(double)>& f, double lo,
                                         double hi, double rel_tol);

}  // namespace detail

}  // namespace cellcov
