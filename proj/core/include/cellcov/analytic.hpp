// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cellcov/network.hpp"
#include "cellcov/pathloss.hpp"

namespace cellcov {

/// Coverage probability of the typical single-antenna user: closed form for
/// a single slope, otherwise a segment-wise expectation over the contact
/// distance with hypergeometric inner integrals. Serving segments follow the
/// ground distance; interferer breakpoints are lifted to antenna distance by
/// the height offset.
double cp_siso(const pathloss_model& model, const network_config& cfg);

/// Spatial throughput lambda * cp * log2(1 + tau), bits/(s*Hz*m^2).
double st_from_cp(double lambda, double cp, double tau);

/// Log-Laplace transform of the intercell interference seen from serving
/// distance d0, eta(s) = ln L(s), together with its first k_max derivatives:
/// returns [eta, eta', ..., eta^(k_max)]. eta < 0 and the derivative signs
/// alternate, sign(eta^(n)) = (-1)^n.
std::vector<double> eta_derivatives(const pathloss_model& model, const network_config& cfg,
                                    double d0, double s, int k_max);

/// Exact coverage probability under single-user beamforming with
/// cfg.n_antennas transmit antennas: the chi-square tail turns into a sum of
/// scaled Laplace-transform derivatives, assembled through the
/// exp-composition recursion and averaged over the contact distance.
double cp_miso_exact(const pathloss_model& model, const network_config& cfg);

/// Beamforming approximation: the desired gain is replaced by an exponential
/// with matched mean, which reduces to cp_siso at the effective threshold
/// tau / n_antennas.
double cp_miso_approx(const pathloss_model& model, const network_config& cfg);

/// Closed-form lower bound on cp_siso; tight (equal) for a single slope.
double cp_siso_lower_bound(const pathloss_model& model, const network_config& cfg);

/// Closed-form upper bound on cp_siso; may exceed 1. Equals cp_siso for a
/// single slope. Requires delta_h > 0 when the model has several slopes.
double cp_siso_upper_bound(const pathloss_model& model, const network_config& cfg);

namespace detail {

/// Conditional beamforming coverage terms at ground distance r0: the k-th
/// entry is the k-th derivative term of the Laplace expansion, a nonnegative
/// probability mass; their sum is the conditional coverage probability.
/// Exposed for validation.
std::vector<double> miso_conditional_terms(const pathloss_model& model,
                                           const network_config& cfg, double r0);

/// cp_siso evaluated at an arbitrary threshold (shared by the exact SISO
/// form and the effective-threshold approximation).
double cp_siso_threshold(const pathloss_model& model, const network_config& cfg, double tau_eff);

}  // namespace detail

}  // namespace cellcov
