// SPDX-License-Identifier: Apache-2.0
#include "cellcov/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "cellcov/analytic.hpp"
#include "cellcov/errors.hpp"
#include "cellcov/specfun.hpp"

namespace cellcov {

namespace {

constexpr double kPi = std::numbers::pi;

critical_density_result infeasible_result() {
    return critical_density_result{std::nullopt, std::nullopt, false,
                                   binding_constraint::unconstrained_peak};
}

// Constrained density from a closed-form peak lambda_peak whose CP decays as
// exp(-lambda/lambda_peak)/(1+d): solve CP = eps, cap at the peak.
critical_density_result closed_form_result(double lambda_peak, double d, double eps) {
    critical_density_result out;
    out.feasible = true;
    out.lambda_unconstrained = lambda_peak;
    if (eps <= 0.0) {
        out.lambda_constrained = lambda_peak;
        out.binding = binding_constraint::unconstrained_peak;
        return out;
    }
    const double lambda_eps = lambda_peak * std::log(1.0 / (eps * (1.0 + d)));
    if (lambda_eps < lambda_peak) {
        out.lambda_constrained = lambda_eps;
        out.binding = binding_constraint::cp_boundary;
    } else {
        out.lambda_constrained = lambda_peak;
        out.binding = binding_constraint::unconstrained_peak;
    }
    return out;
}

}  // namespace

bool feasibility(const pathloss_model& model, const network_config& cfg) {
    cfg.validate();
    const double eps = cfg.cp_requirement;
    if (eps <= 0.0) return true;
    const double d = delta(cfg.tau_dagger(), model.exponents().back());
    return d < 1.0 / eps - 1.0;
}

critical_density_result critical_density_sspm(double alpha0, const network_config& cfg) {
    cfg.validate();
    if (!(alpha0 > 2.0)) throw domain_error("critical_density_sspm: alpha0 must exceed 2");
    if (!(cfg.delta_h > 0.0))
        throw domain_error(
            "critical_density_sspm: delta_h must be > 0 (throughput has no finite peak at "
            "delta_h = 0)");

    const double d = delta(cfg.tau_dagger(), alpha0);
    const double eps = cfg.cp_requirement;
    if (eps > 0.0 && !(d < 1.0 / eps - 1.0)) return infeasible_result();

    const double lambda_peak = 1.0 / (kPi * d * cfg.delta_h * cfg.delta_h);
    return closed_form_result(lambda_peak, d, eps);
}

critical_density_result critical_density_dspm(double alpha0, double alpha1, double r1,
                                              const network_config& cfg) {
    cfg.validate();
    // Reuse the model invariants for the parameter checks.
    pathloss_model model = pathloss_model::dual_slope(alpha0, alpha1, r1);
    (void)model;

    const double d = delta(cfg.tau_dagger(), alpha1);
    const double eps = cfg.cp_requirement;
    if (eps > 0.0 && !(d < 1.0 / eps - 1.0)) return infeasible_result();

    const double dh2 = cfg.delta_h * cfg.delta_h;
    const double lambda_peak = 1.0 / (kPi * (r1 * r1 * (1.0 + d) + dh2 * d));
    return closed_form_result(lambda_peak, d, eps);
}

namespace detail {

std::pair<double, double> golden_max_log(const std::function<double(double)>& f, double lo,
                                         double hi, double rel_tol) {
    if (!(lo > 0.0) || !(hi > lo)) throw domain_error("golden_max_log: requires 0 < lo < hi");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(lo), b = std::log(hi);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(std::exp(c));
    double fd = f(std::exp(d));
    const double tol = std::log1p(rel_tol);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(std::exp(d));
        }
    }
    const double x = std::exp(0.5 * (a + b));
    return {x, f(x)};
}

}  // namespace detail

critical_density_result critical_density_numeric(const pathloss_model& model,
                                                 const network_config& cfg, bool use_exact) {
    cfg.validate();
    const double eps = cfg.cp_requirement;
    if (eps > 0.0 && !feasibility(model, cfg)) return infeasible_result();

    const int n_slopes = model.slope_count();
    if (n_slopes == 1 && !(cfg.delta_h > 0.0))
        throw domain_error(
            "critical_density_numeric: single-slope throughput has no finite peak at delta_h = 0");

    auto cp_at = [&](double lambda) {
        network_config c = cfg;
        c.lambda = lambda;
        return use_exact ? cp_miso_exact(model, c) : cp_miso_approx(model, c);
    };
    auto st_at = [&](double lambda) { return st_from_cp(lambda, cp_at(lambda), cfg.tau); };

    // Centre the initial grid on the closed-form peak scale.
    const double d_last = delta(cfg.tau_dagger(), model.exponents().back());
    double centre;
    if (n_slopes == 1) {
        centre = 1.0 / (kPi * d_last * cfg.delta_h * cfg.delta_h);
    } else {
        const double r = model.breakpoint(n_slopes - 1);
        centre = 1.0 / (kPi * (r * r * (1.0 + d_last) + cfg.delta_h * cfg.delta_h * d_last));
    }

    double lo = centre * 1e-3;
    double hi = centre * 1e3;
    const int points = 40;
    std::vector<double> grid, val;
    size_t peak = 0;

    // The throughput peak can sit far from the closed-form scale; widen the
    // window (bounded) until the maximum is interior.
    for (int pass = 0;; ++pass) {
        grid.clear();
        val.clear();
        const double step = std::log(hi / lo) / (points - 1);
        for (int i = 0; i < points; ++i) grid.push_back(lo * std::exp(step * i));
        for (double x : grid) val.push_back(st_at(x));
        peak = static_cast<size_t>(std::max_element(val.begin(), val.end()) - val.begin());
        if (peak > 0 && peak + 1 < grid.size()) break;
        if (pass >= 4) {
            std::ostringstream os;
            os << "critical_density_numeric: no interior throughput maximum in ["
               << lo << ", " << hi << "] per m^2; profile edge-peaked";
            throw shape_error(os.str());
        }
        if (peak == 0)
            lo *= 1e-3;
        else
            hi *= 1e3;
    }

    // Reject profiles with several separated maxima.
    {
        std::vector<size_t> maxima;
        for (size_t i = 1; i + 1 < val.size(); ++i)
            if (val[i] >= val[i - 1] && val[i] >= val[i + 1]) maxima.push_back(i);
        size_t significant = 0;
        for (size_t i : maxima) {
            if (i == peak) {
                ++significant;
                continue;
            }
            const auto [first, second] = std::minmax(i, peak);
            double valley = val[first];
            for (size_t j = first; j <= second; ++j) valley = std::min(valley, val[j]);
            if (val[i] - valley > 5e-3 * val[peak]) ++significant;
        }
        if (significant > 1) {
            std::ostringstream os;
            os << "critical_density_numeric: throughput profile is not unimodal; grid:";
            for (size_t i = 0; i < grid.size(); ++i)
                os << " (" << grid[i] << ", " << val[i] << ")";
            throw shape_error(os.str());
        }
    }

    const auto [lambda_peak, st_peak] =
        detail::golden_max_log(st_at, grid[peak - 1], grid[peak + 1], 5e-3);
    (void)st_peak;

    critical_density_result out;
    out.feasible = true;
    out.lambda_unconstrained = lambda_peak;
    if (eps <= 0.0 || cp_at(lambda_peak) >= eps) {
        out.lambda_constrained = lambda_peak;
        out.binding = binding_constraint::unconstrained_peak;
        return out;
    }

    // CP is decreasing in density here, so the coverage floor is an upper
    // bound on lambda: bisect for the boundary below the peak.
    double hi_bad = lambda_peak;
    double lo_ok = lambda_peak;
    bool bracketed = false;
    for (int i = 0; i < 15; ++i) {
        lo_ok /= 10.0;
        if (cp_at(lo_ok) >= eps) {
            bracketed = true;
            break;
        }
        hi_bad = lo_ok;
    }
    if (!bracketed) return infeasible_result();

    for (int i = 0; i < 80 && hi_bad / lo_ok > 1.0 + 1e-9; ++i) {
        const double mid = std::sqrt(lo_ok * hi_bad);
        if (cp_at(mid) >= eps)
            lo_ok = mid;
        else
            hi_bad = mid;
    }
    out.lambda_constrained = lo_ok;
    out.binding = binding_constraint::cp_boundary;
    return out;
}

}  // namespace cellcov
