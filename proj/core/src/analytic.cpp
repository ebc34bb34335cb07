// SPDX-License-Identifier: Apache-2.0
#include "cellcov/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cellcov/errors.hpp"
#include "cellcov/quadrature.hpp"
#include "cellcov/specfun.hpp"

namespace cellcov {

namespace {

constexpr double kPi = std::numbers::pi;

// Relative mass of the contact distribution allowed to be truncated when an
// expectation over the serving distance has no closed-form tail.
constexpr double kContactTailMass = 1e-12;

double clamp_probability(double v, const char* what) {
    if (v < -1e-9 || v > 1.0 + 1e-9)
        throw instability_error(std::string(what) +
                                ": probability outside [0,1] by more than 1e-9 (" +
                                std::to_string(v) + "); tighten the quadrature");
    return std::clamp(v, 0.0, 1.0);
}

// Link-level view of the pathloss. The serving segment follows the ground
// distance r0; interferers live at antenna distance x = sqrt(u^2 + dh^2), so
// their segment boundaries are the breakpoints lifted by the height offset.
struct link_view {
    const pathloss_model& model;
    double dh;
    std::vector<double> lifted;  // sqrt(R_n^2 + dh^2), n = 1..N-1

    link_view(const pathloss_model& m, double delta_h) : model(m), dh(delta_h) {
        lifted.reserve(m.breakpoints().size());
        for (double r : m.breakpoints()) lifted.push_back(std::hypot(r, dh));
    }

    int interferer_segment(double x) const {
        auto it = std::upper_bound(lifted.begin(), lifted.end(), x);
        return static_cast<int>(it - lifted.begin());
    }
};

// 2 * int_{d0}^inf x * (1 - 1/(1 + c * l(x))) dx for the lifted interferer
// field, assembled from hypergeometric pieces per segment. c is passed as
// ln(c) so extreme serving gains cannot overflow on the way in.
double interference_exponent(const link_view& v, double d0, double ln_c) {
    const pathloss_model& m = v.model;
    const int n_slopes = m.slope_count();
    const int first = v.interferer_segment(d0);
    double total = 0.0;

    for (int i = first; i < n_slopes; ++i) {
        const double lo = (i == first) ? d0 : v.lifted[static_cast<size_t>(i - 1)];
        const double alpha = m.exponent(i);
        const double ln_a = ln_c + m.log_amplitude(i);
        if (i < n_slopes - 1) {
            const double hi = v.lifted[static_cast<size_t>(i)];
            if (!(hi > lo)) continue;
            if (alpha == 0.0) {
                const double a = std::exp(ln_a);
                total += a / (1.0 + a) * (hi * hi - lo * lo);
            } else {
                const double arg_hi = std::exp(alpha * std::log(hi) - ln_a);
                const double arg_lo = std::exp(alpha * std::log(lo) - ln_a);
                total += hi * hi * omega2(arg_hi, alpha) - lo * lo * omega2(arg_lo, alpha);
            }
        } else {
            // Final slope, alpha > 2: closed tail.
            const double a = std::exp(ln_a);
            if (a == 0.0) continue;
            const double w_lo = std::exp(ln_a - alpha * std::log(lo));
            total += 2.0 * a * std::pow(lo, 2.0 - alpha) / (alpha - 2.0) * omega1(w_lo, alpha);
        }
    }
    return total;
}

// ln of the serving gain K_n d0^(-alpha_n) for ground-distance segment n.
double log_serving_gain(const pathloss_model& m, int n, double d0) {
    return m.log_amplitude(n) - m.exponent(n) * std::log(d0);
}

// eta(s) plus the scaled derivative stack m_n = (-s)^n eta^(n)(s) / n!
// = 2 pi lambda * int x w^n / (1+w)^(n+1) dx with w = c l(x), c = 2 s P.
// The scaled form is what the coverage recursion consumes; it is free of
// the n! s^(-n) magnitudes of the raw derivatives.
struct eta_stack {
    double eta0 = 0.0;
    std::vector<double> m;  // m[n-1] for n = 1..k_max
};

eta_stack compute_eta_stack(const link_view& v, double lambda, double d0, double ln_c, int k_max,
                            const quadrature_spec& spec) {
    eta_stack out;
    out.eta0 = -kPi * lambda * interference_exponent(v, d0, ln_c);
    if (k_max < 1) return out;

    out.m.assign(static_cast<size_t>(k_max), 0.0);
    const pathloss_model& m = v.model;
    const int n_slopes = m.slope_count();
    const int first = v.interferer_segment(d0);

    for (int i = first; i < n_slopes; ++i) {
        const double lo = (i == first) ? d0 : v.lifted[static_cast<size_t>(i - 1)];
        const double hi = (i < n_slopes - 1) ? v.lifted[static_cast<size_t>(i)]
                                             : std::numeric_limits<double>::infinity();
        if (!(hi > lo)) continue;
        const double alpha = m.exponent(i);
        const double ln_a = ln_c + m.log_amplitude(i);

        auto integrand = [alpha, ln_a, k_max](double x, std::span<double> f) {
            const double w = std::exp(ln_a - alpha * std::log(x));
            const double ratio = w / (1.0 + w);
            double term = x / (1.0 + w) * ratio;  // n = 1
            for (int n = 1; n <= k_max; ++n) {
                f[static_cast<size_t>(n - 1)] = term;
                term *= ratio;
            }
        };
        std::vector<double> seg = detail::integrate_vec(integrand, k_max, lo, hi, spec);
        for (int n = 0; n < k_max; ++n) out.m[static_cast<size_t>(n)] += 2.0 * kPi * lambda * seg[static_cast<size_t>(n)];
    }
    return out;
}

// Conditional beamforming coverage at one serving distance: T_0 = exp(eta),
// T_k = (1/k) sum_{j<k} (k-j) m_{k-j} T_j; every T_k is a nonnegative
// probability mass and the partial sums are nondecreasing.
std::vector<double> miso_terms_from_stack(const eta_stack& st, int n_antennas) {
    std::vector<double> t(static_cast<size_t>(n_antennas), 0.0);
    t[0] = std::exp(st.eta0);
    double sum = t[0];
    for (int k = 1; k < n_antennas; ++k) {
        double acc = 0.0;
        for (int j = 0; j < k; ++j)
            acc += static_cast<double>(k - j) * st.m[static_cast<size_t>(k - j - 1)] * t[static_cast<size_t>(j)];
        t[static_cast<size_t>(k)] = acc / k;
        sum += t[static_cast<size_t>(k)];
        if (sum < -1e-9 || sum > 1.0 + 1e-9)
            throw instability_error(
                "cp_miso_exact: Laplace-derivative partial sum left [0,1] by more than 1e-9; "
                "tighten the quadrature");
    }
    return t;
}

double contact_truncation_radius(double lambda) {
    return std::sqrt(-std::log(kContactTailMass) / (kPi * lambda));
}

}  // namespace

double st_from_cp(double lambda, double cp, double tau) {
    return lambda * cp * std::log2(1.0 + tau);
}

namespace detail {

double cp_siso_threshold(const pathloss_model& model, const network_config& cfg, double tau_eff) {
    cfg.validate();
    if (!(tau_eff > 0.0)) throw domain_error("cp_siso: threshold must be > 0");

    const double lambda = cfg.lambda;
    const double dh = cfg.delta_h;
    const int n_slopes = model.slope_count();

    if (n_slopes == 1) {
        const double d = delta(tau_eff, model.exponent(0));
        return std::exp(-kPi * lambda * d * dh * dh) / (1.0 + d);
    }

    const link_view view(model, dh);

    // The outermost serving segment integrates in closed form.
    const double alpha_last = model.exponent(n_slopes - 1);
    const double d_last = delta(tau_eff, alpha_last);
    const double r_last = model.breakpoint(n_slopes - 1);
    double total = std::exp(-kPi * lambda * (r_last * r_last * (1.0 + d_last) + d_last * dh * dh)) /
                   (1.0 + d_last);

    const quadrature_spec qs{1e-10, 0.0, 2000};
    const double ln_tau = std::log(tau_eff);
    for (int n = 0; n + 1 < n_slopes; ++n) {
        const double r_lo = (n == 0) ? 0.0 : model.breakpoint(n);
        const double r_hi = model.breakpoint(n + 1);
        auto f = [&, n](double r) {
            const double d0 = std::hypot(r, dh);
            const double ln_c = ln_tau - log_serving_gain(model, n, d0);
            const double g = interference_exponent(view, d0, ln_c);
            return 2.0 * kPi * lambda * r * std::exp(-kPi * lambda * (r * r + g));
        };
        total += integrate(f, r_lo, r_hi, qs);
    }
    return clamp_probability(total, "cp_siso");
}

std::vector<double> miso_conditional_terms(const pathloss_model& model, const network_config& cfg,
                                           double r0) {
    cfg.validate();
    if (!(r0 >= 0.0)) throw domain_error("miso_conditional_terms: r0 must be >= 0");
    const link_view view(model, cfg.delta_h);
    const double d0 = std::hypot(r0, cfg.delta_h);
    if (!(d0 > 0.0)) throw domain_error("miso_conditional_terms: serving distance is zero");
    const int n = model.segment(r0);
    const double ln_c = std::log(cfg.tau) - log_serving_gain(model, n, d0);
    const quadrature_spec inner{1e-9, 0.0, 2000};
    const eta_stack st =
        compute_eta_stack(view, cfg.lambda, d0, ln_c, cfg.n_antennas - 1, inner);
    return miso_terms_from_stack(st, cfg.n_antennas);
}

}  // namespace detail

double cp_siso(const pathloss_model& model, const network_config& cfg) {
    return detail::cp_siso_threshold(model, cfg, cfg.tau);
}

double cp_miso_approx(const pathloss_model& model, const network_config& cfg) {
    return detail::cp_siso_threshold(model, cfg, cfg.tau_dagger());
}

std::vector<double> eta_derivatives(const pathloss_model& model, const network_config& cfg,
                                    double d0, double s, int k_max) {
    cfg.validate();
    if (!(d0 > 0.0) || !(d0 >= cfg.delta_h))
        throw domain_error("eta_derivatives: d0 must satisfy d0 >= delta_h > 0");
    if (!(s > 0.0)) throw domain_error("eta_derivatives: s must be > 0");
    if (k_max < 0) throw domain_error("eta_derivatives: k_max must be >= 0");

    const link_view view(model, cfg.delta_h);
    const double ln_c = std::log(2.0 * s * cfg.power);
    quadrature_spec inner{1e-9, 0.0, 2000};
    eta_stack st;
    try {
        st = compute_eta_stack(view, cfg.lambda, d0, ln_c, k_max, inner);
    } catch (const accuracy_error& e) {
        throw accuracy_error("eta_derivatives: derivative integral did not converge", e.best_estimate(),
                             e.error_bound());
    }

    std::vector<double> out(static_cast<size_t>(k_max) + 1, 0.0);
    out[0] = st.eta0;
    double factor = 1.0;  // n! / (-s)^n
    for (int n = 1; n <= k_max; ++n) {
        factor *= static_cast<double>(n) / (-s);
        out[static_cast<size_t>(n)] = st.m[static_cast<size_t>(n - 1)] * factor;
    }
    return out;
}

double cp_miso_exact(const pathloss_model& model, const network_config& cfg) {
    cfg.validate();
    const double lambda = cfg.lambda;
    const double dh = cfg.delta_h;
    const int n_slopes = model.slope_count();
    const int n_ant = cfg.n_antennas;
    const link_view view(model, dh);
    const double ln_tau = std::log(cfg.tau);
    const quadrature_spec inner{1e-9, 0.0, 2000};
    const quadrature_spec outer{1e-8, 0.0, 2000};

    const double r_max = contact_truncation_radius(lambda);

    double total = 0.0;
    for (int n = 0; n < n_slopes; ++n) {
        const double r_lo = (n == 0) ? 0.0 : model.breakpoint(n);
        const double r_hi =
            (n + 1 < n_slopes) ? std::min(model.breakpoint(n + 1), r_max) : r_max;
        if (!(r_hi > r_lo)) continue;

        auto f = [&, n](double r) {
            const double d0 = std::hypot(r, dh);
            const double ln_c = ln_tau - log_serving_gain(model, n, d0);
            const eta_stack st = compute_eta_stack(view, lambda, d0, ln_c, n_ant - 1, inner);
            const std::vector<double> terms = miso_terms_from_stack(st, n_ant);
            double cond = 0.0;
            for (double t : terms) cond += t;
            cond = std::clamp(cond, 0.0, 1.0);
            return 2.0 * kPi * lambda * r * std::exp(-kPi * lambda * r * r) * cond;
        };
        total += integrate(f, r_lo, r_hi, outer);
    }
    return clamp_probability(total, "cp_miso_exact");
}

double cp_siso_lower_bound(const pathloss_model& model, const network_config& cfg) {
    cfg.validate();
    const int n_slopes = model.slope_count();
    const double alpha_last = model.exponent(n_slopes - 1);
    const double d = delta(cfg.tau, alpha_last);
    const double r = (n_slopes == 1) ? 0.0 : model.breakpoint(n_slopes - 1);
    const double dh = cfg.delta_h;
    return std::exp(-kPi * cfg.lambda * (r * r + d * (r * r + dh * dh))) / (1.0 + d);
}

double cp_siso_upper_bound(const pathloss_model& model, const network_config& cfg) {
    cfg.validate();
    const int n_slopes = model.slope_count();
    if (n_slopes == 1) return cp_siso(model, cfg);
    if (!(cfg.delta_h > 0.0))
        throw domain_error("cp_siso_upper_bound: requires delta_h > 0 for multi-slope models");

    const double dh = cfg.delta_h;
    const double alpha_last = model.exponent(n_slopes - 1);
    const double r_last = model.breakpoint(n_slopes - 1);
    const double r_bar = std::hypot(r_last, dh);
    const double ln_k_last = model.log_amplitude(n_slopes - 1);

    double total = std::exp(-kPi * cfg.lambda * r_last * r_last);
    for (int n = 0; n + 1 < n_slopes; ++n) {
        const double k_ratio = std::exp(ln_k_last - model.log_amplitude(n));
        const double q1 = cfg.tau * k_ratio * std::pow(r_bar, 2.0 - alpha_last) *
                          std::pow(dh, model.exponent(n)) / (alpha_last - 2.0) *
                          omega1(cfg.tau * k_ratio, alpha_last);
        total += std::exp(-2.0 * kPi * cfg.lambda * q1);
    }
    return total;
}

}  // namespace cellcov
