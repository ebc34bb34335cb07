// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cellcov {

/// Tolerances and budget for adaptive integration.
struct quadrature_spec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;

    void validate() const;  // throws domain_error on nonsensical fields
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
///
/// b may be +infinity, in which case the tail is folded onto (0, 1) by the
/// fixed substitution x = a + u/(1-u) before subdivision. Panels are split
/// worst-error-first until the global error estimate drops below
/// max(abs_tol, rel_tol * |result|). Exhausting max_subdivisions throws
/// accuracy_error carrying the best estimate and its error bound.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const quadrature_spec& spec = {});

namespace detail {

/// Vector-valued integrand sharing one subdivision tree: f(x, out) fills
/// out[0..dim). All components must satisfy the tolerance. Useful when many
/// components are driven by the same expensive inner quantity.
std::vector<double> integrate_vec(const std::function<void(double, std::span<double>)>& f,
                                  int dim, double a, double b, const quadrature_spec& spec);

}  // namespace detail

}  // namespace cellcov
