// SPDX-License-Identifier: Apache-2.0
#include "cellcov/specfun.hpp"

#include <cmath>

#include "cellcov/errors.hpp"
#include "cellcov/quadrature.hpp"

namespace cellcov {

namespace {

// 2F1(1, b; b+1; -x) = b * int_0^1 t^(b-1)/(1+x t) dt. The endpoint
// singularity t^(b-1) is removed by t = u^(1/b), leaving
// int_0^1 du / (1 + x u^(1/b)), smooth on [0, 1].
double hyp2f1_ratio(double x, double b) {
    if (x == 0.0) return 1.0;
    const double inv_b = 1.0 / b;
    // Tighter than the library default: these values sit inside exponents
    // of closed forms, so slack here would dominate every downstream figure.
    const quadrature_spec tight{5e-13, 1e-16, 4000};
    return integrate([x, inv_b](double u) { return 1.0 / (1.0 + x * std::pow(u, inv_b)); }, 0.0,
                     1.0, tight);
}

}  // namespace

double omega1(double x, double y) {
    if (!(x >= 0.0)) throw domain_error("omega1: x must be >= 0");
    if (!(y > 2.0)) throw domain_error("omega1: y must be > 2");
    return hyp2f1_ratio(x, 1.0 - 2.0 / y);
}

double omega2(double x, double y) {
    if (!(x >= 0.0)) throw domain_error("omega2: x must be >= 0");
    if (!(y > 0.0)) throw domain_error("omega2: y must be > 0");
    return hyp2f1_ratio(x, 2.0 / y);
}

double delta(double x, double y) {
    return 2.0 * x * omega1(x, y) / (y - 2.0);
}

double chi_square_tail_ratio(int n, double z) {
    if (n < 1) throw domain_error("chi_square_tail_ratio: n must be >= 1");
    if (!(z >= 0.0)) throw domain_error("chi_square_tail_ratio: z must be >= 0");
    if (z > 5000.0) return 0.0;  // below double underflow for any sane n
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < n; ++k) {
        term *= z / k;
        sum += term;
    }
    return std::exp(-z) * sum;
}

}  // namespace cellcov
