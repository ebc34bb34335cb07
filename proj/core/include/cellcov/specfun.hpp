// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace cellcov {

/// Gauss hypergeometric shorthand 2F1(1, 1-2/y; 2-2/y; -x).
///
/// Computed through the one-dimensional Euler integral
/// b * int_0^1 t^(b-1)/(1+x t) dt with b = 1-2/y, exact because the second
/// and third parameters differ by one. Strictly decreasing in x; equals 1
/// at x = 0. Requires x >= 0 and y > 2.
double omega1(double x, double y);

/// Gauss hypergeometric shorthand 2F1(1, 2/y; 1+2/y; -x); same integral
/// route with b = 2/y. Requires x >= 0 and y > 0.
double omega2(double x, double y);

/// 2 x omega1(x, y) / (y - 2). Zero iff x = 0; increasing in x.
double delta(double x, double y);

/// CCDF of a chi-square variate with 2n degrees of freedom at 2z, i.e.
/// exp(-z) * sum_{k<n} z^k / k!. Requires n >= 1 and z >= 0.
double chi_square_tail_ratio(int n, double z);

}  // namespace cellcov
