// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cellcov {

/// Invalid argument or violated model invariant. The message names the
/// offending quantity.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// An adaptive integration ran out of subdivisions before reaching the
/// requested tolerance. Carries the best estimate and its error bound.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

/// A numerical result left its mathematically admissible range by more than
/// floating-point noise; usually a sign that tolerances are misconfigured.
class instability_error : public std::runtime_error {
public:
    explicit instability_error(const std::string& what) : std::runtime_error(what) {}
};

/// A search saw a profile shape it cannot handle (e.g. several throughput
/// maxima where one was expected). The message includes the sampled grid.
class shape_error : public std::runtime_error {
public:
    explicit shape_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cellcov
