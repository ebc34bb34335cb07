// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cellcov::cli {

enum class sweep_axis { lambda, delta_h, n_antennas };

/// Validated sweep grid: strictly increasing, at least two points; antenna
/// grids must be positive integers.
struct sweep_spec {
    sweep_axis axis = sweep_axis::lambda;
    std::vector<double> grid;

    void validate() const;  // throws domain_error
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_accuracy = 3;
inline constexpr int exit_validate = 4;

/// Entry point shared by the binary and the tests. args excludes argv[0].
/// Subcommands: eval, sweep, critical, simulate, validate. Returns the
/// process exit code; rows go to out, diagnostics to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cellcov::cli
