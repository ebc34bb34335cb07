// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cellcov::cli {

/// One output row in user-facing units: density per km^2, threshold in dB,
/// throughput in bits/(s*Hz*km^2). cp_ci is empty for analytic methods.
struct csv_row {
    double lambda_per_km2 = 0.0;
    double delta_h_m = 0.0;
    int n_antennas = 1;
    double tau_db = 0.0;
    std::string method;
    double cp = 0.0;
    std::optional<double> cp_ci;
    double st_per_km2 = 0.0;
};

inline constexpr const char* kCsvHeader =
    "lambda_per_km2,delta_h_m,n_antennas,tau_db,method,cp,cp_ci,st_bps_hz_km2";

/// Exact emission contract: UTF-8, LF line endings, the header above, '.'
/// decimal point, 9 significant digits, empty cp_ci where absent, no
/// trailing whitespace.
std::string emit_csv(const std::vector<csv_row>& rows);

/// Parses emit_csv output back; inverse at printed precision.
std::vector<csv_row> parse_csv(const std::string& text);

}  // namespace cellcov::cli
