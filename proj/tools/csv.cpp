// SPDX-License-Identifier: Apache-2.0
#include "csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cellcov::cli {

namespace {

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

std::string emit_csv(const std::vector<csv_row>& rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const csv_row& r : rows) {
        out += fmt9(r.lambda_per_km2);
        out += ',';
        out += fmt9(r.delta_h_m);
        out += ',';
        out += std::to_string(r.n_antennas);
        out += ',';
        out += fmt9(r.tau_db);
        out += ',';
        out += r.method;
        out += ',';
        out += fmt9(r.cp);
        out += ',';
        if (r.cp_ci) out += fmt9(*r.cp_ci);
        out += ',';
        out += fmt9(r.st_per_km2);
        out += '\n';
    }
    return out;
}

std::vector<csv_row> parse_csv(const std::string& text) {
    std::vector<csv_row> rows;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("parse_csv: empty input");
    if (line != kCsvHeader) throw std::runtime_error("parse_csv: unexpected header: " + line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(cur);
        if (fields.size() != 8) throw std::runtime_error("parse_csv: malformed row: " + line);
        csv_row r;
        r.lambda_per_km2 = std::stod(fields[0]);
        r.delta_h_m = std::stod(fields[1]);
        r.n_antennas = std::stoi(fields[2]);
        r.tau_db = std::stod(fields[3]);
        r.method = fields[4];
        r.cp = std::stod(fields[5]);
        if (!fields[6].empty()) r.cp_ci = std::stod(fields[6]);
        r.st_per_km2 = std::stod(fields[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace cellcov::cli
