// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "cellcov/analytic.hpp"
#include "cellcov/pathloss.hpp"
#include "cli.hpp"
#include "csv.hpp"

using namespace cellcov;
using cellcov::cli::csv_row;

namespace {

struct run_result {
    int code;
    std::string out;
    std::string err;
};

run_result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cellcov::cli::run_command(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("eval: closed-form row with exact unit conversion") {
    const auto r = run({"eval", "--model", "sspm", "--alpha", "4", "--lambda-per-km2", "100",
                        "--delta-h", "0", "--tau-db", "10", "--method", "siso_exact"});
    REQUIRE(r.code == cellcov::cli::exit_ok);
    const auto rows = cellcov::cli::parse_csv(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].method == "siso_exact");
    CHECK_FALSE(rows[0].cp_ci.has_value());

    network_config cfg;
    cfg.lambda = 100.0 * 1e-6;  // exact decimal conversion
    cfg.delta_h = 0.0;
    cfg.tau = 10.0;  // 10 dB exactly linear 10
    const double expected = cp_siso(pathloss_model::single_slope(4.0), cfg);
    CHECK(rows[0].cp == doctest::Approx(expected).epsilon(1e-8));
    CHECK(rows[0].cp == doctest::Approx(0.2001).epsilon(3e-3));
    // Throughput column consistent with the row's own fields at printed
    // precision.
    CHECK(rows[0].st_per_km2 ==
          doctest::Approx(rows[0].lambda_per_km2 * rows[0].cp * std::log2(11.0)).epsilon(1e-8));
}

TEST_CASE("usage failures exit 2 with help text") {
    const auto no_method = run({"sweep", "--axis", "lambda", "--log", "1", "1e6", "25"});
    CHECK(no_method.code == cellcov::cli::exit_usage);
    CHECK(no_method.err.find("method") != std::string::npos);

    const auto unknown_sub = run({"frobnicate"});
    CHECK(unknown_sub.code == cellcov::cli::exit_usage);
    CHECK_FALSE(unknown_sub.err.empty());

    const auto unknown_flag = run({"eval", "--频flag"});
    CHECK(unknown_flag.code == cellcov::cli::exit_usage);

    const auto none = run({});
    CHECK(none.code == cellcov::cli::exit_usage);

    const auto bad_grid =
        run({"sweep", "--axis", "n_antennas", "--grid", "1", "2.5", "4", "--method",
             "siso_exact"});
    CHECK(bad_grid.code == cellcov::cli::exit_usage);
}

TEST_CASE("help exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == cellcov::cli::exit_ok);
    CHECK(r.out.find("eval") != std::string::npos);
}

TEST_CASE("sweep: grid order, method expansion, row consistency") {
    const auto r = run({"sweep", "--model", "dspm", "--alpha", "2.5", "4", "--r1", "10",
                        "--axis", "lambda", "--log", "1e2", "1e4", "3", "--delta-h", "2",
                        "--tau-db", "10", "--method", "siso_exact", "bounds"});
    REQUIRE(r.code == cellcov::cli::exit_ok);
    const auto rows = cellcov::cli::parse_csv(r.out);
    REQUIRE(rows.size() == 9);  // 3 grid points x (siso_exact + 2 bounds)
    CHECK(rows[0].lambda_per_km2 == doctest::Approx(100.0));
    CHECK(rows[3].lambda_per_km2 == doctest::Approx(1000.0));
    CHECK(rows[6].lambda_per_km2 == doctest::Approx(10000.0));
    CHECK(rows[1].method == "siso_lower_bound");
    CHECK(rows[2].method == "siso_upper_bound");
    for (const auto& row : rows)
        CHECK(row.st_per_km2 ==
              doctest::Approx(row.lambda_per_km2 * row.cp * std::log2(11.0)).epsilon(1e-8));
}

TEST_CASE("sweep: height and antenna axes") {
    const auto h = run({"sweep", "--model", "sspm", "--alpha", "4", "--axis", "delta_h",
                        "--linear", "0", "4", "3", "--lambda-per-km2", "1000", "--tau-db", "10",
                        "--method", "siso_exact"});
    REQUIRE(h.code == cellcov::cli::exit_ok);
    const auto hrows = cellcov::cli::parse_csv(h.out);
    REQUIRE(hrows.size() == 3);
    CHECK(hrows[0].delta_h_m == 0.0);
    CHECK(hrows[2].delta_h_m == 4.0);
    CHECK(hrows[0].cp >= hrows[1].cp);
    CHECK(hrows[1].cp >= hrows[2].cp);

    const auto a = run({"sweep", "--model", "sspm", "--alpha", "4", "--axis", "n_antennas",
                        "--grid", "1", "4", "16", "--lambda-per-km2", "1000", "--delta-h", "2",
                        "--tau-db", "10", "--method", "miso_approx"});
    REQUIRE(a.code == cellcov::cli::exit_ok);
    const auto arows = cellcov::cli::parse_csv(a.out);
    REQUIRE(arows.size() == 3);
    CHECK(arows[0].n_antennas == 1);
    CHECK(arows[2].n_antennas == 16);
    CHECK(arows[2].cp >= arows[0].cp);
}

TEST_CASE("simulate: rayleigh and rice fading selectable") {
    for (const char* fading : {"rayleigh", "rice"}) {
        const auto r = run({"simulate", "--model", "dspm", "--alpha", "2.5", "4", "--r1", "10",
                            "--lambda-per-km2", "1000", "--delta-h", "2", "--tau-db", "10",
                            "--fading", fading, "--trials", "500", "--seed", "9"});
        REQUIRE(r.code == cellcov::cli::exit_ok);
        const auto rows = cellcov::cli::parse_csv(r.out);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].cp > 0.0);
        CHECK(rows[0].cp < 1.0);
    }
    const auto bad = run({"simulate", "--model", "sspm", "--alpha", "4", "--lambda-per-km2",
                          "1000", "--tau-db", "10", "--fading", "rice", "--rice-dof", "11",
                          "--trials", "500"});
    CHECK(bad.code == cellcov::cli::exit_usage);
}

TEST_CASE("critical: dual-slope fold through the CLI") {
    const auto r = run({"critical", "--model", "dspm", "--alpha", "2.5", "4", "--r1", "10",
                        "--tau-db", "0", "--na", "16", "--delta-h", "2", "--eps", "0.9"});
    REQUIRE(r.code == cellcov::cli::exit_ok);
    std::istringstream in(r.out);
    std::string header, line;
    REQUIRE(std::getline(in, header));
    CHECK(header == "solver,lambda_dagger_per_km2,lambda_star_per_km2,feasible,binding");
    REQUIRE(std::getline(in, line));
    double dagger = 0.0, star = 0.0;
    char solver[32], feas[16], binding[32];
    REQUIRE(std::sscanf(line.c_str(), "%31[^,],%lf,%lf,%15[^,],%31s", solver, &dagger, &star,
                        feas, binding) == 5);
    CHECK(std::string(solver) == "closed_form");
    CHECK(std::string(feas) == "true");
    CHECK(std::string(binding) == "cp_boundary");
    CHECK(dagger / star == doctest::Approx(21.777).epsilon(0.01));
}

TEST_CASE("critical: infeasible floor prints empty densities") {
    const auto r = run({"critical", "--model", "sspm", "--alpha", "4", "--tau-db", "10", "--na",
                        "1", "--delta-h", "2", "--eps", "0.9"});
    REQUIRE(r.code == cellcov::cli::exit_ok);
    CHECK(r.out.find("closed_form,,,false,") != std::string::npos);
}

TEST_CASE("critical: numeric row for generic models and --cross-check") {
    const auto r = run({"critical", "--model", "mspm", "--alpha", "2.5", "3", "4",
                        "--breakpoints", "10", "40", "--tau-db", "0", "--na", "4", "--delta-h",
                        "2"});
    REQUIRE(r.code == cellcov::cli::exit_ok);
    CHECK(r.out.find("numeric,") != std::string::npos);
    CHECK(r.out.find("closed_form,") == std::string::npos);

    const auto x = run({"critical", "--model", "sspm", "--alpha", "4", "--tau-db", "0", "--na",
                        "16", "--delta-h", "2", "--eps", "0.8", "--cross-check"});
    REQUIRE(x.code == cellcov::cli::exit_ok);
    CHECK(x.out.find("closed_form,") != std::string::npos);
    CHECK(x.out.find("numeric,") != std::string::npos);
}

TEST_CASE("simulate: identical bytes across runs and thread counts") {
    const std::vector<std::string> base{"simulate", "--model", "sspm", "--alpha", "4",
                                        "--lambda-per-km2", "100", "--delta-h", "2", "--tau-db",
                                        "10", "--na", "4", "--trials", "2000", "--seed", "5"};
    auto with_threads = [&](const char* n) {
        auto v = base;
        v.push_back("--threads");
        v.push_back(n);
        return run(v);
    };
    const auto a = with_threads("1");
    const auto b = with_threads("1");
    const auto c = with_threads("4");
    REQUIRE(a.code == cellcov::cli::exit_ok);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    const auto rows = cellcov::cli::parse_csv(a.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].cp_ci.has_value());
    CHECK(rows[0].method == "monte_carlo");
}

TEST_CASE("emit_csv: exact format") {
    CHECK(cellcov::cli::emit_csv({}) == std::string(cellcov::cli::kCsvHeader) + "\n");

    csv_row row;
    row.lambda_per_km2 = 100.0;
    row.delta_h_m = 2.0;
    row.n_antennas = 4;
    row.tau_db = 10.0;
    row.method = "siso_exact";
    row.cp = 0.123456789123;
    row.st_per_km2 = 42.5;
    const std::string text = cellcov::cli::emit_csv({row});
    CHECK(text == std::string(cellcov::cli::kCsvHeader) +
                      "\n100,2,4,10,siso_exact,0.123456789,,42.5\n");
    // No CR, no trailing spaces.
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.find(" \n") == std::string::npos);

    // Round trip is the identity at printed precision.
    const auto parsed = cellcov::cli::parse_csv(text);
    CHECK(cellcov::cli::emit_csv(parsed) == text);
}

TEST_CASE("emit/parse round trip on generated rows") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> mag(-6.0, 6.0);
    std::uniform_int_distribution<int> na(1, 64);
    std::uniform_int_distribution<int> with_ci(0, 1);
    std::vector<csv_row> rows;
    const char* methods[] = {"siso_exact", "miso_exact", "monte_carlo"};
    for (int i = 0; i < 50; ++i) {
        csv_row r;
        r.lambda_per_km2 = std::pow(10.0, mag(gen));
        r.delta_h_m = std::pow(10.0, mag(gen) / 3.0);
        r.n_antennas = na(gen);
        r.tau_db = mag(gen);
        r.method = methods[i % 3];
        r.cp = 0.5 * (1.0 + std::tanh(mag(gen)));
        if (with_ci(gen)) r.cp_ci = std::pow(10.0, -std::abs(mag(gen)));
        r.st_per_km2 = std::pow(10.0, mag(gen));
        rows.push_back(r);
    }
    const std::string text = cellcov::cli::emit_csv(rows);
    CHECK(cellcov::cli::emit_csv(cellcov::cli::parse_csv(text)) == text);
}

TEST_CASE("config file: keys mirror flags, command line wins") {
    const std::string path = "test_cli_config.tmp";
    {
        std::ofstream f(path);
        f << "# reference point\n";
        f << "tau-db = 0\n";
        f << "na = 16\n";
        f << "delta-h = 2\n";
        f << "lambda-per-km2 = 100\n";
    }
    const auto r = run({"eval", "--config", path, "--model", "sspm", "--alpha", "4",
                        "--tau-db", "10", "--method", "miso_approx"});
    std::remove(path.c_str());
    REQUIRE(r.code == cellcov::cli::exit_ok);
    const auto rows = cellcov::cli::parse_csv(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].tau_db == 10.0);  // flag overrides the file value
    CHECK(rows[0].n_antennas == 16);
    CHECK(rows[0].delta_h_m == 2.0);
}

TEST_CASE("--out writes atomically") {
    const std::string path = "test_cli_out.csv";
    const auto r = run({"eval", "--model", "sspm", "--alpha", "4", "--lambda-per-km2", "100",
                        "--tau-db", "10", "--method", "siso_exact", "--out", path});
    REQUIRE(r.code == cellcov::cli::exit_ok);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream content;
    content << f.rdbuf();
    CHECK(content.str().find("siso_exact") != std::string::npos);
    std::ifstream tmp(path + ".tmp");
    CHECK_FALSE(tmp.good());
    std::remove(path.c_str());
}

TEST_CASE("validate: reduced-budget run passes") {
    std::ostringstream out, err;
    const int code = cellcov::cli::run_command(
        {"validate", "--trials", "400", "--seed", "2", "--threads", "2"}, out, err);
    CHECK(code == cellcov::cli::exit_ok);
    CHECK(out.str().find("sspm") != std::string::npos);
    CHECK(out.str().find("dspm") != std::string::npos);
}
