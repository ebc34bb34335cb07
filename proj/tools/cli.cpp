// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cellcov/analytic.hpp"
#include "cellcov/density.hpp"
#include "cellcov/errors.hpp"
#include "cellcov/montecarlo.hpp"
#include "csv.hpp"

namespace cellcov::cli {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

struct model_options {
    std::string model = "sspm";
    std::vector<double> alpha{4.0};
    double r1 = 10.0;
    std::vector<double> breakpoints;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", model, "Pathloss model: sspm | dspm | mspm")
            ->check(CLI::IsMember({"sspm", "dspm", "mspm"}))
            ->capture_default_str();
        cmd->add_option("--alpha", alpha, "Pathloss exponents alpha0 [alpha1 ...]")
            ->expected(-1)
            ->capture_default_str();
        cmd->add_option("--r1", r1, "Corner distance R1 in meters (dspm)")
            ->capture_default_str();
        cmd->add_option("--breakpoints", breakpoints, "Breakpoints R1 R2 ... in meters (mspm)")
            ->expected(-1);
    }

    pathloss_model build() const {
        if (model == "sspm") {
            if (alpha.size() != 1) throw domain_error("sspm expects exactly one --alpha value");
            return pathloss_model::single_slope(alpha[0]);
        }
        if (model == "dspm") {
            if (alpha.size() != 2) throw domain_error("dspm expects exactly two --alpha values");
            return pathloss_model::dual_slope(alpha[0], alpha[1], r1);
        }
        return pathloss_model(alpha, breakpoints);
    }
};

struct point_options {
    double lambda_per_km2 = 100.0;
    double delta_h = 0.0;
    double tau_db = 10.0;
    int na = 1;
    double power_dbm = 23.0;
    double eps = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--lambda-per-km2", lambda_per_km2, "BS density per km^2")
            ->capture_default_str();
        cmd->add_option("--delta-h", delta_h, "Antenna-height difference in meters")
            ->capture_default_str();
        cmd->add_option("--tau-db", tau_db, "SIR decoding threshold in dB")
            ->capture_default_str();
        cmd->add_option("--na", na, "Antennas per BS")->capture_default_str();
        cmd->add_option("--power-dbm", power_dbm, "Transmit power in dBm")
            ->capture_default_str();
        cmd->add_option("--eps", eps, "Coverage-probability requirement in [0,1)")
            ->capture_default_str();
    }

    network_config build() const {
        network_config cfg;
        cfg.lambda = lambda_per_km2 * 1e-6;
        cfg.delta_h = delta_h;
        cfg.tau = db_to_linear(tau_db);
        cfg.n_antennas = na;
        cfg.power = dbm_to_watts(power_dbm);
        cfg.cp_requirement = eps;
        cfg.validate();
        return cfg;
    }
};

struct sim_options {
    long trials = 40000;
    std::uint64_t seed = 1;
    int threads = 1;
    double window_radius = 0.0;
    int min_expected_bs = 300;

    void attach(CLI::App* cmd) {
        cmd->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
        cmd->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
        cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
        cmd->add_option("--window-radius", window_radius,
                        "Simulation window radius in meters (0 = auto)")
            ->capture_default_str();
        cmd->add_option("--min-expected-bs", min_expected_bs,
                        "Minimum expected BS count for the auto window")
            ->capture_default_str();
    }

    sim_spec build() const { return sim_spec{trials, seed, window_radius, min_expected_bs}; }
};

struct output_options {
    std::string out_file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--out", out_file, "Write output atomically to FILE instead of stdout");
    }
};

std::vector<method> parse_methods(const std::vector<std::string>& names) {
    std::vector<method> out;
    for (const std::string& n : names) {
        if (n == "siso_exact") out.push_back(method::siso_exact);
        else if (n == "miso_exact") out.push_back(method::miso_exact);
        else if (n == "miso_approx") out.push_back(method::miso_approx);
        else if (n == "siso_lower_bound") out.push_back(method::siso_lower_bound);
        else if (n == "siso_upper_bound") out.push_back(method::siso_upper_bound);
        else if (n == "bounds") {
            out.push_back(method::siso_lower_bound);
            out.push_back(method::siso_upper_bound);
        } else if (n == "monte_carlo") out.push_back(method::monte_carlo);
        else throw domain_error("unknown method: " + n);
    }
    if (out.empty()) throw domain_error("at least one --method is required");
    return out;
}

csv_row make_row(const pathloss_model& model, const network_config& cfg, double tau_db,
                 method m, const sim_options& sim) {
    csv_row row;
    row.lambda_per_km2 = cfg.lambda * 1e6;
    row.delta_h_m = cfg.delta_h;
    row.n_antennas = cfg.n_antennas;
    row.tau_db = tau_db;
    row.method = to_string(m);
    switch (m) {
        case method::siso_exact: row.cp = cp_siso(model, cfg); break;
        case method::miso_exact: row.cp = cp_miso_exact(model, cfg); break;
        case method::miso_approx: row.cp = cp_miso_approx(model, cfg); break;
        case method::siso_lower_bound: row.cp = cp_siso_lower_bound(model, cfg); break;
        case method::siso_upper_bound: row.cp = cp_siso_upper_bound(model, cfg); break;
        case method::monte_carlo: {
            const cp_estimate est =
                estimate_cp(model, cfg, fading_spec::beamforming(), sim.build(), sim.threads);
            row.cp = est.mean;
            row.cp_ci = est.ci_halfwidth;
            break;
        }
    }
    row.st_per_km2 = row.lambda_per_km2 * row.cp * std::log2(1.0 + cfg.tau);
    return row;
}

void write_payload(const std::string& payload, const output_options& output, std::ostream& out) {
    if (output.out_file.empty()) {
        out << payload;
        return;
    }
    const std::string tmp = output.out_file + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw domain_error("cannot open output file: " + tmp);
        f << payload;
        if (!f.good()) throw domain_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), output.out_file.c_str()) != 0)
        throw domain_error("cannot rename temporary output onto: " + output.out_file);
}

std::string fmt_density_km2(std::optional<double> v) {
    if (!v) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", *v * 1e6);
    return buf;
}

// Flat `key = value` config support: expand into flags ahead of the
// explicit arguments so the command line wins on conflicts.
std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
    std::string path;
    std::vector<std::string> rest;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw domain_error("--config needs a file path");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty()) return rest;
    if (rest.empty()) throw domain_error("--config requires a subcommand");

    std::ifstream f(path);
    if (!f) throw domain_error("cannot read config file: " + path);
    std::vector<std::string> expanded;
    expanded.push_back(rest[0]);  // subcommand first
    std::string line;
    while (std::getline(f, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const char* ws = " \t\r";
            const size_t b = s.find_first_not_of(ws);
            if (b == std::string::npos) return std::string();
            const size_t e = s.find_last_not_of(ws);
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        expanded.push_back("--" + key);
        std::istringstream vs(value);
        std::string tok;
        while (vs >> tok) expanded.push_back(tok);
    }
    expanded.insert(expanded.end(), rest.begin() + 1, rest.end());
    return expanded;
}

int run_validate(const sim_options& sim, std::ostream& out, std::ostream& err) {
    struct cell_model {
        const char* name;
        pathloss_model model;
    };
    const std::vector<cell_model> models{
        {"sspm", pathloss_model::single_slope(4.0)},
        {"dspm", pathloss_model::dual_slope(2.5, 4.0, 10.0)},
    };
    const double lambdas[] = {1e-5, 1e-4, 1e-3};
    const int antennas[] = {1, 4, 16};

    bool all_ok = true;
    out << "model,lambda_per_km2,n_antennas,analytic_cp,mc_cp,mc_ci,pass\n";
    for (const auto& m : models) {
        int good = 0;
        for (double lambda : lambdas) {
            for (int na : antennas) {
                network_config cfg;
                cfg.lambda = lambda;
                cfg.delta_h = 2.0;
                cfg.tau = 10.0;
                cfg.n_antennas = na;
                const double analytic = cp_miso_exact(m.model, cfg);
                const cp_estimate est = estimate_cp(m.model, cfg, fading_spec::beamforming(),
                                                    sim.build(), sim.threads);
                const bool pass = std::abs(est.mean - analytic) <= 3.0 * est.ci_halfwidth;
                if (pass) ++good;
                char buf[256];
                std::snprintf(buf, sizeof(buf), "%s,%.9g,%d,%.9g,%.9g,%.9g,%s\n", m.name,
                              lambda * 1e6, na, analytic, est.mean, est.ci_halfwidth,
                              pass ? "true" : "false");
                out << buf;
            }
        }
        if (good < 8) {
            err << "validate: " << m.name << " agreed in only " << good << "/9 cells\n";
            all_ok = false;
        }
    }
    return all_ok ? exit_ok : exit_validate;
}

}  // namespace

void sweep_spec::validate() const {
    if (grid.size() < 2) throw domain_error("sweep grid needs at least 2 points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw domain_error("sweep grid must be strictly increasing");
    if (axis == sweep_axis::n_antennas)
        for (double v : grid)
            if (!(v >= 1.0) || v != std::floor(v))
                throw domain_error("n_antennas grid values must be positive integers");
}

int run_command(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coverage probability and spatial throughput for dense small-cell networks"};
    app.require_subcommand(1);
    // Later occurrences win so config-file values can be overridden on the
    // command line.
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate CP/ST at one operating point");
    model_options eval_model;
    point_options eval_point;
    sim_options eval_sim;
    output_options eval_out;
    std::vector<std::string> eval_methods;
    eval_model.attach(eval);
    eval_point.attach(eval);
    eval_sim.attach(eval);
    eval_out.attach(eval);
    eval->add_option("--method", eval_methods,
                     "Methods: siso_exact miso_exact miso_approx bounds monte_carlo")
        ->expected(-1);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Sweep one axis and emit CSV per grid point");
    model_options sweep_model;
    point_options sweep_point;
    sim_options sweep_sim;
    output_options sweep_out;
    std::vector<std::string> sweep_methods;
    std::string axis_name = "lambda";
    std::vector<double> log_grid, linear_grid, explicit_grid;
    sweep_model.attach(sweep);
    sweep_point.attach(sweep);
    sweep_sim.attach(sweep);
    sweep_out.attach(sweep);
    sweep->add_option("--method", sweep_methods, "Methods (see eval)")->expected(-1);
    sweep->add_option("--axis", axis_name, "Sweep axis: lambda | delta_h | n_antennas")
        ->check(CLI::IsMember({"lambda", "delta_h", "n_antennas"}))
        ->capture_default_str();
    sweep->add_option("--log", log_grid, "Log-spaced grid: START STOP POINTS")
        ->expected(3);
    sweep->add_option("--linear", linear_grid, "Linearly spaced grid: START STOP POINTS")
        ->expected(3);
    sweep->add_option("--grid", explicit_grid, "Explicit grid values")->expected(-1);

    // critical
    auto* critical = app.add_subcommand("critical", "Critical deployment density");
    model_options crit_model;
    point_options crit_point;
    output_options crit_out;
    bool crit_exact = false, crit_cross = false;
    crit_model.attach(critical);
    crit_point.attach(critical);
    crit_out.attach(critical);
    critical->add_flag("--exact", crit_exact, "Numeric solver uses the exact beamforming CP");
    critical->add_flag("--cross-check", crit_cross, "Print closed-form and numeric results");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo CP/ST with confidence interval");
    model_options sim_model;
    point_options sim_point;
    sim_options sim_sim;
    output_options sim_out;
    std::string fading_name = "auto";
    double rice_nc = 1.0;
    int rice_dof = 12;
    sim_model.attach(simulate);
    sim_point.attach(simulate);
    sim_sim.attach(simulate);
    sim_out.attach(simulate);
    simulate->add_option("--fading", fading_name, "auto | rayleigh | beamforming | rice")
        ->check(CLI::IsMember({"auto", "rayleigh", "beamforming", "rice"}))
        ->capture_default_str();
    simulate->add_option("--rice-nc", rice_nc, "Rice noncentrality")->capture_default_str();
    simulate->add_option("--rice-dof", rice_dof, "Rice degrees of freedom (even)")
        ->capture_default_str();

    // validate
    auto* validate = app.add_subcommand("validate", "Analytic vs Monte Carlo agreement suite");
    sim_options val_sim;
    val_sim.attach(validate);

    std::vector<std::string> args;
    try {
        args = apply_config_file(args_in);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        std::vector<const char*> argv;
        argv.push_back("cellcov");
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return exit_usage;
    }

    try {
        if (eval->parsed()) {
            const pathloss_model model = eval_model.build();
            const network_config cfg = eval_point.build();
            std::vector<csv_row> rows;
            for (method m : parse_methods(eval_methods))
                rows.push_back(make_row(model, cfg, eval_point.tau_db, m, eval_sim));
            write_payload(emit_csv(rows), eval_out, out);
            return exit_ok;
        }

        if (sweep->parsed()) {
            const pathloss_model model = sweep_model.build();
            const std::vector<method> methods = parse_methods(sweep_methods);

            sweep_spec spec;
            spec.axis = axis_name == "lambda" ? sweep_axis::lambda
                        : axis_name == "delta_h" ? sweep_axis::delta_h
                                                 : sweep_axis::n_antennas;
            if (!explicit_grid.empty()) {
                spec.grid = explicit_grid;
            } else if (!log_grid.empty()) {
                const int n = static_cast<int>(log_grid[2]);
                if (n < 2 || !(log_grid[0] > 0.0) || !(log_grid[1] > log_grid[0]))
                    throw domain_error("--log expects START < STOP, both positive, POINTS >= 2");
                for (int i = 0; i < n; ++i)
                    spec.grid.push_back(log_grid[0] *
                                        std::pow(log_grid[1] / log_grid[0],
                                                 static_cast<double>(i) / (n - 1)));
            } else if (!linear_grid.empty()) {
                const int n = static_cast<int>(linear_grid[2]);
                if (n < 2 || !(linear_grid[1] > linear_grid[0]))
                    throw domain_error("--linear expects START < STOP and POINTS >= 2");
                for (int i = 0; i < n; ++i)
                    spec.grid.push_back(linear_grid[0] + (linear_grid[1] - linear_grid[0]) * i /
                                                             (n - 1));
            } else {
                throw domain_error("sweep needs one of --log, --linear, --grid");
            }
            spec.validate();

            std::vector<csv_row> rows;
            for (double v : spec.grid) {
                point_options p = sweep_point;
                switch (spec.axis) {
                    case sweep_axis::lambda: p.lambda_per_km2 = v; break;
                    case sweep_axis::delta_h: p.delta_h = v; break;
                    case sweep_axis::n_antennas: p.na = static_cast<int>(v); break;
                }
                const network_config cfg = p.build();
                for (method m : methods)
                    rows.push_back(make_row(model, cfg, p.tau_db, m, sweep_sim));
            }
            write_payload(emit_csv(rows), sweep_out, out);
            return exit_ok;
        }

        if (critical->parsed()) {
            const pathloss_model model = crit_model.build();
            const network_config cfg = crit_point.build();

            std::ostringstream payload;
            payload << "solver,lambda_dagger_per_km2,lambda_star_per_km2,feasible,binding\n";
            auto emit = [&](const char* solver, const critical_density_result& r) {
                payload << solver << ',' << fmt_density_km2(r.lambda_unconstrained) << ','
                        << fmt_density_km2(r.lambda_constrained) << ','
                        << (r.feasible ? "true" : "false") << ','
                        << (r.binding == binding_constraint::cp_boundary ? "cp_boundary"
                                                                         : "unconstrained_peak")
                        << '\n';
            };

            const bool closed_form_exists = crit_model.model != "mspm";
            if (closed_form_exists) {
                const critical_density_result r =
                    crit_model.model == "sspm"
                        ? critical_density_sspm(crit_model.alpha[0], cfg)
                        : critical_density_dspm(crit_model.alpha[0], crit_model.alpha[1],
                                                crit_model.r1, cfg);
                emit("closed_form", r);
            }
            if (!closed_form_exists || crit_cross)
                emit("numeric", critical_density_numeric(model, cfg, crit_exact));

            write_payload(payload.str(), crit_out, out);
            return exit_ok;
        }

        if (simulate->parsed()) {
            const pathloss_model model = sim_model.build();
            const network_config cfg = sim_point.build();
            fading_spec fading = fading_spec::beamforming();
            if (fading_name == "rayleigh") fading = fading_spec::rayleigh();
            else if (fading_name == "rice") fading = fading_spec::rice(rice_nc, rice_dof);

            const cp_estimate est =
                estimate_cp(model, cfg, fading, sim_sim.build(), sim_sim.threads);
            csv_row row;
            row.lambda_per_km2 = cfg.lambda * 1e6;
            row.delta_h_m = cfg.delta_h;
            row.n_antennas = cfg.n_antennas;
            row.tau_db = sim_point.tau_db;
            row.method = to_string(method::monte_carlo);
            row.cp = est.mean;
            row.cp_ci = est.ci_halfwidth;
            row.st_per_km2 = row.lambda_per_km2 * row.cp * std::log2(1.0 + cfg.tau);
            write_payload(emit_csv({row}), sim_out, out);
            return exit_ok;
        }

        if (validate->parsed()) return run_validate(val_sim, out, err);

        err << "error: no subcommand\n" << app.help();
        return exit_usage;
    } catch (const accuracy_error& e) {
        err << "numerical accuracy error: " << e.what() << '\n';
        return exit_accuracy;
    } catch (const instability_error& e) {
        err << "numerical accuracy error: " << e.what() << '\n';
        return exit_accuracy;
    } catch (const shape_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_accuracy;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

}  // namespace cellcov::cli
