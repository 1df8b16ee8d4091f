#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "yuklat/constraints.hpp"
#include "yuklat/force.hpp"
#include "yuklat/model.hpp"
#include "yuklat/oracle.hpp"
#include "yuklat/optimizer.hpp"
#include "yuklat/run_config.hpp"
#include "yuklat/verify.hpp"

namespace {

using namespace yuklat;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitDataMismatch = 3;

std::string shortest(double v) {
    char buffer[32];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, ptr);
}

std::string sig6(double v) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%#.6g", v);
    return std::string(buffer);
}

// temp-file-then-rename so a failed run never leaves a partial file behind
void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path temp = path.string() + ".tmp";
    try {
        {
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write " + temp.string());
            out << content;
            if (!out) throw std::runtime_error("write failed: " + temp.string());
        }
        std::filesystem::rename(temp, path);
    } catch (...) {
        std::error_code ignored;
        std::filesystem::remove(temp, ignored);
        throw;
    }
}

RunConfig load_or_default(const std::string& config_path) {
    if (config_path.empty()) {
        return parse_run_config(default_config_json(), "<built-in>");
    }
    return load_run_config(config_path);
}

std::vector<double> grid_from(const RunConfig& run, const std::string& grid_flag) {
    double lo = run.lambda_grid.lo_nm;
    double hi = run.lambda_grid.hi_nm;
    int n = run.lambda_grid.points;
    if (!grid_flag.empty()) {
        if (std::sscanf(grid_flag.c_str(), "%lf,%lf,%d", &lo, &hi, &n) != 3) {
            throw ConfigError("--grid expects 'lo_nm,hi_nm,points'");
        }
    }
    return log_grid(lo * units::nm, hi * units::nm, n);
}

int cmd_force(const std::string& config_path, double a_nm, double phi, double alpha,
              double lambda_nm, bool oracle_check) {
    const RunConfig run = load_or_default(config_path);
    const double separation = a_nm * units::nm;
    const YukawaParams params{alpha, lambda_nm * units::nm};
    const auto result = lateral_force(run.experiment, separation, phi, params);
    std::cout << "F_lat = " << sig6(result.force_n / units::pN) << " pN"
              << "  (phi = " << sig6(phi) << " rad, b = " << sig6(result.b_m / units::nm)
              << " nm)\n";
    std::cout << "a_nm,phi_rad,alpha,lambda_nm,force_pn\n";
    std::cout << shortest(a_nm) << "," << shortest(phi) << "," << shortest(alpha) << ","
              << shortest(lambda_nm) << "," << shortest(result.force_n / units::pN)
              << "\n";

    if (oracle_check) {
        const double energy = yukawa_energy_j(run.experiment, separation, phi, params);
        const auto reconstructed =
            oracle::energy_quadrature(run.experiment, separation, phi, params);
        const double energy_gap =
            std::abs(energy - reconstructed.value) /
            std::max({std::abs(energy), std::abs(reconstructed.value), 1e-300});
        const double fd = oracle::force_finite_difference(run.experiment, separation,
                                                          phi, params);
        const double force_gap = std::abs(fd - result.force_n) /
                                 std::max({std::abs(fd), std::abs(result.force_n), 1e-300});
        std::cout << "oracle: energy quadrature gap = " << sig6(energy_gap)
                  << ", finite-difference force gap = " << sig6(force_gap) << "\n";
    }
    return kExitOk;
}

int cmd_curve(const std::string& config_path, const std::string& out_flag,
              const std::string& grid_flag) {
    const RunConfig run = load_or_default(config_path);
    const auto grid = grid_from(run, grid_flag);
    const ConstraintLine line = exclusion_curve(run.experiment, run.measurements, grid);

    const std::filesystem::path out_dir = out_flag.empty() ? run.output_dir
                                                           : std::filesystem::path(out_flag);
    std::filesystem::create_directories(out_dir);

    std::string csv = "# label: " + line.label + "\nlambda_m,alpha\n";
    for (const auto& p : line.points) {
        csv += shortest(p.lambda_m) + "," + shortest(p.alpha) + "\n";
    }
    write_atomic(out_dir / "exclusion_curve.csv", csv);

    write_atomic(out_dir / "exclusion_curve.gp",
                 "# gnuplot -persist exclusion_curve.gp\n"
                 "set logscale xy\n"
                 "set xlabel 'interaction range lambda [m]'\n"
                 "set ylabel '|alpha|'\n"
                 "set grid\n"
                 "plot 'exclusion_curve.csv' using 1:2 with lines title 'excluded above'\n");

    std::size_t lowest = 0;
    for (std::size_t i = 1; i < line.points.size(); ++i) {
        if (line.points[i].alpha < line.points[lowest].alpha) lowest = i;
    }
    std::cout << "wrote " << (out_dir / "exclusion_curve.csv").string() << " ("
              << line.points.size() << " points)\n";
    std::cout << "strongest constraint: alpha = " << sig6(line.points[lowest].alpha)
              << " at lambda = " << sig6(line.points[lowest].lambda_m / units::nm)
              << " nm\n";
    return kExitOk;
}

int cmd_compare(const std::string& candidate_path,
                const std::vector<std::string>& reference_paths,
                const std::string& out_flag, const std::string& grid_flag) {
    const ConstraintLine candidate = load_line(candidate_path);
    std::vector<ConstraintLine> references;
    for (const auto& path : reference_paths) references.push_back(load_line(path));

    double span_lo = candidate.lambda_min_m();
    double span_hi = candidate.lambda_max_m();
    for (const auto& ref : references) {
        span_lo = std::max(span_lo, ref.lambda_min_m());
        span_hi = std::min(span_hi, ref.lambda_max_m());
    }
    if (!(span_lo <= span_hi)) {
        throw DataCompatibilityError("compare: line spans do not overlap");
    }

    std::vector<double> grid;
    if (!grid_flag.empty()) {
        double lo = 0.0, hi = 0.0;
        int n = 0;
        if (std::sscanf(grid_flag.c_str(), "%lf,%lf,%d", &lo, &hi, &n) != 3) {
            throw ConfigError("--grid expects 'lo_nm,hi_nm,points'");
        }
        grid = log_grid(lo * units::nm, hi * units::nm, n);
    } else {
        grid = log_grid(span_lo, span_hi, 200);
    }

    const StrengtheningReport report = compare(candidate, references, grid);

    std::cout << "candidate: " << candidate.label << " (" << candidate.points.size()
              << " points)\n";
    for (const auto& ref : references) {
        std::cout << "reference: " << ref.label << " (" << ref.points.size()
                  << " points)\n";
    }
    std::cout << "max strengthening ratio = " << sig6(report.max_ratio)
              << " at lambda = " << sig6(report.argmax_lambda_m / units::nm) << " nm\n";
    if (report.has_window) {
        std::cout << "dominance window: [" << sig6(report.window_lo_m / units::nm) << ", "
                  << sig6(report.window_hi_m / units::nm) << "] nm\n";
    } else {
        std::cout << "dominance window: empty (candidate is nowhere strongest)\n";
    }

    const std::filesystem::path out_dir =
        out_flag.empty() ? std::filesystem::path("out") : std::filesystem::path(out_flag);
    std::filesystem::create_directories(out_dir);
    std::string csv = "lambda_m,ratio\n";
    for (std::size_t i = 0; i < report.lambda_grid_m.size(); ++i) {
        csv += shortest(report.lambda_grid_m[i]) + "," + shortest(report.ratio[i]) + "\n";
    }
    write_atomic(out_dir / "ratios.csv", csv);
    std::cout << "wrote " << (out_dir / "ratios.csv").string() << "\n";
    return kExitOk;
}

int cmd_optimize(const std::string& config_path, const std::string& out_flag) {
    const RunConfig run = load_or_default(config_path);
    if (!run.optimization) {
        std::cerr << "config has no optimization block\n";
        return kExitInputError;
    }

    const OptimizationResult result = optimize(*run.optimization, run.experiment);
    const auto& corr = result.best_config.corrugation;
    std::cout << "best design:\n"
              << "  plate amplitude  A1 = " << sig6(corr.plate_amplitude_m / units::nm)
              << " nm\n"
              << "  sphere amplitude A2 = " << sig6(corr.sphere_amplitude_m / units::nm)
              << " nm\n"
              << "  period       Lambda = " << sig6(corr.period_m / units::nm) << " nm\n"
              << "  separation        a = " << sig6(result.best_separation_m / units::nm)
              << " nm\n"
              << "objective = " << sig6(result.objective) << " ("
              << result.evaluations << " evaluations)\n";

    const std::filesystem::path out_dir =
        out_flag.empty() ? run.output_dir : std::filesystem::path(out_flag);
    std::filesystem::create_directories(out_dir);
    std::string csv = "evaluation,a1_nm,a2_nm,period_nm,a_nm,objective\n";
    for (const auto& entry : result.trace) {
        csv += std::to_string(entry.evaluation) + "," +
               shortest(entry.point.plate_amplitude_m / units::nm) + "," +
               shortest(entry.point.sphere_amplitude_m / units::nm) + "," +
               shortest(entry.point.period_m / units::nm) + "," +
               shortest(entry.point.separation_m / units::nm) + "," +
               shortest(entry.objective) + "\n";
    }
    write_atomic(out_dir / "optimize_trace.csv", csv);
    std::cout << "wrote " << (out_dir / "optimize_trace.csv").string() << "\n";
    return kExitOk;
}

int cmd_verify(bool quick, double psi_perturbation) {
    VerifyOptions options;
    options.quick = quick;
    options.psi_perturbation = psi_perturbation;
    const auto results = run_verification(options);

    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results) {
        std::printf("%s  %-*s  gap %.3e  tol %.3e\n", r.pass ? "PASS" : "FAIL",
                    static_cast<int>(width), r.name.c_str(), r.gap, r.tolerance);
    }
    const bool ok = all_passed(results);
    std::printf("%zu checks, %s\n", results.size(), ok ? "all passed" : "FAILURES");
    return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_convert(double lambda_nm, double mass_kg, double mass_ev) {
    const int given = (lambda_nm > 0.0) + (mass_kg > 0.0) + (mass_ev > 0.0);
    if (given != 1) {
        std::cerr << "convert: give exactly one of --lambda-nm, --mass-kg, --mass-ev\n";
        return kExitInputError;
    }
    double lambda = 0.0;
    if (lambda_nm > 0.0) {
        lambda = lambda_nm * units::nm;
    } else if (mass_kg > 0.0) {
        lambda = mass_to_lambda_m(mass_kg);
    } else {
        const double kg = mass_ev * kConstants.elementary_charge /
                          (kConstants.speed_of_light * kConstants.speed_of_light);
        lambda = mass_to_lambda_m(kg);
    }
    const double mass = lambda_to_mass_kg(lambda);
    std::cout << "lambda = " << shortest(lambda / units::nm) << " nm\n"
              << "mass   = " << shortest(mass) << " kg = "
              << shortest(mass_kg_to_ev(mass)) << " eV/c^2\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lateral Yukawa-type forces and exclusion curves for corrugated "
                 "sphere-plate experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    app.add_option("--config", config_path,
                   "JSON run config (default: built-in experiment)");
    app.add_option("--out", out_dir, "output directory (overrides the config)");

    auto* force = app.add_subcommand("force", "lateral Yukawa force at one point");
    double a_nm = 0.0, phi = 0.0, alpha = 1.0, lambda_nm = 0.0;
    bool oracle_check = false;
    force->add_option("--a-nm", a_nm, "separation in nm")->required();
    force->add_option("--phi", phi, "corrugation phase shift in rad")->required();
    force->add_option("--alpha", alpha, "Yukawa strength (default 1)");
    force->add_option("--lambda-nm", lambda_nm, "interaction range in nm")->required();
    force->add_flag("--oracle", oracle_check, "also run the quadrature cross-check");

    auto* curve = app.add_subcommand("curve", "exclusion curve over the lambda grid");
    std::string grid_flag;
    curve->add_option("--grid", grid_flag, "lambda grid as 'lo_nm,hi_nm,points'");

    auto* compare_cmd = app.add_subcommand("compare", "candidate line vs reference lines");
    std::string candidate_path;
    std::vector<std::string> reference_paths;
    std::string compare_grid;
    compare_cmd->add_option("candidate", candidate_path, "candidate line CSV")->required();
    compare_cmd->add_option("references", reference_paths, "reference line CSVs")
        ->required()
        ->expected(-1);
    compare_cmd->add_option("--grid", compare_grid, "lambda grid as 'lo_nm,hi_nm,points'");

    auto* optimize_cmd =
        app.add_subcommand("optimize", "search the geometry box of the config");

    auto* verify = app.add_subcommand("verify", "run the oracle cross-check suite");
    bool quick = false;
    double psi_perturbation = 1.0;
    verify->add_flag("--quick", quick, "fast subset: series Bessel and trivial limits");
    verify->add_option("--psi-perturb", psi_perturbation)->group("");  // test hook

    auto* convert = app.add_subcommand("convert", "interaction range <-> boson mass");
    double conv_lambda_nm = 0.0, conv_mass_kg = 0.0, conv_mass_ev = 0.0;
    convert->add_option("--lambda-nm", conv_lambda_nm, "interaction range in nm");
    convert->add_option("--mass-kg", conv_mass_kg, "boson mass in kg");
    convert->add_option("--mass-ev", conv_mass_ev, "boson mass in eV/c^2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (force->parsed()) {
            return cmd_force(config_path, a_nm, phi, alpha, lambda_nm, oracle_check);
        }
        if (curve->parsed()) {
            return cmd_curve(config_path, out_dir, grid_flag);
        }
        if (compare_cmd->parsed()) {
            return cmd_compare(candidate_path, reference_paths, out_dir, compare_grid);
        }
        if (optimize_cmd->parsed()) {
            return cmd_optimize(config_path, out_dir);
        }
        if (verify->parsed()) {
            return cmd_verify(quick, psi_perturbation);
        }
        if (convert->parsed()) {
            return cmd_convert(conv_lambda_nm, conv_mass_kg, conv_mass_ev);
        }
    } catch (const DataCompatibilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataMismatch;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
