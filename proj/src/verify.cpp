#include "yuklat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "yuklat/force.hpp"
#include "yuklat/model.hpp"
#include "yuklat/oracle.hpp"
#include "yuklat/specfun.hpp"

namespace yuklat {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> grid(n);
    const double step = (std::log(hi) - std::log(lo)) / (n - 1);
    for (int i = 0; i < n; ++i) grid[i] = std::exp(std::log(lo) + step * i);
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

double rel_gap(double got, double want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

struct Suite {
    std::vector<CheckResult> results;

    void record(std::string name, double gap, double tolerance) {
        results.push_back(CheckResult{std::move(name), gap, tolerance,
                                      gap <= tolerance && std::isfinite(gap)});
    }
};

void check_bessel_series(Suite& suite) {
    double gap = 0.0;
    for (double z : log_spaced(1e-4, 30.0, 50)) {
        const double reference = std::exp(-z) * oracle::bessel_series(0, z);
        gap = std::max(gap, rel_gap(bessel_i_scaled(0, z), reference));
        const double reference1 = std::exp(-z) * oracle::bessel_series(1, z);
        gap = std::max(gap, rel_gap(bessel_i_scaled(1, z), reference1));
    }
    suite.record("bessel scaled vs series, z in [1e-4, 30]", gap, 1e-12);
}

void check_bessel_range(Suite& suite) {
    // Scaled I0 strictly decreasing; scaled I1 unimodal; I0 >= I1 >= 0;
    // both finite and positive far beyond the series domain.
    double violation = 0.0;
    double previous_i0 = bessel_i_scaled(0, 0.0);
    double previous_i1 = bessel_i_scaled(1, 0.0);
    int i1_direction_changes = 0;
    bool i1_rising = true;
    for (double z : log_spaced(1e-6, 1e5, 200)) {
        const double i0 = bessel_i_scaled(0, z);
        const double i1 = bessel_i_scaled(1, z);
        if (!(std::isfinite(i0) && i0 > 0.0 && std::isfinite(i1) && i1 >= 0.0)) {
            violation = std::max(violation, 1.0);
        }
        if (i0 >= previous_i0) violation = std::max(violation, i0 - previous_i0);
        if (i0 < i1) violation = std::max(violation, i1 - i0);
        if (i1_rising && i1 < previous_i1) {
            i1_rising = false;
            ++i1_direction_changes;
        } else if (!i1_rising && i1 > previous_i1) {
            ++i1_direction_changes;
        }
        previous_i0 = i0;
        previous_i1 = i1;
    }
    if (i1_direction_changes > 1) violation = std::max(violation, 1.0);
    suite.record("bessel scaled monotonicity/ordering up to z = 1e5", violation, 0.0);
}

void check_phi_identities(Suite& suite) {
    double gap = 0.0;
    for (double lambda : {1e-9, 19e-9, 3.7e-7}) {
        gap = std::max(gap, std::abs(phi_kernel(0.0, lambda)) / lambda);
        gap = std::max(gap, rel_gap(phi_kernel(lambda, lambda),
                                    2.0 * lambda * std::exp(-2.0)));
        const double x = 50.0 * lambda;
        gap = std::max(gap, rel_gap(phi_kernel(x, lambda), x - lambda));
    }
    suite.record("phi kernel identities (zero, x = lambda, x >> lambda)", gap, 1e-12);
}

void check_phi_quadrature(Suite& suite) {
    double gap = 0.0;
    const double lambda = 19e-9;
    for (double ratio : {0.01, 0.5, 1.0, 3.0, 10.0, 50.0}) {
        const double x = ratio * lambda;
        const auto report = oracle::sphere_kernel_quadrature(x, lambda);
        gap = std::max(gap, rel_gap(report.value, phi_kernel(x, lambda)));
    }
    suite.record("phi kernel vs radial quadrature", gap, 1e-9);
}

void check_period_average(Suite& suite) {
    const auto preset = optimized_lateral_experiment();
    const auto& corr = preset.config.corrugation;
    double gap = 0.0;
    for (double lambda_nm : {2.0, 19.0, 100.0}) {
        for (double phi : {0.4, kPi / 2.0, 2.8}) {
            const double lambda = lambda_nm * units::nm;
            const double b = effective_corrugation_amplitude(corr, phi);
            const auto report = oracle::period_average_scaled(corr, phi, lambda);
            gap = std::max(gap, rel_gap(report.value, bessel_i_scaled(0, b / lambda)));
        }
    }
    suite.record("period average vs scaled I0", gap, 1e-9);
}

void check_plate_bracket(Suite& suite) {
    const auto preset = optimized_lateral_experiment();
    double gap = 0.0;
    for (double lambda_nm : {1.0, 19.0, 300.0}) {
        const double lambda = lambda_nm * units::nm;
        const auto report = oracle::plate_depth_quadrature(preset.config.plate, lambda);
        gap = std::max(gap,
                       rel_gap(report.value, plate_structure_factor(preset.config.plate, lambda)));
    }
    suite.record("plate bracket vs depth quadrature", gap, 1e-9);
}

void check_sphere_bracket(Suite& suite) {
    const auto preset = optimized_lateral_experiment();
    double gap = 0.0;
    for (double lambda_nm : {1.0, 19.0, 200.0}) {
        const double lambda = lambda_nm * units::nm;
        const auto report = oracle::sphere_radial_quadrature(preset.config.sphere, lambda);
        gap = std::max(gap,
                       rel_gap(report.value, sphere_structure_factor(preset.config.sphere, lambda)));
    }
    suite.record("sphere bracket vs radial quadrature", gap, 1e-9);
}

void check_psi_collapse(Suite& suite) {
    auto preset = optimized_lateral_experiment();
    ExperimentConfig bare = preset.config;
    bare.sphere.shells.clear();
    bare.plate.coating_thickness_m = 0.0;

    double gap = 0.0;
    for (double lambda_nm : {1.0, 19.0, 100.0}) {
        const double lambda = lambda_nm * units::nm;
        const double expected = bare.plate.substrate.density_kg_m3 *
                                bare.sphere.core.density_kg_m3 *
                                phi_kernel(bare.sphere.radius_m, lambda);
        gap = std::max(gap, rel_gap(psi_factor(bare, lambda), expected));
    }
    suite.record("psi collapse for bare bodies", gap, 1e-14);

    // lambda far below every coating thickness: only the outermost materials count.
    const double lambda = preset.config.sphere.shells.front().thickness_m / 30.0;
    const double rho_au = preset.config.plate.coating.density_kg_m3;
    const double expected =
        rho_au * rho_au * phi_kernel(preset.config.sphere.radius_m, lambda);
    suite.record("psi short-range limit (outer materials only)",
                 rel_gap(psi_factor(preset.config, lambda), expected), 1e-10);
}

void check_energy_quadrature(Suite& suite, const VerifyOptions& options,
                             const PhysicalConstants& k) {
    const auto preset = optimized_lateral_experiment();
    double gap = 0.0;
    for (double lambda_nm : {2.0, 5.0, 19.0, 37.0, 100.0}) {
        for (double phi : {0.3, 0.9, 1.5, 2.1, 2.7}) {
            for (double a_nm : {125.0, 137.3, 160.0}) {
                const YukawaParams params{1.0, lambda_nm * units::nm};
                const double analytic =
                    options.psi_perturbation *
                    yukawa_energy_j(preset.config, a_nm * units::nm, phi, params, k);
                const auto report = oracle::energy_quadrature(
                    preset.config, a_nm * units::nm, phi, params, k);
                gap = std::max(gap, rel_gap(analytic, report.value));
            }
        }
    }
    suite.record("energy: analytic vs quadrature reconstruction", gap, 1e-6);
}

void check_force_consistency(Suite& suite, const VerifyOptions& options,
                             const PhysicalConstants& k) {
    const auto preset = optimized_lateral_experiment();
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> phi_dist(0.3, 2.8);
    std::uniform_real_distribution<double> log_lambda_dist(std::log(2.0), std::log(100.0));
    std::uniform_real_distribution<double> a_dist(124.0, 160.0);

    double gap = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double phi = phi_dist(rng);
        const double lambda = std::exp(log_lambda_dist(rng)) * units::nm;
        const double a = a_dist(rng) * units::nm;
        const YukawaParams params{1.0, lambda};
        const double analytic = lateral_force(preset.config, a, phi, params, k).force_n;
        const double numeric =
            oracle::force_finite_difference(preset.config, a, phi, params, k);
        gap = std::max(gap, rel_gap(numeric, analytic));
    }
    suite.record("force: analytic vs -(2 pi / period) dE/dphi", gap, 1e-8);
}

void check_max_force_dual_route(Suite& suite, const PhysicalConstants& k) {
    const auto preset = optimized_lateral_experiment();
    double gap = 0.0;
    for (double lambda_nm : {2.0, 19.0, 100.0}) {
        const YukawaParams params{1.0, lambda_nm * units::nm};
        const double a = 125.0 * units::nm;
        const auto golden = max_lateral_force(preset.config, a, params, k);

        // dense grid + one parabolic refinement, independent of the search
        constexpr int kGrid = 65536;
        int best = 1;
        double best_value = -1.0;
        for (int i = 1; i < kGrid; ++i) {
            const double phi = kPi * i / kGrid;
            const double value =
                std::abs(lateral_force(preset.config, a, phi, params, k).force_n);
            if (value > best_value) {
                best_value = value;
                best = i;
            }
        }
        const double h = kPi / kGrid;
        const double phi0 = kPi * best / kGrid;
        const double f_minus =
            std::abs(lateral_force(preset.config, a, phi0 - h, params, k).force_n);
        const double f_plus =
            std::abs(lateral_force(preset.config, a, phi0 + h, params, k).force_n);
        const double denom = f_minus - 2.0 * best_value + f_plus;
        double phi_star = phi0;
        if (denom < 0.0) phi_star = phi0 + 0.5 * h * (f_minus - f_plus) / denom;
        const double refined =
            std::abs(lateral_force(preset.config, a, phi_star, params, k).force_n);

        gap = std::max(gap, rel_gap(std::abs(golden.force_n), std::max(refined, best_value)));
    }
    suite.record("max force: golden section vs dense grid", gap, 1e-9);
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options,
                                          const PhysicalConstants& k) {
    Suite suite;

    check_bessel_series(suite);
    check_phi_identities(suite);
    check_psi_collapse(suite);
    if (options.quick) {
        return suite.results;
    }

    check_bessel_range(suite);
    check_phi_quadrature(suite);
    check_period_average(suite);
    check_plate_bracket(suite);
    check_sphere_bracket(suite);
    check_energy_quadrature(suite, options, k);
    check_force_consistency(suite, options, k);
    check_max_force_dual_route(suite, k);

    return suite.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

}  // namespace yuklat
