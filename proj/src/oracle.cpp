#include "yuklat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "yuklat/force.hpp"
#include "yuklat/quadrature.hpp"

namespace yuklat::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

QuadratureReport to_report(const QuadratureResult& r, const char* what) {
    if (!r.converged) {
        throw std::runtime_error(std::string(what) + ": quadrature did not converge");
    }
    return QuadratureReport{r.value, r.error_estimate, r.evaluations};
}

// Integration window for exponentially decaying integrands: beyond
// 60 interaction ranges the tail is below e^{-60} ~ 9e-27 relative.
constexpr double kDecayWindow = 60.0;

}  // namespace

double bessel_series(int order, double z) {
    if (order != 0 && order != 1) {
        throw std::domain_error("bessel_series: order must be 0 or 1");
    }
    if (!(z >= 0.0 && z <= 60.0)) {
        throw std::domain_error("bessel_series: argument outside reference domain [0, 60]");
    }
    const double q = 0.25 * z * z;
    double term = (order == 0) ? 1.0 : 0.5 * z;
    double sum = term;
    for (int k = 1; k < 600; ++k) {
        term *= q / (static_cast<double>(k) * (k + order));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

QuadratureReport period_average_scaled(const CorrugationGeometry& corr, double phi_rad,
                                       double lambda_m) {
    if (!(lambda_m > 0.0)) {
        throw std::domain_error("period_average_scaled: interaction range must be positive");
    }
    const double a1 = corr.plate_amplitude_m;
    const double a2 = corr.sphere_amplitude_m;
    const double b = effective_corrugation_amplitude(corr, phi_rad);

    auto integrand = [&](double u) {
        const double height = a1 * std::cos(u) - a2 * std::cos(u + phi_rad);
        return std::exp((height - b) / lambda_m);
    };
    QuadratureResult r = integrate(integrand, 0.0, 2.0 * kPi, 1e-11, 1e-30);
    r.value /= 2.0 * kPi;
    r.error_estimate /= 2.0 * kPi;
    return to_report(r, "period_average_scaled");
}

QuadratureReport sphere_kernel_quadrature(double x_m, double lambda_m) {
    if (!(x_m > 0.0)) {
        throw std::domain_error("sphere_kernel_quadrature: radius must be positive");
    }
    if (!(lambda_m > 0.0)) {
        throw std::domain_error("sphere_kernel_quadrature: interaction range must be positive");
    }

    auto integrand = [&](double r) {
        return (r / lambda_m) * std::exp((r - x_m) / lambda_m) *
               (-std::expm1(-2.0 * r / lambda_m));
    };
    const double r_min = std::max(0.0, x_m - kDecayWindow * lambda_m);
    QuadratureResult r = integrate(integrand, r_min, x_m, 1e-11, 1e-30);
    return to_report(r, "sphere_kernel_quadrature");
}

QuadratureReport plate_depth_quadrature(const LayeredPlate& plate, double lambda_m) {
    if (!(lambda_m > 0.0)) {
        throw std::domain_error("plate_depth_quadrature: interaction range must be positive");
    }
    const double coating_depth = plate.coating_thickness_m;
    const double rho_coat = plate.coating.density_kg_m3;
    const double rho_sub = plate.substrate.density_kg_m3;

    QuadratureReport out;
    auto accumulate = [&](double rho, double from, double to) {
        if (to <= from) return;
        auto integrand = [&](double depth) {
            return rho * std::exp(-depth / lambda_m) / lambda_m;
        };
        QuadratureResult r = integrate(integrand, from, to, 1e-11, 1e-30);
        QuadratureReport piece = to_report(r, "plate_depth_quadrature");
        out.value += piece.value;
        out.estimated_error += piece.estimated_error;
        out.evaluations += piece.evaluations;
    };

    const double cutoff = coating_depth + kDecayWindow * lambda_m;
    accumulate(rho_coat, 0.0, coating_depth);
    accumulate(rho_sub, coating_depth, cutoff);
    // analytic tail of the semi-infinite substrate beyond the cutoff
    out.value += rho_sub * std::exp(-cutoff / lambda_m);
    return out;
}

QuadratureReport sphere_radial_quadrature(const LayeredSphere& sphere, double lambda_m) {
    if (!(lambda_m > 0.0)) {
        throw std::domain_error("sphere_radial_quadrature: interaction range must be positive");
    }
    const double radius = sphere.radius_m;

    auto density_at = [&](double r) {
        double boundary = radius;
        for (std::size_t j = sphere.shells.size(); j-- > 0;) {
            const double inner = boundary - sphere.shells[j].thickness_m;
            if (r >= inner) return sphere.shells[j].material.density_kg_m3;
            boundary = inner;
        }
        return sphere.core.density_kg_m3;
    };
    auto integrand = [&](double r) {
        return density_at(r) * (r / lambda_m) *
               (std::exp((r - radius) / lambda_m) - std::exp(-(r + radius) / lambda_m));
    };

    // Split at the material boundaries inside the integration window; the
    // integrand has kinks there.
    const double r_min = std::max(0.0, radius - kDecayWindow * lambda_m);
    std::vector<double> cuts{r_min};
    double boundary = radius;
    for (std::size_t j = sphere.shells.size(); j-- > 0;) {
        boundary -= sphere.shells[j].thickness_m;
        if (boundary > r_min && boundary < radius) cuts.push_back(boundary);
    }
    cuts.push_back(radius);
    std::sort(cuts.begin(), cuts.end());

    QuadratureReport out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        QuadratureResult r = integrate(integrand, cuts[i], cuts[i + 1], 1e-11, 1e-30);
        QuadratureReport piece = to_report(r, "sphere_radial_quadrature");
        out.value += piece.value;
        out.estimated_error += piece.estimated_error;
        out.evaluations += piece.evaluations;
    }
    return out;
}

QuadratureReport energy_quadrature(const ExperimentConfig& config, double separation_m,
                                   double phi_rad, const YukawaParams& params,
                                   const PhysicalConstants& k) {
    require_feasible(config, separation_m);
    if (!(params.lambda_m > 0.0)) {
        throw std::domain_error("energy_quadrature: interaction range must be positive");
    }

    const double lambda = params.lambda_m;
    if (params.alpha == 0.0) {
        return QuadratureReport{0.0, 0.0, 0};
    }

    const QuadratureReport plate = plate_depth_quadrature(config.plate, lambda);
    const QuadratureReport sphere = sphere_radial_quadrature(config.sphere, lambda);
    const QuadratureReport average =
        period_average_scaled(config.corrugation, phi_rad, lambda);

    const double b = effective_corrugation_amplitude(config.corrugation, phi_rad);
    const double lambda2 = lambda * lambda;
    const double prefactor = -4.0 * kPi * kPi * k.gravitational_constant * params.alpha *
                             lambda2 * lambda2 * std::exp(-(separation_m - b) / lambda);

    QuadratureReport out;
    out.value = prefactor * plate.value * sphere.value * average.value;
    const double rel = plate.estimated_error / std::abs(plate.value) +
                       sphere.estimated_error / std::abs(sphere.value) +
                       average.estimated_error / std::abs(average.value);
    out.estimated_error = std::abs(out.value) * rel;
    out.evaluations = plate.evaluations + sphere.evaluations + average.evaluations;
    return out;
}

double force_central_difference(const ExperimentConfig& config, double separation_m,
                                double phi_rad, const YukawaParams& params, double step_rad,
                                int richardson_levels, const PhysicalConstants& k) {
    auto energy = [&](double phi) {
        return yukawa_energy_j(config, separation_m, phi, params, k);
    };
    // Neville tableau over step halvings of the O(h^2) central difference.
    std::vector<double> row;
    double h = step_rad;
    for (int level = 0; level <= richardson_levels; ++level) {
        const double d = (energy(phi_rad + h) - energy(phi_rad - h)) / (2.0 * h);
        row.push_back(d);
        for (int j = static_cast<int>(row.size()) - 2; j >= 0; --j) {
            const double weight = std::pow(4.0, static_cast<int>(row.size()) - 1 - j);
            row[j] = (weight * row[j + 1] - row[j]) / (weight - 1.0);
        }
        h *= 0.5;
    }
    return -(2.0 * kPi / config.corrugation.period_m) * row.front();
}

double force_finite_difference(const ExperimentConfig& config, double separation_m,
                               double phi_rad, const YukawaParams& params,
                               const PhysicalConstants& k) {
    auto energy = [&](double phi) {
        return yukawa_energy_j(config, separation_m, phi, params, k);
    };

    // Ridders: shrink the step geometrically, extrapolate the central
    // differences, keep the tableau entry with the smallest error estimate.
    const double b_scale = std::max(effective_corrugation_amplitude(
                                        config.corrugation, kPi / 2.0),
                                    1e-12);
    const double phase_scale =
        std::max(1.0, config.corrugation.plate_amplitude_m *
                          config.corrugation.sphere_amplitude_m /
                          (b_scale * params.lambda_m));
    double h = 0.4 / phase_scale;

    constexpr int kStages = 16;
    constexpr double kShrink = 1.8;
    double tableau[kStages][kStages];
    double best = 0.0;
    double best_error = std::numeric_limits<double>::max();

    for (int i = 0; i < kStages; ++i) {
        tableau[i][0] = (energy(phi_rad + h) - energy(phi_rad - h)) / (2.0 * h);
        double factor = kShrink * kShrink;
        for (int j = 1; j <= i; ++j) {
            tableau[i][j] =
                (factor * tableau[i][j - 1] - tableau[i - 1][j - 1]) / (factor - 1.0);
            factor *= kShrink * kShrink;
            const double error = std::max(std::abs(tableau[i][j] - tableau[i][j - 1]),
                                          std::abs(tableau[i][j] - tableau[i - 1][j - 1]));
            if (error <= best_error) {
                best_error = error;
                best = tableau[i][j];
            }
        }
        if (i > 0 &&
            std::abs(tableau[i][i] - tableau[i - 1][i - 1]) >= 4.0 * best_error &&
            best_error < std::abs(best) * 1e-9) {
            break;  // rounding noise has taken over
        }
        h /= kShrink;
    }

    return -(2.0 * kPi / config.corrugation.period_m) * best;
}

}  // namespace yuklat::oracle
