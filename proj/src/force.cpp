#include "yuklat/force.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "yuklat/specfun.hpp"

namespace yuklat {

namespace {

constexpr double kPi = std::numbers::pi;

void require_params(const YukawaParams& params) {
    if (!(params.lambda_m > 0.0) || !std::isfinite(params.lambda_m)) {
        throw std::domain_error("interaction range must be positive");
    }
    if (!std::isfinite(params.alpha)) {
        throw std::domain_error("interaction strength must be finite");
    }
}

}  // namespace

YukawaParams::YukawaParams(double alpha_, double lambda_m_)
    : alpha(alpha_), lambda_m(lambda_m_) {
    require_params(*this);
}

double point_yukawa_potential_j(double m1_kg, double m2_kg, double r_m,
                                const YukawaParams& params,
                                const PhysicalConstants& k) {
    require_params(params);
    if (!(r_m > 0.0)) {
        throw std::domain_error("separation must be positive");
    }
    return -(k.gravitational_constant * m1_kg * m2_kg / r_m) *
           (1.0 + params.alpha * std::exp(-r_m / params.lambda_m));
}

double effective_corrugation_amplitude(const CorrugationGeometry& corr, double phi_rad) {
    const double a1 = corr.plate_amplitude_m;
    const double a2 = corr.sphere_amplitude_m;
    const double b2 = a1 * a1 + a2 * a2 - 2.0 * a1 * a2 * std::cos(phi_rad);
    return std::sqrt(std::max(b2, 0.0));
}

double yukawa_energy_j(const ExperimentConfig& config, double separation_m,
                       double phi_rad, const YukawaParams& params,
                       const PhysicalConstants& k) {
    require_params(params);
    require_feasible(config, separation_m);

    const double lambda = params.lambda_m;
    const double b = effective_corrugation_amplitude(config.corrugation, phi_rad);
    const double psi = psi_factor(config, lambda);
    const double lambda2 = lambda * lambda;

    // alpha multiplies last: E(alpha) == alpha * E(1) to the bit
    const double unit_energy = -4.0 * kPi * kPi * k.gravitational_constant * lambda2 *
                               lambda2 * psi * std::exp(-(separation_m - b) / lambda) *
                               bessel_i_scaled(0, b / lambda);
    return params.alpha * unit_energy;
}

LateralForceResult lateral_force(const ExperimentConfig& config, double separation_m,
                                 double phi_rad, const YukawaParams& params,
                                 const PhysicalConstants& k) {
    require_params(params);
    require_feasible(config, separation_m);

    const double lambda = params.lambda_m;
    const double a1 = config.corrugation.plate_amplitude_m;
    const double a2 = config.corrugation.sphere_amplitude_m;
    const double period = config.corrugation.period_m;
    const double b = effective_corrugation_amplitude(config.corrugation, phi_rad);

    LateralForceResult result;
    result.phase_rad = phi_rad;
    result.b_m = b;

    // sin phi, with the phi = +-pi node taken to exactly zero so aligned and
    // anti-aligned corrugations report no signal bitwise
    double sin_phi = std::sin(phi_rad);
    if (phi_rad == kPi || phi_rad == -kPi) sin_phi = 0.0;
    if (a1 == 0.0 || a2 == 0.0 || sin_phi == 0.0) {
        return result;  // force exactly zero: no signal without both corrugations
    }

    const double z = b / lambda;
    // e^{-b/lambda} I1(b/lambda) / b, finite as b -> 0 where I1(x)/x -> 1/2.
    const double scaled_i1_over_b = (z < 1e-6)
        ? std::exp(-z) * (1.0 + z * z / 8.0) / (2.0 * lambda)
        : bessel_i_scaled(1, z) / b;

    const double psi = psi_factor(config, lambda);
    // alpha multiplies last: F(alpha) == alpha * F(1) to the bit
    const double unit_force = 8.0 * kPi * kPi * kPi * k.gravitational_constant *
                              lambda * lambda * lambda * psi *
                              std::exp(-(separation_m - b) / lambda) *
                              (a1 * a2 / period) * scaled_i1_over_b * sin_phi;
    result.force_n = params.alpha * unit_force;
    return result;
}

LateralForceResult max_lateral_force(const ExperimentConfig& config, double separation_m,
                                     const YukawaParams& params,
                                     const PhysicalConstants& k) {
    require_params(params);
    require_feasible(config, separation_m);

    auto magnitude = [&](double phi) {
        return std::abs(lateral_force(config, separation_m, phi, params, k).force_n);
    };

    if (config.corrugation.plate_amplitude_m == 0.0 ||
        config.corrugation.sphere_amplitude_m == 0.0) {
        return lateral_force(config, separation_m, kPi / 2.0, params, k);
    }

    // Seed scan over the open interval.
    constexpr int kScanPoints = 256;
    int best = 1;
    double best_value = -1.0;
    for (int i = 1; i < kScanPoints; ++i) {
        const double phi = kPi * i / kScanPoints;
        const double value = magnitude(phi);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }

    double lo = kPi * (best - 1) / kScanPoints;
    double hi = kPi * (best + 1) / kScanPoints;

    // Golden-section refinement down to an interval of width < 1e-10 rad.
    constexpr double kInvGolden = 0.6180339887498949;
    double x1 = hi - kInvGolden * (hi - lo);
    double x2 = lo + kInvGolden * (hi - lo);
    double f1 = magnitude(x1);
    double f2 = magnitude(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvGolden * (hi - lo);
            f2 = magnitude(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvGolden * (hi - lo);
            f1 = magnitude(x1);
        }
    }

    return lateral_force(config, separation_m, 0.5 * (lo + hi), params, k);
}

double newtonian_lateral_bound_n(const ExperimentConfig& config, double separation_m,
                                 const PhysicalConstants& k) {
    require_feasible(config, separation_m);
    const auto& corr = config.corrugation;
    const double rho_sphere = config.sphere.shells.empty()
        ? config.sphere.core.density_kg_m3
        : config.sphere.shells.back().material.density_kg_m3;
    const double rho_plate = config.plate.coating.density_kg_m3;
    const double wavenumber = 2.0 * kPi / corr.period_m;

    return 2.0 * kPi * k.gravitational_constant * rho_sphere * rho_plate *
           corr.plate_amplitude_m * corr.sphere_amplitude_m * config.sphere.radius_m *
           corr.period_m * std::exp(-wavenumber * separation_m);
}

}  // namespace yuklat
