#pragma once

#include "yuklat/force.hpp"
#include "yuklat/model.hpp"

namespace yuklat::oracle {

// Brute-force counterparts of the analytic formulas. Everything here is an
// independent route used to check the closed forms; none of it calls the
// analytic kernels it verifies.

struct QuadratureReport {
    double value = 0.0;
    double estimated_error = 0.0;
    long evaluations = 0;
};

// Defining power series sum_k (z/2)^{2k+n} / (k! (k+n)!), unscaled, summed to
// term < 1e-18 relative. Reference domain z <= 60.
double bessel_series(int order, double z);

// Average of exp[(A1 cos u - A2 cos(u + phi) - b(phi)) / lambda] over one
// corrugation period, by adaptive quadrature. Equals e^{-b/lambda} I0(b/lambda);
// returned in that scaled form so small lambda stays finite.
QuadratureReport period_average_scaled(const CorrugationGeometry& corr, double phi_rad,
                                       double lambda_m);

// Radial integral int_0^x (r/lambda) e^{(r-x)/lambda} (1 - e^{-2r/lambda}) dr,
// the disk-sliced form of the uniform-ball kernel; must agree with phi_kernel.
QuadratureReport sphere_kernel_quadrature(double x_m, double lambda_m);

// Depth integral (1/lambda) int_0^inf rho(depth) e^{-depth/lambda} d(depth)
// through the actual plate density profile; must agree with the plate bracket.
QuadratureReport plate_depth_quadrature(const LayeredPlate& plate, double lambda_m);

// Radial integral int_0^R rho(r) (r/lambda) (e^{(r-R)/lambda} - e^{-(r+R)/lambda}) dr
// over the actual sphere density profile; must agree with the sphere bracket.
QuadratureReport sphere_radial_quadrature(const LayeredSphere& sphere, double lambda_m);

// Full energy reconstruction: -4 pi^2 G alpha lambda^4 times the three
// quadrature factors above, with the same e^{-(a-b)/lambda} separation
// bookkeeping as the analytic energy. Throws on non-convergence.
QuadratureReport energy_quadrature(const ExperimentConfig& config, double separation_m,
                                   double phi_rad, const YukawaParams& params,
                                   const PhysicalConstants& k = kConstants);

// -(2 pi / period) d/dphi of the analytic energy, by central differences with
// Ridders step control. Exactly zero at phi = 0 and phi = pi (the energy is
// even around both points).
double force_finite_difference(const ExperimentConfig& config, double separation_m,
                               double phi_rad, const YukawaParams& params,
                               const PhysicalConstants& k = kConstants);

// Fixed-step variant: central difference with `richardson_levels` rounds of
// step-halving extrapolation. Exposed so tests can probe the convergence order.
double force_central_difference(const ExperimentConfig& config, double separation_m,
                                double phi_rad, const YukawaParams& params, double step_rad,
                                int richardson_levels,
                                const PhysicalConstants& k = kConstants);

}  // namespace yuklat::oracle
