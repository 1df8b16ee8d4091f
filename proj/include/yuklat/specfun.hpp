#pragma once

#include "yuklat/model.hpp"

namespace yuklat {

// Exponentially scaled modified Bessel function e^{-z} I_n(z), n in {0, 1},
// z >= 0. Scaling keeps every downstream product finite: the energy and force
// pair I_n(b/lambda) with e^{-a/lambda}, and at nanometer lambda the argument
// b/lambda runs into the hundreds, so the product must be formed as
// e^{-(a-b)/lambda} * [e^{-b/lambda} I_n(b/lambda)].
double bessel_i_scaled(int order, double z);

// Ball kernel Phi(x, lambda) = x - lambda + (x + lambda) e^{-2x/lambda}.
// The direct form cancels catastrophically for x << lambda; a series branch
// takes over there.
double phi_kernel(double x_m, double lambda_m);

// Plate bracket: rho_coat - (rho_coat - rho_sub) e^{-thickness/lambda}.
double plate_structure_factor(const LayeredPlate& plate, double lambda_m);

// Sphere bracket: density differences telescoped over the shell boundaries,
// each weighted by Phi at the boundary radius and the exponential depth
// attenuation of that boundary below the outer surface.
double sphere_structure_factor(const LayeredSphere& sphere, double lambda_m);

// Psi(lambda) = plate bracket * sphere bracket, kg^2 m^-5. Encodes the
// layered density structure of both bodies.
double psi_factor(const ExperimentConfig& config, double lambda_m);

}  // namespace yuklat
