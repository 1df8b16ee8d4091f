#pragma once

#include "yuklat/model.hpp"

namespace yuklat {

// Yukawa correction parameters: V(r) picks up the factor (1 + alpha e^{-r/lambda}).
// alpha may carry either sign; constraint derivation works with |alpha|.
struct YukawaParams {
    double alpha = 0.0;
    double lambda_m = 0.0;

    YukawaParams() = default;
    YukawaParams(double alpha_, double lambda_m_);
};

struct LateralForceResult {
    double force_n = 0.0;
    double phase_rad = 0.0;
    double b_m = 0.0;  // effective corrugation amplitude at that phase
};

// Pair potential between two point masses: -(G m1 m2 / r)(1 + alpha e^{-r/lambda}).
double point_yukawa_potential_j(double m1_kg, double m2_kg, double r_m,
                                const YukawaParams& params,
                                const PhysicalConstants& k = kConstants);

// b(phi) = sqrt(A1^2 + A2^2 - 2 A1 A2 cos phi): amplitude of the difference
// sinusoid between the two corrugation profiles at phase shift phi.
double effective_corrugation_amplitude(const CorrugationGeometry& corr, double phi_rad);

// Yukawa interaction energy of the corrugated layered sphere-plate pair:
// E = -4 pi^2 G alpha lambda^4 Psi(lambda) e^{-a/lambda} I0(b(phi)/lambda),
// evaluated through the scaled Bessel product (a > b is guaranteed by the
// contact constraint, so e^{-(a-b)/lambda} never overflows).
double yukawa_energy_j(const ExperimentConfig& config, double separation_m,
                       double phi_rad, const YukawaParams& params,
                       const PhysicalConstants& k = kConstants);

// Lateral force, the negative phase derivative of the energy times 2 pi / period:
// F = 8 pi^3 G alpha lambda^3 Psi e^{-a/lambda} (A1 A2 / (b Lambda)) I1(b/lambda) sin phi.
// The b -> 0 corner (A1 = A2, phi -> 0) is a removable singularity: I1(x)/x -> 1/2.
LateralForceResult lateral_force(const ExperimentConfig& config, double separation_m,
                                 double phi_rad, const YukawaParams& params,
                                 const PhysicalConstants& k = kConstants);

// Phase that maximizes |F| on (0, pi), located by a 256-point scan plus
// golden-section refinement to 1e-10 rad. The scan guards against the
// non-concave |F(phi)| profiles that appear at small lambda.
LateralForceResult max_lateral_force(const ExperimentConfig& config, double separation_m,
                                     const YukawaParams& params,
                                     const PhysicalConstants& k = kConstants);

// Order-of-magnitude bound on the purely Newtonian lateral force (no Yukawa
// factor), from the interaction of the two sinusoidal surface-mass sheets
// rho A cos(2 pi x / Lambda) over the near-contact zone of the sphere:
// |F_N| <~ 2 pi G rho1 rho2 A1 A2 R Lambda e^{-2 pi a / Lambda}.
// Documents why the Newtonian term is dropped from the constraint inequality.
double newtonian_lateral_bound_n(const ExperimentConfig& config, double separation_m,
                                 const PhysicalConstants& k = kConstants);

}  // namespace yuklat
