#pragma once

#include <string>
#include <vector>

#include "yuklat/constants.hpp"

namespace yuklat {

// Named substance. Only the mass density matters for Yukawa-type forces.
struct Material {
    std::string name;
    double density_kg_m3 = 0.0;

    Material() = default;
    Material(std::string name_, double density_kg_m3_);
};

struct SphereShell {
    Material material;
    double thickness_m = 0.0;

    SphereShell() = default;
    SphereShell(Material material_, double thickness_m_);
};

// Sphere core coated by concentric shells, listed innermost to outermost.
// radius_m is the outer radius including all shells.
struct LayeredSphere {
    double radius_m = 0.0;
    Material core;
    std::vector<SphereShell> shells;

    LayeredSphere() = default;
    LayeredSphere(double radius_m_, Material core_, std::vector<SphereShell> shells_);

    double shell_thickness_total_m() const;
    double core_radius_m() const;  // radius_m minus total shell thickness
};

// Coated plate; the substrate is treated as semi-infinite.
struct LayeredPlate {
    Material substrate;
    Material coating;
    double coating_thickness_m = 0.0;

    LayeredPlate() = default;
    LayeredPlate(Material substrate_, Material coating_, double coating_thickness_m_);
};

// Equal-period sinusoidal corrugations on both bodies.
struct CorrugationGeometry {
    double plate_amplitude_m = 0.0;   // A1
    double sphere_amplitude_m = 0.0;  // A2
    double period_m = 0.0;            // common period

    CorrugationGeometry() = default;
    CorrugationGeometry(double plate_amplitude_m_, double sphere_amplitude_m_,
                        double period_m_);
};

struct ExperimentConfig {
    LayeredSphere sphere;
    LayeredPlate plate;
    CorrugationGeometry corrugation;
};

// One force-measurement error budget: separation between the zeroth
// corrugation levels and the total experimental error of the lateral
// force at that separation.
struct MeasurementPoint {
    double separation_m = 0.0;
    double force_error_n = 0.0;

    MeasurementPoint() = default;
    MeasurementPoint(double separation_m_, double force_error_n_);
};

// Validation returns violations as data; an empty list means ok.
// Checking twice yields identical reports.
std::vector<std::string> validate(const ExperimentConfig& config);
std::vector<std::string> validate(const ExperimentConfig& config,
                                  const MeasurementPoint& point);

// Throws std::domain_error when the pair is not usable for force evaluation.
void require_feasible(const ExperimentConfig& config, double separation_m);

// Compton-wavelength relation lambda = hbar / (m c).
double lambda_to_mass_kg(double lambda_m, const PhysicalConstants& k = kConstants);
double mass_to_lambda_m(double mass_kg, const PhysicalConstants& k = kConstants);
double mass_kg_to_ev(double mass_kg, const PhysicalConstants& k = kConstants);

// Built-in experiment descriptions used as defaults and in tests: the
// corrugated Au-coated sphere/plate AFM setup that has been carried out,
// and the optimized variant with larger amplitudes and a shorter period.
struct ExperimentPreset {
    ExperimentConfig config;
    std::vector<MeasurementPoint> points;
};

ExperimentPreset performed_lateral_experiment();
ExperimentPreset optimized_lateral_experiment();

}  // namespace yuklat
