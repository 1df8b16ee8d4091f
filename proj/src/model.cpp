#include "yuklat/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace yuklat {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

std::string format_m(double v) {
    std::ostringstream os;
    os << v << " m";
    return os.str();
}

}  // namespace

Material::Material(std::string name_, double density_kg_m3_)
    : name(std::move(name_)), density_kg_m3(density_kg_m3_) {
    require_finite(density_kg_m3, "material density");
}

SphereShell::SphereShell(Material material_, double thickness_m_)
    : material(std::move(material_)), thickness_m(thickness_m_) {
    require_finite(thickness_m, "shell thickness");
}

LayeredSphere::LayeredSphere(double radius_m_, Material core_,
                             std::vector<SphereShell> shells_)
    : radius_m(radius_m_), core(std::move(core_)), shells(std::move(shells_)) {
    require_finite(radius_m, "sphere radius");
}

double LayeredSphere::shell_thickness_total_m() const {
    double total = 0.0;
    for (const auto& s : shells) total += s.thickness_m;
    return total;
}

double LayeredSphere::core_radius_m() const {
    return radius_m - shell_thickness_total_m();
}

LayeredPlate::LayeredPlate(Material substrate_, Material coating_,
                           double coating_thickness_m_)
    : substrate(std::move(substrate_)),
      coating(std::move(coating_)),
      coating_thickness_m(coating_thickness_m_) {
    require_finite(coating_thickness_m, "plate coating thickness");
}

CorrugationGeometry::CorrugationGeometry(double plate_amplitude_m_,
                                         double sphere_amplitude_m_,
                                         double period_m_)
    : plate_amplitude_m(plate_amplitude_m_),
      sphere_amplitude_m(sphere_amplitude_m_),
      period_m(period_m_) {
    require_finite(plate_amplitude_m, "plate corrugation amplitude");
    require_finite(sphere_amplitude_m, "sphere corrugation amplitude");
    require_finite(period_m, "corrugation period");
}

MeasurementPoint::MeasurementPoint(double separation_m_, double force_error_n_)
    : separation_m(separation_m_), force_error_n(force_error_n_) {
    require_finite(separation_m, "separation");
    require_finite(force_error_n, "force error budget");
}

std::vector<std::string> validate(const ExperimentConfig& config) {
    std::vector<std::string> violations;

    auto check_density = [&](const Material& m, const char* where) {
        if (!(m.density_kg_m3 > 0.0)) {
            violations.push_back(std::string("non-positive density for ") + where +
                                 " material '" + m.name + "'");
        }
    };

    check_density(config.sphere.core, "sphere core");
    for (const auto& s : config.sphere.shells) {
        check_density(s.material, "sphere shell");
        if (s.thickness_m < 0.0) {
            violations.push_back("negative shell thickness for '" +
                                 s.material.name + "'");
        }
    }
    check_density(config.plate.substrate, "plate substrate");
    check_density(config.plate.coating, "plate coating");

    if (!(config.sphere.radius_m > 0.0)) {
        violations.push_back("non-positive sphere radius");
    } else if (!(config.sphere.core_radius_m() > 0.0)) {
        violations.push_back("shell thickness total " +
                             format_m(config.sphere.shell_thickness_total_m()) +
                             " does not leave a positive core radius inside " +
                             format_m(config.sphere.radius_m));
    }

    if (config.plate.coating_thickness_m < 0.0) {
        violations.push_back("negative plate coating thickness");
    }

    const auto& c = config.corrugation;
    if (c.plate_amplitude_m < 0.0) violations.push_back("negative plate corrugation amplitude");
    if (c.sphere_amplitude_m < 0.0) violations.push_back("negative sphere corrugation amplitude");
    if (!(c.period_m > 0.0)) violations.push_back("non-positive corrugation period");

    return violations;
}

std::vector<std::string> validate(const ExperimentConfig& config,
                                  const MeasurementPoint& point) {
    std::vector<std::string> violations = validate(config);

    const double contact =
        config.corrugation.plate_amplitude_m + config.corrugation.sphere_amplitude_m;
    if (!(point.separation_m > contact)) {
        violations.push_back("contact: separation " + format_m(point.separation_m) +
                             " does not exceed combined corrugation amplitude " +
                             format_m(contact));
    }
    if (!(point.force_error_n > 0.0)) {
        violations.push_back("non-positive force error budget");
    }

    return violations;
}

void require_feasible(const ExperimentConfig& config, double separation_m) {
    std::vector<std::string> violations = validate(config);
    const double contact =
        config.corrugation.plate_amplitude_m + config.corrugation.sphere_amplitude_m;
    if (!std::isfinite(separation_m) || !(separation_m > contact)) {
        violations.push_back("contact: separation " + format_m(separation_m) +
                             " does not exceed combined corrugation amplitude " +
                             format_m(contact));
    }
    if (!violations.empty()) {
        std::string msg = "infeasible geometry:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw std::domain_error(msg);
    }
}

double lambda_to_mass_kg(double lambda_m, const PhysicalConstants& k) {
    if (!(lambda_m > 0.0) || !std::isfinite(lambda_m)) {
        throw std::domain_error("interaction range must be positive");
    }
    return k.hbar / (lambda_m * k.speed_of_light);
}

double mass_to_lambda_m(double mass_kg, const PhysicalConstants& k) {
    if (!(mass_kg > 0.0) || !std::isfinite(mass_kg)) {
        throw std::domain_error("mass must be positive");
    }
    return k.hbar / (mass_kg * k.speed_of_light);
}

double mass_kg_to_ev(double mass_kg, const PhysicalConstants& k) {
    return mass_kg * k.speed_of_light * k.speed_of_light / k.elementary_charge;
}

namespace {

ExperimentConfig gold_coated_bodies(CorrugationGeometry corrugation) {
    Material polystyrene{"polystyrene", 1.06e3};
    Material chromium{"chromium", 7.14e3};
    Material gold{"gold", 19.28e3};
    Material epoxy{"hard epoxy", 1.08e3};

    LayeredSphere sphere{97.0 * units::um, polystyrene,
                         {SphereShell{chromium, 10.0 * units::nm},
                          SphereShell{gold, 50.0 * units::nm}}};
    LayeredPlate plate{epoxy, gold, 300.0 * units::nm};
    return ExperimentConfig{sphere, plate, corrugation};
}

}  // namespace

ExperimentPreset performed_lateral_experiment() {
    ExperimentPreset preset;
    preset.config = gold_coated_bodies(
        CorrugationGeometry{85.4 * units::nm, 13.7 * units::nm, 574.7 * units::nm});
    preset.points = {
        MeasurementPoint{121.1 * units::nm, 11.1 * units::pN},
        MeasurementPoint{124.7 * units::nm, 4.7 * units::pN},
        MeasurementPoint{137.3 * units::nm, 2.5 * units::pN},
    };
    return preset;
}

ExperimentPreset optimized_lateral_experiment() {
    ExperimentPreset preset;
    preset.config = gold_coated_bodies(
        CorrugationGeometry{90.0 * units::nm, 33.0 * units::nm, 200.0 * units::nm});
    preset.points = {
        MeasurementPoint{125.0 * units::nm, 1.11 * units::pN},
        MeasurementPoint{137.3 * units::nm, 0.47 * units::pN},
    };
    return preset;
}

}  // namespace yuklat
