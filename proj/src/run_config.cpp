#include "yuklat/run_config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace yuklat {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
    throw ConfigError(origin + ": " + message);
}

void require_keys(const json& object, const std::string& origin, const std::string& where,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
    if (!object.is_object()) fail(origin, where + " must be an object");
    for (const auto& [key, value] : object.items()) {
        if (!required.count(key) && !optional.count(key)) {
            fail(origin, where + ": unknown key '" + key + "'");
        }
    }
    for (const auto& key : required) {
        if (!object.contains(key)) {
            fail(origin, where + ": missing key '" + key + "'");
        }
    }
}

double number_at(const json& object, const std::string& origin, const std::string& where,
                 const std::string& key) {
    const auto& v = object.at(key);
    if (!v.is_number()) fail(origin, where + "." + key + " must be a number");
    return v.get<double>();
}

std::string string_at(const json& object, const std::string& origin,
                      const std::string& where, const std::string& key) {
    const auto& v = object.at(key);
    if (!v.is_string()) fail(origin, where + "." + key + " must be a string");
    return v.get<std::string>();
}

Interval interval_nm_at(const json& object, const std::string& origin,
                        const std::string& where, const std::string& key) {
    const auto& v = object.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(origin, where + "." + key + " must be [lo, hi] in nm");
    }
    return Interval{v[0].get<double>() * units::nm, v[1].get<double>() * units::nm};
}

Material material_lookup(const std::map<std::string, Material>& materials,
                         const std::string& origin, const std::string& where,
                         const std::string& name) {
    const auto found = materials.find(name);
    if (found == materials.end()) {
        fail(origin, where + ": material '" + name + "' is not in the materials table");
    }
    return found->second;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::string& origin) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("not valid JSON: ") + e.what());
    }

    require_keys(root, origin, "config",
                 {"materials", "sphere", "plate", "corrugation", "measurements"},
                 {"lambda_grid_nm", "reference_lines", "output_dir", "optimization"});

    RunConfig run;

    // materials table
    std::map<std::string, Material> materials;
    const auto& materials_json = root.at("materials");
    if (!materials_json.is_object() || materials_json.empty()) {
        fail(origin, "materials must be a non-empty object");
    }
    for (const auto& [name, body] : materials_json.items()) {
        require_keys(body, origin, "materials." + name, {"density_kg_m3"});
        materials.emplace(name,
                          Material{name, number_at(body, origin, "materials." + name,
                                                   "density_kg_m3")});
    }

    // sphere
    const auto& sphere_json = root.at("sphere");
    require_keys(sphere_json, origin, "sphere", {"radius_um", "core", "shells"});
    LayeredSphere sphere;
    sphere.radius_m = number_at(sphere_json, origin, "sphere", "radius_um") * units::um;
    sphere.core = material_lookup(materials, origin, "sphere.core",
                                  string_at(sphere_json, origin, "sphere", "core"));
    const auto& shells_json = sphere_json.at("shells");
    if (!shells_json.is_array()) fail(origin, "sphere.shells must be an array");
    for (std::size_t i = 0; i < shells_json.size(); ++i) {
        const std::string where = "sphere.shells[" + std::to_string(i) + "]";
        require_keys(shells_json[i], origin, where, {"material", "thickness_nm"});
        sphere.shells.push_back(SphereShell{
            material_lookup(materials, origin, where,
                            string_at(shells_json[i], origin, where, "material")),
            number_at(shells_json[i], origin, where, "thickness_nm") * units::nm});
    }
    run.experiment.sphere = sphere;

    // plate
    const auto& plate_json = root.at("plate");
    require_keys(plate_json, origin, "plate",
                 {"substrate", "coating", "coating_thickness_nm"});
    run.experiment.plate = LayeredPlate{
        material_lookup(materials, origin, "plate.substrate",
                        string_at(plate_json, origin, "plate", "substrate")),
        material_lookup(materials, origin, "plate.coating",
                        string_at(plate_json, origin, "plate", "coating")),
        number_at(plate_json, origin, "plate", "coating_thickness_nm") * units::nm};

    // corrugation
    const auto& corr_json = root.at("corrugation");
    require_keys(corr_json, origin, "corrugation",
                 {"plate_amplitude_nm", "sphere_amplitude_nm", "period_nm"});
    run.experiment.corrugation = CorrugationGeometry{
        number_at(corr_json, origin, "corrugation", "plate_amplitude_nm") * units::nm,
        number_at(corr_json, origin, "corrugation", "sphere_amplitude_nm") * units::nm,
        number_at(corr_json, origin, "corrugation", "period_nm") * units::nm};

    // measurements
    const auto& measurements_json = root.at("measurements");
    if (!measurements_json.is_array() || measurements_json.empty()) {
        fail(origin, "measurements must be a non-empty array");
    }
    for (std::size_t i = 0; i < measurements_json.size(); ++i) {
        const std::string where = "measurements[" + std::to_string(i) + "]";
        require_keys(measurements_json[i], origin, where, {"a_nm", "delta_f_pn"});
        run.measurements.push_back(MeasurementPoint{
            number_at(measurements_json[i], origin, where, "a_nm") * units::nm,
            number_at(measurements_json[i], origin, where, "delta_f_pn") * units::pN});
    }

    // lambda grid
    if (root.contains("lambda_grid_nm")) {
        const auto& grid_json = root.at("lambda_grid_nm");
        require_keys(grid_json, origin, "lambda_grid_nm", {"lo", "hi", "points"});
        run.lambda_grid.lo_nm = number_at(grid_json, origin, "lambda_grid_nm", "lo");
        run.lambda_grid.hi_nm = number_at(grid_json, origin, "lambda_grid_nm", "hi");
        const auto& points = grid_json.at("points");
        if (!points.is_number_integer() || points.get<int>() < 1) {
            fail(origin, "lambda_grid_nm.points must be a positive integer");
        }
        run.lambda_grid.points = points.get<int>();
        if (!(run.lambda_grid.lo_nm > 0.0) ||
            !(run.lambda_grid.hi_nm >= run.lambda_grid.lo_nm)) {
            fail(origin, "lambda_grid_nm needs 0 < lo <= hi");
        }
    }

    // reference lines
    if (root.contains("reference_lines")) {
        const auto& refs = root.at("reference_lines");
        if (!refs.is_array()) fail(origin, "reference_lines must be an array of paths");
        for (const auto& entry : refs) {
            if (!entry.is_string()) fail(origin, "reference_lines entries must be strings");
            run.reference_lines.emplace_back(entry.get<std::string>());
        }
    }

    if (root.contains("output_dir")) {
        run.output_dir = string_at(root, origin, "config", "output_dir");
    }

    // optimization block
    if (root.contains("optimization")) {
        const auto& opt_json = root.at("optimization");
        require_keys(opt_json, origin, "optimization",
                     {"a1_nm", "a2_nm", "period_nm", "a_nm", "min_gap_nm", "objective"},
                     {"lambda_nm", "lambda_window_nm", "require_imprint",
                      "grid_points_per_axis"});
        OptimizationProblem problem;
        problem.plate_amplitude_m = interval_nm_at(opt_json, origin, "optimization", "a1_nm");
        problem.sphere_amplitude_m = interval_nm_at(opt_json, origin, "optimization", "a2_nm");
        problem.period_m = interval_nm_at(opt_json, origin, "optimization", "period_nm");
        problem.separation_m = interval_nm_at(opt_json, origin, "optimization", "a_nm");
        problem.min_gap_m =
            number_at(opt_json, origin, "optimization", "min_gap_nm") * units::nm;
        problem.error_budget = run.measurements;
        if (opt_json.contains("require_imprint")) {
            const auto& flag = opt_json.at("require_imprint");
            if (!flag.is_boolean()) fail(origin, "optimization.require_imprint must be a bool");
            problem.require_imprint = flag.get<bool>();
        }
        if (opt_json.contains("grid_points_per_axis")) {
            const auto& points = opt_json.at("grid_points_per_axis");
            if (!points.is_number_integer() || points.get<int>() < 2) {
                fail(origin, "optimization.grid_points_per_axis must be an integer >= 2");
            }
            problem.grid_points_per_axis = points.get<int>();
        }

        const std::string objective = string_at(opt_json, origin, "optimization", "objective");
        if (objective == "alpha_at") {
            problem.objective = ObjectiveKind::alpha_at_lambda;
            if (!opt_json.contains("lambda_nm")) {
                fail(origin, "optimization: objective 'alpha_at' needs lambda_nm");
            }
            problem.lambda_target_m =
                number_at(opt_json, origin, "optimization", "lambda_nm") * units::nm;
        } else if (objective == "log_integrated") {
            problem.objective = ObjectiveKind::log_integrated_alpha;
            if (!opt_json.contains("lambda_window_nm")) {
                fail(origin, "optimization: objective 'log_integrated' needs lambda_window_nm");
            }
            const Interval window =
                interval_nm_at(opt_json, origin, "optimization", "lambda_window_nm");
            problem.lambda_window_lo_m = window.lo;
            problem.lambda_window_hi_m = window.hi;
        } else {
            fail(origin, "optimization.objective must be 'alpha_at' or 'log_integrated'");
        }
        run.optimization = problem;
    }

    // the parsed experiment must at least be self-consistent
    const auto violations = validate(run.experiment);
    if (!violations.empty()) {
        fail(origin, "invalid experiment: " + violations.front());
    }
    return run;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str(), path.string());
}

std::string default_config_json() {
    return R"({
  "materials": {
    "polystyrene": {"density_kg_m3": 1060.0},
    "chromium": {"density_kg_m3": 7140.0},
    "gold": {"density_kg_m3": 19280.0},
    "hard epoxy": {"density_kg_m3": 1080.0}
  },
  "sphere": {
    "radius_um": 97.0,
    "core": "polystyrene",
    "shells": [
      {"material": "chromium", "thickness_nm": 10.0},
      {"material": "gold", "thickness_nm": 50.0}
    ]
  },
  "plate": {
    "substrate": "hard epoxy",
    "coating": "gold",
    "coating_thickness_nm": 300.0
  },
  "corrugation": {
    "plate_amplitude_nm": 90.0,
    "sphere_amplitude_nm": 33.0,
    "period_nm": 200.0
  },
  "measurements": [
    {"a_nm": 125.0, "delta_f_pn": 1.11},
    {"a_nm": 137.3, "delta_f_pn": 0.47}
  ],
  "lambda_grid_nm": {"lo": 1.0, "hi": 100.0, "points": 200},
  "output_dir": "out"
}
)";
}

}  // namespace yuklat
