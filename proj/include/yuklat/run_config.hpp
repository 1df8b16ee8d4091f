#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "yuklat/model.hpp"
#include "yuklat/optimizer.hpp"

namespace yuklat {

class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct LambdaGridSpec {
    double lo_nm = 1.0;
    double hi_nm = 100.0;
    int points = 200;
};

// Everything a run needs, read from one JSON file. Keys carry their units
// (a_nm, delta_f_pn, radius_um); the parser converts to SI at this boundary
// and rejects unknown keys.
struct RunConfig {
    ExperimentConfig experiment;
    std::vector<MeasurementPoint> measurements;
    LambdaGridSpec lambda_grid;
    std::vector<std::filesystem::path> reference_lines;
    std::filesystem::path output_dir = "out";
    std::optional<OptimizationProblem> optimization;
};

RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& json_text, const std::string& origin);

// The built-in optimized experiment rendered as a config file, used by
// `yuklat init` so a runnable example is one command away.
std::string default_config_json();

}  // namespace yuklat
