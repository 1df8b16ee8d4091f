#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "yuklat/model.hpp"

namespace yuklat {

// Two sets of constraint lines cannot be compared (disjoint spans, etc.).
class DataCompatibilityError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct ConstraintPoint {
    double lambda_m = 0.0;
    double alpha = 0.0;
};

enum class Provenance { computed, ingested };

// Sampled exclusion boundary alpha_min(lambda); the region above the line is
// excluded. Points are strictly increasing in lambda, all values positive,
// at least two points.
struct ConstraintLine {
    std::string label;
    std::vector<ConstraintPoint> points;
    Provenance provenance = Provenance::computed;

    double lambda_min_m() const { return points.front().lambda_m; }
    double lambda_max_m() const { return points.back().lambda_m; }
};

// Throws std::invalid_argument when the line violates its invariants.
void require_valid_line(const ConstraintLine& line);

// Smallest |alpha| excluded at this lambda by one measurement:
// alpha_min = delta_F / |F_max(alpha = 1)|. Empty when the geometry produces
// no signal (A1 A2 = 0), in which case no alpha is constrained.
std::optional<double> alpha_min(const ExperimentConfig& config,
                                const MeasurementPoint& point, double lambda_m,
                                const PhysicalConstants& k = kConstants);

// n log-spaced values covering [lo, hi], endpoints exact.
std::vector<double> log_grid(double lo, double hi, int n);

// Exclusion curve over the grid: at each lambda the best (smallest) alpha_min
// over all measurement points wins.
ConstraintLine exclusion_curve(const ExperimentConfig& config,
                               const std::vector<MeasurementPoint>& points,
                               const std::vector<double>& lambda_grid,
                               const PhysicalConstants& k = kConstants);

// Log-log linear interpolation, exact at the knots. Throws std::domain_error
// outside the line's span; no extrapolation.
double interpolate_alpha(const ConstraintLine& line, double lambda_m);

struct StrengtheningReport {
    std::vector<double> lambda_grid_m;
    std::vector<double> ratio;  // min over references of ref / candidate
    bool has_window = false;    // widest contiguous interval with ratio > 1
    double window_lo_m = 0.0;
    double window_hi_m = 0.0;
    double max_ratio = 0.0;
    double argmax_lambda_m = 0.0;
};

// Ratio of the weakest reference to the candidate across the common span,
// restricted to grid points every line covers. Throws DataCompatibilityError
// when the spans do not overlap.
StrengtheningReport compare(const ConstraintLine& candidate,
                            const std::vector<ConstraintLine>& references,
                            const std::vector<double>& lambda_grid);

// CSV persistence: header "lambda_m,alpha", one point per row, '#' comments,
// shortest round-trip decimal printing, atomic replace on save.
ConstraintLine load_line(const std::filesystem::path& path);
void save_line(const ConstraintLine& line, const std::filesystem::path& path);

}  // namespace yuklat
