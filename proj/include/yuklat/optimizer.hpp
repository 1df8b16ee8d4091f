#pragma once

#include <string>
#include <vector>

#include "yuklat/model.hpp"

namespace yuklat {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool degenerate() const { return lo == hi; }
    double clamp(double v) const;
};

enum class ObjectiveKind {
    alpha_at_lambda,       // alpha_min at one target lambda
    log_integrated_alpha,  // mean of log(alpha_min) over a log-spaced window
};

// Search box over the corrugation amplitudes, the period and the separation.
// The error budget delta_F(a) is piecewise log-linear through the supplied
// measurement points and constant outside their span; no error model beyond
// the data is invented.
struct OptimizationProblem {
    Interval plate_amplitude_m;   // A1
    Interval sphere_amplitude_m;  // A2
    Interval period_m;
    Interval separation_m;
    double min_gap_m = 0.0;  // required clearance a - (A1 + A2)
    std::vector<MeasurementPoint> error_budget;
    bool require_imprint = true;  // A2 <= A1 (sphere corrugations are imprinted)

    ObjectiveKind objective = ObjectiveKind::alpha_at_lambda;
    double lambda_target_m = 0.0;
    double lambda_window_lo_m = 0.0;
    double lambda_window_hi_m = 0.0;
    int lambda_window_points = 33;

    int grid_points_per_axis = 12;
};

struct DesignPoint {
    double plate_amplitude_m = 0.0;
    double sphere_amplitude_m = 0.0;
    double period_m = 0.0;
    double separation_m = 0.0;
};

struct TraceEntry {
    DesignPoint point;
    double objective = 0.0;
    long evaluation = 0;  // evaluation count when this improvement was found
};

struct OptimizationResult {
    ExperimentConfig best_config;
    double best_separation_m = 0.0;
    double objective = 0.0;
    long evaluations = 0;
    std::vector<TraceEntry> trace;        // improving iterates, in order
    double best_scan_objective = 0.0;     // best value seen on the coarse grid
};

// delta_F at separation a under the piecewise log-linear budget model.
double error_budget_at(const std::vector<MeasurementPoint>& budget, double separation_m);

// Coarse grid scan followed by coordinate descent. Deterministic; the result
// is never worse than the best grid point. Throws std::invalid_argument when
// the feasible set is empty.
OptimizationResult optimize(const OptimizationProblem& problem,
                            const ExperimentConfig& config_template,
                            const PhysicalConstants& k = kConstants);

struct SensitivityEntry {
    std::string parameter;
    double dlog_alpha_dlog = 0.0;  // d log(alpha_min) / d log(parameter)
    double step_used = 0.0;        // relative step after feasibility shrinking
    double consistency = 0.0;      // relative gap between the h and h/2 estimates
};

// Central-difference log-derivatives of alpha_min at fixed lambda with respect
// to A1, A2, period, separation and delta_F (the latter is exactly 1).
std::vector<SensitivityEntry> sensitivity(const ExperimentConfig& config,
                                          const MeasurementPoint& point,
                                          double lambda_target_m,
                                          const PhysicalConstants& k = kConstants);

}  // namespace yuklat
