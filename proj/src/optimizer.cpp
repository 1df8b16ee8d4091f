#include "yuklat/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "yuklat/constraints.hpp"
#include "yuklat/force.hpp"

namespace yuklat {

namespace {

struct Evaluator {
    const OptimizationProblem& problem;
    const ExperimentConfig& config_template;
    const PhysicalConstants& constants;
    long evaluations = 0;

    ExperimentConfig config_for(const DesignPoint& d) const {
        ExperimentConfig config = config_template;
        config.corrugation = CorrugationGeometry{d.plate_amplitude_m,
                                                 d.sphere_amplitude_m, d.period_m};
        return config;
    }

    // rounding slack: a box specified with a - A1 - A2 exactly equal to the
    // gap must stay feasible even when the subtraction rounds a few ulp short
    double gap_tolerance() const { return 1e-12 * problem.separation_m.hi; }

    bool feasible(const DesignPoint& d) const {
        const auto in = [](const Interval& i, double v) {
            return v >= i.lo && v <= i.hi;
        };
        if (!in(problem.plate_amplitude_m, d.plate_amplitude_m)) return false;
        if (!in(problem.sphere_amplitude_m, d.sphere_amplitude_m)) return false;
        if (!in(problem.period_m, d.period_m)) return false;
        if (!in(problem.separation_m, d.separation_m)) return false;
        if (d.separation_m - d.plate_amplitude_m - d.sphere_amplitude_m <
            problem.min_gap_m - gap_tolerance()) {
            return false;
        }
        if (problem.require_imprint && d.sphere_amplitude_m > d.plate_amplitude_m) {
            return false;
        }
        return true;
    }

    double alpha_at(const ExperimentConfig& config, double separation,
                    double lambda) {
        const MeasurementPoint point{
            separation, error_budget_at(problem.error_budget, separation)};
        const auto bound = alpha_min(config, point, lambda, constants);
        return bound ? *bound : std::numeric_limits<double>::infinity();
    }

    double operator()(const DesignPoint& d) {
        ++evaluations;
        const ExperimentConfig config = config_for(d);
        if (problem.objective == ObjectiveKind::alpha_at_lambda) {
            return alpha_at(config, d.separation_m, problem.lambda_target_m);
        }
        const auto grid = log_grid(problem.lambda_window_lo_m,
                                   problem.lambda_window_hi_m,
                                   problem.lambda_window_points);
        double log_sum = 0.0;
        for (double lambda : grid) {
            log_sum += std::log(alpha_at(config, d.separation_m, lambda));
        }
        return std::exp(log_sum / static_cast<double>(grid.size()));
    }
};

std::vector<double> axis_grid(const Interval& interval, int n) {
    if (interval.degenerate() || n <= 1) return {interval.lo};
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = interval.lo + (interval.hi - interval.lo) * i / (n - 1);
    }
    return grid;
}

// Golden-section minimization seeded with an endpoint-inclusive scan; the
// objective can sit on a feasibility boundary, so endpoints matter.
double line_minimum(const std::function<double(double)>& f, double lo, double hi,
                    double* best_value) {
    constexpr int kSeed = 24;
    double best_x = lo;
    double best_f = f(lo);
    for (int i = 1; i < kSeed; ++i) {
        const double x = lo + (hi - lo) * i / (kSeed - 1);
        const double fx = f(x);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    }

    const double step = (hi - lo) / (kSeed - 1);
    double a = std::max(lo, best_x - step);
    double b = std::min(hi, best_x + step);
    constexpr double kInvGolden = 0.6180339887498949;
    double x1 = b - kInvGolden * (b - a);
    double x2 = a + kInvGolden * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int iter = 0; iter < 90 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++iter) {
        if (f1 > f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvGolden * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvGolden * (b - a);
            f1 = f(x1);
        }
    }
    const double mid = 0.5 * (a + b);
    const double f_mid = f(mid);
    if (f_mid < best_f) {
        best_f = f_mid;
        best_x = mid;
    }
    if (best_value) *best_value = best_f;
    return best_x;
}

}  // namespace

double Interval::clamp(double v) const { return std::min(std::max(v, lo), hi); }

double error_budget_at(const std::vector<MeasurementPoint>& budget, double separation_m) {
    if (budget.empty()) {
        throw std::invalid_argument("error_budget_at: no measurement points supplied");
    }
    std::vector<MeasurementPoint> sorted = budget;
    std::sort(sorted.begin(), sorted.end(),
              [](const MeasurementPoint& x, const MeasurementPoint& y) {
                  return x.separation_m < y.separation_m;
              });
    if (separation_m <= sorted.front().separation_m) return sorted.front().force_error_n;
    if (separation_m >= sorted.back().separation_m) return sorted.back().force_error_n;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (separation_m <= sorted[i].separation_m) {
            const auto& lo = sorted[i - 1];
            const auto& hi = sorted[i];
            const double t = (std::log(separation_m) - std::log(lo.separation_m)) /
                             (std::log(hi.separation_m) - std::log(lo.separation_m));
            return std::exp(std::log(lo.force_error_n) +
                            t * (std::log(hi.force_error_n) - std::log(lo.force_error_n)));
        }
    }
    return sorted.back().force_error_n;  // unreachable
}

OptimizationResult optimize(const OptimizationProblem& problem,
                            const ExperimentConfig& config_template,
                            const PhysicalConstants& k) {
    auto require_interval = [](const Interval& i, const char* name) {
        if (!(i.lo <= i.hi) || !(i.lo >= 0.0) || !std::isfinite(i.lo) ||
            !std::isfinite(i.hi)) {
            throw std::invalid_argument(std::string("optimize: bad interval for ") + name);
        }
    };
    require_interval(problem.plate_amplitude_m, "plate amplitude");
    require_interval(problem.sphere_amplitude_m, "sphere amplitude");
    require_interval(problem.period_m, "period");
    require_interval(problem.separation_m, "separation");
    if (!(problem.min_gap_m > 0.0)) {
        throw std::invalid_argument("optimize: min_gap must be positive");
    }
    if (problem.error_budget.empty()) {
        throw std::invalid_argument("optimize: need at least one measurement point");
    }
    if (problem.objective == ObjectiveKind::alpha_at_lambda &&
        !(problem.lambda_target_m > 0.0)) {
        throw std::invalid_argument("optimize: target lambda must be positive");
    }

    // The least demanding corner must be feasible, otherwise the box is empty.
    if (problem.separation_m.hi - problem.plate_amplitude_m.lo -
                problem.sphere_amplitude_m.lo <
            problem.min_gap_m - 1e-12 * problem.separation_m.hi ||
        (problem.require_imprint &&
         problem.sphere_amplitude_m.lo > problem.plate_amplitude_m.hi)) {
        throw std::invalid_argument("optimize: empty feasible set");
    }

    Evaluator evaluate{problem, config_template, k};
    OptimizationResult result;

    DesignPoint best{};
    double best_objective = std::numeric_limits<double>::infinity();
    auto consider = [&](const DesignPoint& d) {
        const double value = evaluate(d);
        if (value < best_objective) {
            best_objective = value;
            best = d;
            result.trace.push_back(TraceEntry{d, value, evaluate.evaluations});
        }
    };

    const int n = std::max(problem.grid_points_per_axis, 2);
    for (double a1 : axis_grid(problem.plate_amplitude_m, n)) {
        for (double a2 : axis_grid(problem.sphere_amplitude_m, n)) {
            for (double period : axis_grid(problem.period_m, n)) {
                for (double separation : axis_grid(problem.separation_m, n)) {
                    const DesignPoint d{a1, a2, period, separation};
                    if (evaluate.feasible(d)) consider(d);
                }
            }
        }
    }

    if (!std::isfinite(best_objective)) {
        // Grid may miss a thin feasible sliver; start from a constructed point.
        DesignPoint d;
        d.plate_amplitude_m = problem.plate_amplitude_m.lo;
        d.sphere_amplitude_m = problem.require_imprint
            ? std::min(problem.sphere_amplitude_m.lo, d.plate_amplitude_m)
            : problem.sphere_amplitude_m.lo;
        d.period_m = problem.period_m.lo;
        d.separation_m = problem.separation_m.clamp(
            d.plate_amplitude_m + d.sphere_amplitude_m + problem.min_gap_m);
        if (!evaluate.feasible(d)) {
            throw std::invalid_argument("optimize: no feasible point found");
        }
        consider(d);
    }
    result.best_scan_objective = best_objective;

    // Coordinate descent within the feasible slices.
    for (int sweep = 0; sweep < 100; ++sweep) {
        const double before = best_objective;
        for (int coordinate = 0; coordinate < 4; ++coordinate) {
            DesignPoint d = best;
            double lo = 0.0, hi = 0.0;
            switch (coordinate) {
                case 0:  // plate amplitude
                    lo = problem.plate_amplitude_m.lo;
                    hi = std::min(problem.plate_amplitude_m.hi,
                                  d.separation_m - d.sphere_amplitude_m - problem.min_gap_m);
                    if (problem.require_imprint) lo = std::max(lo, d.sphere_amplitude_m);
                    break;
                case 1:  // sphere amplitude
                    lo = problem.sphere_amplitude_m.lo;
                    hi = std::min(problem.sphere_amplitude_m.hi,
                                  d.separation_m - d.plate_amplitude_m - problem.min_gap_m);
                    if (problem.require_imprint) hi = std::min(hi, d.plate_amplitude_m);
                    break;
                case 2:  // period
                    lo = problem.period_m.lo;
                    hi = problem.period_m.hi;
                    break;
                case 3:  // separation
                    lo = std::max(problem.separation_m.lo,
                                  d.plate_amplitude_m + d.sphere_amplitude_m +
                                      problem.min_gap_m);
                    hi = problem.separation_m.hi;
                    break;
            }
            if (!(lo <= hi)) continue;
            if (lo == hi) continue;

            auto slice = [&](double v) {
                DesignPoint probe = best;
                switch (coordinate) {
                    case 0: probe.plate_amplitude_m = v; break;
                    case 1: probe.sphere_amplitude_m = v; break;
                    case 2: probe.period_m = v; break;
                    case 3: probe.separation_m = v; break;
                }
                return evaluate(probe);
            };
            double slice_best = 0.0;
            const double x = line_minimum(slice, lo, hi, &slice_best);
            if (slice_best < best_objective) {
                switch (coordinate) {
                    case 0: best.plate_amplitude_m = x; break;
                    case 1: best.sphere_amplitude_m = x; break;
                    case 2: best.period_m = x; break;
                    case 3: best.separation_m = x; break;
                }
                best_objective = slice_best;
                result.trace.push_back(TraceEntry{best, slice_best, evaluate.evaluations});
            }
        }
        if (before - best_objective <= 1e-6 * std::abs(before)) break;
    }

    result.best_config = evaluate.config_for(best);
    result.best_separation_m = best.separation_m;
    result.objective = best_objective;
    result.evaluations = evaluate.evaluations;
    return result;
}

std::vector<SensitivityEntry> sensitivity(const ExperimentConfig& config,
                                          const MeasurementPoint& point,
                                          double lambda_target_m,
                                          const PhysicalConstants& k) {
    const auto violations = validate(config, point);
    if (!violations.empty()) {
        throw std::invalid_argument("sensitivity: invalid inputs: " + violations.front());
    }

    auto log_alpha = [&](double a1, double a2, double period, double separation) {
        ExperimentConfig perturbed = config;
        perturbed.corrugation = CorrugationGeometry{a1, a2, period};
        const MeasurementPoint p{separation, point.force_error_n};
        const auto bound = alpha_min(perturbed, p, lambda_target_m, k);
        if (!bound) {
            throw std::domain_error("sensitivity: degenerate geometry, no signal");
        }
        return std::log(*bound);
    };

    const double a1 = config.corrugation.plate_amplitude_m;
    const double a2 = config.corrugation.sphere_amplitude_m;
    const double period = config.corrugation.period_m;
    const double separation = point.separation_m;

    auto feasible_with = [&](double na1, double na2, double nsep) {
        return nsep > na1 + na2;
    };

    std::vector<SensitivityEntry> table;
    const char* names[4] = {"plate_amplitude", "sphere_amplitude", "period", "separation"};
    for (int index = 0; index < 4; ++index) {
        auto at_scale = [&](double scale) {
            switch (index) {
                case 0: return log_alpha(a1 * scale, a2, period, separation);
                case 1: return log_alpha(a1, a2 * scale, period, separation);
                case 2: return log_alpha(a1, a2, period * scale, separation);
                default: return log_alpha(a1, a2, period, separation * scale);
            }
        };
        auto feasible_at = [&](double scale) {
            switch (index) {
                case 0: return feasible_with(a1 * scale, a2, separation);
                case 1: return feasible_with(a1, a2 * scale, separation);
                case 2: return true;
                default: return feasible_with(a1, a2, separation * scale);
            }
        };

        double h = 1e-3;
        while (h > 1e-7 && (!feasible_at(std::exp(h)) || !feasible_at(std::exp(-h)))) {
            h *= 0.5;  // step would leave the feasible region, shrink it
        }
        const auto central = [&](double step) {
            return (at_scale(std::exp(step)) - at_scale(std::exp(-step))) / (2.0 * step);
        };
        const double d_full = central(h);
        const double d_half = central(0.5 * h);
        SensitivityEntry entry;
        entry.parameter = names[index];
        entry.dlog_alpha_dlog = d_half;
        entry.step_used = h;
        entry.consistency =
            std::abs(d_full - d_half) / std::max(std::abs(d_half), 1e-300);
        table.push_back(entry);
    }

    // alpha_min is exactly linear in the error budget.
    table.push_back(SensitivityEntry{"delta_f", 1.0, 0.0, 0.0});
    return table;
}

}  // namespace yuklat
