#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "yuklat/constraints.hpp"
#include "yuklat/model.hpp"
#include "yuklat/optimizer.hpp"

using namespace yuklat;

namespace {

const ExperimentPreset kProposed = optimized_lateral_experiment();

OptimizationProblem published_box() {
    OptimizationProblem problem;
    problem.plate_amplitude_m = {40e-9, 95e-9};
    problem.sphere_amplitude_m = {10e-9, 40e-9};
    problem.period_m = {150e-9, 600e-9};
    problem.separation_m = {125e-9, 125e-9};
    problem.min_gap_m = 2e-9;
    problem.error_budget = {MeasurementPoint{125e-9, 1.11e-12}};
    problem.objective = ObjectiveKind::alpha_at_lambda;
    problem.lambda_target_m = 19e-9;
    return problem;
}

OptimizationProblem degenerate_box() {
    OptimizationProblem problem = published_box();
    problem.plate_amplitude_m = {90e-9, 90e-9};
    problem.sphere_amplitude_m = {33e-9, 33e-9};
    problem.period_m = {200e-9, 200e-9};
    problem.separation_m = {125e-9, 125e-9};
    return problem;
}

}  // namespace

TEST_CASE("error budget model interpolates log-linearly and clamps outside") {
    const std::vector<MeasurementPoint> budget{{125e-9, 1.11e-12}, {137.3e-9, 0.47e-12}};
    CHECK(error_budget_at(budget, 125e-9) == 1.11e-12);
    CHECK(error_budget_at(budget, 137.3e-9) == 0.47e-12);
    CHECK(error_budget_at(budget, 100e-9) == 1.11e-12);   // constant below
    CHECK(error_budget_at(budget, 200e-9) == 0.47e-12);   // constant above
    // log-log midpoint
    const double mid = std::sqrt(125e-9 * 137.3e-9);
    CHECK(error_budget_at(budget, mid) ==
          doctest::Approx(std::sqrt(1.11e-12 * 0.47e-12)).epsilon(1e-13));
    CHECK_THROWS_AS(error_budget_at({}, 125e-9), std::invalid_argument);
}

TEST_CASE("degenerate box echoes the input design") {
    const auto result = optimize(degenerate_box(), kProposed.config);
    CHECK(result.best_config.corrugation.plate_amplitude_m == 90e-9);
    CHECK(result.best_config.corrugation.sphere_amplitude_m == 33e-9);
    CHECK(result.best_config.corrugation.period_m == 200e-9);
    CHECK(result.best_separation_m == 125e-9);

    // objective equals the constraints-module value for the same inputs
    const auto direct =
        alpha_min(kProposed.config, MeasurementPoint{125e-9, 1.11e-12}, 19e-9);
    CHECK(result.objective == doctest::Approx(*direct).epsilon(1e-12));
}

TEST_CASE("optimizer beats or ties the published design inside the box") {
    const auto result = optimize(published_box(), kProposed.config);
    const auto published_objective =
        alpha_min(kProposed.config, MeasurementPoint{125e-9, 1.11e-12}, 19e-9);
    CHECK(result.objective <= *published_objective);
    CHECK(result.objective <= result.best_scan_objective);

    // result respects every box bound and the clearance constraint
    const auto& corr = result.best_config.corrugation;
    CHECK(corr.plate_amplitude_m >= 40e-9);
    CHECK(corr.plate_amplitude_m <= 95e-9);
    CHECK(corr.sphere_amplitude_m >= 10e-9);
    CHECK(corr.sphere_amplitude_m <= 40e-9);
    CHECK(corr.period_m >= 150e-9);
    CHECK(corr.period_m <= 600e-9);
    CHECK(corr.sphere_amplitude_m <= corr.plate_amplitude_m);  // imprint rule
    CHECK(result.best_separation_m - corr.plate_amplitude_m - corr.sphere_amplitude_m >=
          2e-9 * (1.0 - 1e-12));
}

TEST_CASE("optimizer result is reproducible bit for bit") {
    const auto first = optimize(published_box(), kProposed.config);
    const auto second = optimize(published_box(), kProposed.config);
    CHECK(first.objective == second.objective);
    CHECK(first.best_config.corrugation.plate_amplitude_m ==
          second.best_config.corrugation.plate_amplitude_m);
    CHECK(first.best_config.corrugation.sphere_amplitude_m ==
          second.best_config.corrugation.sphere_amplitude_m);
    CHECK(first.best_config.corrugation.period_m ==
          second.best_config.corrugation.period_m);
    CHECK(first.best_separation_m == second.best_separation_m);
    CHECK(first.evaluations == second.evaluations);
    REQUIRE_FALSE(first.trace.empty());
    CHECK(first.trace.size() == second.trace.size());
    // trace is improving
    for (std::size_t i = 1; i < first.trace.size(); ++i) {
        CHECK(first.trace[i].objective < first.trace[i - 1].objective);
    }
    // re-evaluating the returned point reproduces the objective
    OptimizationProblem echo = published_box();
    echo.plate_amplitude_m = {first.best_config.corrugation.plate_amplitude_m,
                              first.best_config.corrugation.plate_amplitude_m};
    echo.sphere_amplitude_m = {first.best_config.corrugation.sphere_amplitude_m,
                               first.best_config.corrugation.sphere_amplitude_m};
    echo.period_m = {first.best_config.corrugation.period_m,
                     first.best_config.corrugation.period_m};
    echo.separation_m = {first.best_separation_m, first.best_separation_m};
    const auto echoed = optimize(echo, kProposed.config);
    CHECK(echoed.objective == doctest::Approx(first.objective).epsilon(1e-12));
}

TEST_CASE("widening the sphere-amplitude interval never hurts") {
    OptimizationProblem narrow = published_box();
    narrow.sphere_amplitude_m = {10e-9, 25e-9};
    OptimizationProblem wide = published_box();
    wide.sphere_amplitude_m = {10e-9, 40e-9};
    const auto narrow_result = optimize(narrow, kProposed.config);
    const auto wide_result = optimize(wide, kProposed.config);
    CHECK(wide_result.objective <= narrow_result.objective * (1.0 + 1e-12));
}

TEST_CASE("infeasible boxes are rejected") {
    OptimizationProblem no_room = published_box();
    no_room.separation_m = {30e-9, 45e-9};  // cannot clear A1 + A2 + gap (>= 52 nm)
    CHECK_THROWS_AS(optimize(no_room, kProposed.config), std::invalid_argument);

    OptimizationProblem bad_gap = published_box();
    bad_gap.min_gap_m = 0.0;
    CHECK_THROWS_AS(optimize(bad_gap, kProposed.config), std::invalid_argument);

    OptimizationProblem no_budget = published_box();
    no_budget.error_budget.clear();
    CHECK_THROWS_AS(optimize(no_budget, kProposed.config), std::invalid_argument);
}

TEST_CASE("log-integrated objective runs and is reproducible") {
    OptimizationProblem problem = degenerate_box();
    problem.objective = ObjectiveKind::log_integrated_alpha;
    problem.lambda_window_lo_m = 4.5e-9;
    problem.lambda_window_hi_m = 37e-9;
    problem.lambda_window_points = 9;
    const auto first = optimize(problem, kProposed.config);
    const auto second = optimize(problem, kProposed.config);
    CHECK(first.objective == second.objective);
    CHECK(first.objective > 0.0);
}

TEST_CASE("sensitivity table at the optimized design (frozen)") {
    const auto table = sensitivity(kProposed.config, kProposed.points[0], 19e-9);
    REQUIRE(table.size() == 5);

    for (const auto& row : table) {
        CHECK(row.consistency <= 0.01);  // antisymmetric-step agreement
    }

    CHECK(table[0].parameter == "plate_amplitude");
    CHECK(table[0].dlog_alpha_dlog == doctest::Approx(-4.517778).epsilon(1e-4));
    CHECK(table[1].parameter == "sphere_amplitude");
    CHECK(table[1].dlog_alpha_dlog == doctest::Approx(-2.044883).epsilon(1e-4));

    // the period enters only through the 1/Lambda prefactor: exactly +1
    CHECK(table[2].parameter == "period");
    CHECK(table[2].dlog_alpha_dlog == doctest::Approx(1.0).epsilon(1e-6));

    // e^{-a/lambda} dominates the separation derivative: a / lambda
    CHECK(table[3].parameter == "separation");
    CHECK(table[3].dlog_alpha_dlog > 0.0);
    CHECK(table[3].dlog_alpha_dlog == doctest::Approx(125.0 / 19.0).epsilon(1e-5));

    // alpha_min is exactly linear in the budget
    CHECK(table[4].parameter == "delta_f");
    CHECK(table[4].dlog_alpha_dlog == 1.0);
}

TEST_CASE("sensitivity shrinks steps that would leave the feasible region") {
    // separation barely above contact: the 1e-3 relative step would collide
    const MeasurementPoint tight{123.05e-9, 1e-12};
    const auto table = sensitivity(kProposed.config, tight, 19e-9);
    const auto& separation_row = table[3];
    CHECK(separation_row.step_used < 1e-3);
    CHECK(separation_row.step_used > 0.0);
    CHECK(separation_row.consistency <= 0.01);
}
