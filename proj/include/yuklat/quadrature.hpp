#pragma once

#include <functional>

namespace yuklat {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod 7-15 on [a, b]: globally adaptive bisection of the
// interval with the largest local error estimate, stopping when the summed
// estimate drops below max(abs_tol, rel_tol * |integral|).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-10, double abs_tol = 1e-300,
                           int max_intervals = 4096);

}  // namespace yuklat
