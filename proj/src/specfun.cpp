#include "yuklat/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace yuklat {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Below the crossover the defining power series is summed directly (all terms
// positive, no cancellation); above it the asymptotic expansion of the scaled
// function is truncated at its smallest term. The optimally truncated
// asymptotic error behaves like e^{-2z}, so the crossover must sit high
// enough that e^{-2z} clears the 1e-12 accuracy target with margin.
constexpr double kSeriesAsymptoticCrossover = 18.0;

double bessel_series_scaled(int order, double z) {
    // e^{-z} * sum_k (z/2)^{2k+n} / (k! (k+n)!)
    const double q = 0.25 * z * z;
    double term = (order == 0) ? 1.0 : 0.5 * z;
    double sum = term;
    for (int k = 1; k < 600; ++k) {
        term *= q / (static_cast<double>(k) * (k + order));
        sum += term;
        if (term < kEps * sum) break;
    }
    return std::exp(-z) * sum;
}

double bessel_asymptotic_scaled(int order, double z) {
    // e^{-z} I_n(z) ~ (2 pi z)^{-1/2} sum_k (-1)^k a_k(n) / z^k with
    // a_k(n) = prod_{j=1..k} (4n^2 - (2j-1)^2) / (k! 8^k); truncate at the
    // smallest term.
    const double mu = 4.0 * order * order;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (odd * odd - mu) / (8.0 * k * z);
        if (std::abs(next) >= std::abs(term)) break;
        sum += next;
        term = next;
        if (std::abs(next) < kEps * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

}  // namespace

double bessel_i_scaled(int order, double z) {
    if (order != 0 && order != 1) {
        throw std::domain_error("bessel_i_scaled: order must be 0 or 1");
    }
    if (!(z >= 0.0)) {
        throw std::domain_error("bessel_i_scaled: argument must be >= 0");
    }
    if (z <= kSeriesAsymptoticCrossover) return bessel_series_scaled(order, z);
    return bessel_asymptotic_scaled(order, z);
}

double phi_kernel(double x_m, double lambda_m) {
    if (!(x_m >= 0.0)) {
        throw std::domain_error("phi_kernel: radius must be >= 0");
    }
    if (!(lambda_m > 0.0)) {
        throw std::domain_error("phi_kernel: interaction range must be positive");
    }

    const double t = 2.0 * x_m / lambda_m;
    if (t < 1.0) {
        // x - lambda + (x + lambda) e^{-2x/lambda}
        //   = lambda * sum_{k>=3} (-1)^k (2 - k) / (2 k!) t^k,  t = 2x/lambda.
        // Leading term 2x^3 / (3 lambda^2); the direct form loses ~t^-3 digits.
        double factorial = 6.0;  // 3!
        double power = t * t * t;
        double sum = 0.0;
        for (int k = 3; k < 80; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            const double term = sign * (2.0 - k) / (2.0 * factorial) * power;
            sum += term;
            if (std::abs(term) < kEps * std::abs(sum)) break;
            power *= t;
            factorial *= k + 1;
        }
        return lambda_m * sum;
    }
    return x_m - lambda_m + (x_m + lambda_m) * std::exp(-t);
}

double plate_structure_factor(const LayeredPlate& plate, double lambda_m) {
    const double rho_coat = plate.coating.density_kg_m3;
    const double rho_sub = plate.substrate.density_kg_m3;
    return rho_coat -
           (rho_coat - rho_sub) * std::exp(-plate.coating_thickness_m / lambda_m);
}

double sphere_structure_factor(const LayeredSphere& sphere, double lambda_m) {
    const std::size_t n = sphere.shells.size();
    if (n == 0) {
        return sphere.core.density_kg_m3 * phi_kernel(sphere.radius_m, lambda_m);
    }

    double value =
        sphere.shells.back().material.density_kg_m3 * phi_kernel(sphere.radius_m, lambda_m);

    // Walk the shell boundaries inward; each interface radius x_j carries the
    // density step across it, attenuated by its depth below the outer surface.
    double boundary_radius = sphere.radius_m;
    for (std::size_t j = n; j-- > 0;) {
        boundary_radius -= sphere.shells[j].thickness_m;
        const double outer_density = sphere.shells[j].material.density_kg_m3;
        const double inner_density =
            (j == 0) ? sphere.core.density_kg_m3 : sphere.shells[j - 1].material.density_kg_m3;
        const double depth = sphere.radius_m - boundary_radius;
        value -= (outer_density - inner_density) * phi_kernel(boundary_radius, lambda_m) *
                 std::exp(-depth / lambda_m);
    }
    return value;
}

double psi_factor(const ExperimentConfig& config, double lambda_m) {
    if (!(lambda_m > 0.0)) {
        throw std::domain_error("psi_factor: interaction range must be positive");
    }
    const auto violations = validate(config);
    if (!violations.empty()) {
        throw std::invalid_argument("psi_factor: invalid config: " + violations.front());
    }
    return plate_structure_factor(config.plate, lambda_m) *
           sphere_structure_factor(config.sphere, lambda_m);
}

}  // namespace yuklat
