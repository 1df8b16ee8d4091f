#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "yuklat/constants.hpp"

namespace yuklat {

struct CheckResult {
    std::string name;
    double gap = 0.0;        // worst observed deviation
    double tolerance = 0.0;  // documented bound for this check
    bool pass = false;
};

struct VerifyOptions {
    bool quick = false;             // Bessel z <= 30 and trivial-limit subset only
    double psi_perturbation = 1.0;  // test hook: scales the analytic energy when != 1
    std::uint64_t seed = 20250808;  // for the randomized consistency points
};

// Runs every oracle cross-check at its documented tolerance.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {},
                                          const PhysicalConstants& k = kConstants);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace yuklat
