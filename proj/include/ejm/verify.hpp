// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ejm {

struct VerifyOptions {
    int theta_grid_points = 50;  // uniform grid on [0, pi/2], endpoints included
    std::uint64_t seed = 0;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // worst observed deviation or a short failure note
};

/// Runs every library invariant (linear algebra, gate identities, basis
/// structure, protocol formulas, simulator consistency) and reports one
/// result per check.
std::vector<CheckResult> run_all_checks(const VerifyOptions& options);

}  // namespace ejm
