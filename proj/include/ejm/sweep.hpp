// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ejm/basis.hpp"

namespace ejm {

/// Grid experiment over measurement parameter theta and input angle zeta
/// (the input family cos(zeta/2)|0> + e^{i xi} sin(zeta/2)|1>).
struct SweepConfig {
    std::vector<double> theta_grid;          // values in [0, pi/2]
    std::vector<double> zeta_grid;           // values in [0, 2 pi]
    double xi = 0.0;
    std::optional<Branch> branch;            // default: all four outcomes
    std::optional<long long> shots;          // adds sampled estimates when set
    std::uint64_t seed = 0;
    std::string output_path;                 // empty: compute only
};

/// Uniform inclusive grid helpers: `steps` intervals, steps + 1 points.
std::vector<double> uniform_grid(double lo, double hi, int steps);

struct SweepRow {
    double theta = 0.0;
    double zeta = 0.0;
    Branch branch = Branch::k00;
    double p_analytic = 0.0;
    std::optional<double> p_empirical;
    std::optional<double> stderr_;
};

struct ThetaExtremes {
    double theta = 0.0;
    double p_min = 0.0;
    double p_max = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;        // ordered by (theta idx, zeta idx, branch)
    std::vector<ThetaExtremes> extremes;
};

/// Evaluates the grid (cells run concurrently; row order and sampled values
/// are independent of the schedule) and writes the CSV when output_path is
/// set. Throws std::runtime_error when the path cannot be written.
SweepResult sweep(const SweepConfig& config);

/// Fixed schema: theta,zeta,branch,p_analytic,p_empirical,stderr with empty
/// sampling cells when no shots were requested. UTF-8, LF line endings.
void write_csv(const SweepResult& result, std::ostream& os);

}  // namespace ejm
