// SPDX-License-Identifier: Apache-2.0
#include "ejm/sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "ejm/rng.hpp"
#include "ejm/sim.hpp"
#include "ejm/teleport.hpp"

namespace ejm {

std::vector<double> uniform_grid(double lo, double hi, int steps) {
    if (steps < 1) throw std::invalid_argument("uniform_grid: steps must be >= 1");
    std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * (static_cast<double>(i) / steps);
    }
    grid.back() = hi;
    return grid;
}

namespace {

std::string fmt_double(double x) {
    std::array<char, 32> buf{};
    const auto res =
        std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

void validate(const SweepConfig& config) {
    if (config.theta_grid.empty() || config.zeta_grid.empty()) {
        throw std::invalid_argument("sweep: grids must be nonempty");
    }
    for (double t : config.theta_grid) {
        if (!(t >= 0.0 && t <= std::numbers::pi / 2.0 + 1e-12)) {
            throw std::invalid_argument("sweep: theta values must lie in [0, pi/2]");
        }
    }
    for (double z : config.zeta_grid) {
        if (!(z >= 0.0 && z <= 2.0 * std::numbers::pi + 1e-12)) {
            throw std::invalid_argument("sweep: zeta values must lie in [0, 2 pi]");
        }
    }
    if (config.shots && *config.shots < 1) {
        throw std::invalid_argument("sweep: shots must be >= 1");
    }
}

// Samples the kept/failed ancilla outcome of the correction circuit for one
// conditioned branch: the keep probability is evaluated exactly through the
// circuit once, then `shots` Bernoulli draws estimate it.
void estimate_cell(SweepRow& row, const InputState& input, long long shots,
                   SeedStream stream) {
    Register reg = Register::from_state(Vector::basis_state(8, 0b011));
    for (const GateSpec& g : preparation_circuit(input)) reg.apply(g);
    for (const GateSpec& g : ejm_circuit(row.theta)) reg.apply(g);
    const std::array<int, 2> sender{0, 1};
    const std::array<int, 2> outcome{branch_m1(row.branch), branch_m2(row.branch)};
    reg.project(sender, outcome);
    reg.renormalize();
    reg.append_qubit();

    const CorrectionPlan plan = correction_plan(row.theta, row.branch);
    const NonunitaryRealization realization = realize_nonunitary(plan.svd, row.theta, 2, 3);
    reg.apply(realization.pre_rotation);
    reg.apply(realization.controlled_step);
    const std::array<int, 1> ancilla{3};
    const std::array<int, 1> zero{0};
    const double keep = reg.outcome_probability(ancilla, zero);

    long long kept = 0;
    for (long long s = 0; s < shots; ++s) {
        if (stream.next_unit() < keep) ++kept;
    }
    const double hat = static_cast<double>(kept) / static_cast<double>(shots);
    row.p_empirical = hat;
    row.stderr_ = std::sqrt(hat * (1.0 - hat) / static_cast<double>(shots));
}

}  // namespace

SweepResult sweep(const SweepConfig& config) {
    validate(config);

    std::vector<Branch> branches;
    if (config.branch) {
        branches.push_back(*config.branch);
    } else {
        branches.assign(kAllBranches.begin(), kAllBranches.end());
    }

    const std::size_t nt = config.theta_grid.size();
    const std::size_t nz = config.zeta_grid.size();
    const std::size_t nb = branches.size();

    SweepResult result;
    result.rows.resize(nt * nz * nb);

    const SeedStream master(config.seed);
    const auto eval_theta = [&](std::size_t ti) {
        const double theta = config.theta_grid[ti];
        for (std::size_t zi = 0; zi < nz; ++zi) {
            const InputState input = InputState::from_angles(config.zeta_grid[zi], config.xi);
            for (std::size_t bi = 0; bi < nb; ++bi) {
                const std::size_t cell = (ti * nz + zi) * nb + bi;
                SweepRow& row = result.rows[cell];
                row.theta = theta;
                row.zeta = config.zeta_grid[zi];
                row.branch = branches[bi];
                row.p_analytic = success_probability(input, theta, row.branch);
                if (config.shots) {
                    estimate_cell(row, input, *config.shots, master.split(cell));
                }
            }
        }
    };

    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t n_workers = std::min<std::size_t>(nt, hw > 0 ? hw : 1);
    if (n_workers <= 1) {
        for (std::size_t ti = 0; ti < nt; ++ti) eval_theta(ti);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t ti = w; ti < nt; ti += n_workers) eval_theta(ti);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    result.extremes.reserve(nt);
    for (std::size_t ti = 0; ti < nt; ++ti) {
        ThetaExtremes ex;
        ex.theta = config.theta_grid[ti];
        ex.p_min = result.rows[ti * nz * nb].p_analytic;
        ex.p_max = ex.p_min;
        for (std::size_t k = 0; k < nz * nb; ++k) {
            const double p = result.rows[ti * nz * nb + k].p_analytic;
            ex.p_min = std::min(ex.p_min, p);
            ex.p_max = std::max(ex.p_max, p);
        }
        result.extremes.push_back(ex);
    }

    if (!config.output_path.empty()) {
        std::ofstream out(config.output_path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("sweep: cannot write '" + config.output_path + "'");
        }
        write_csv(result, out);
        if (!out) {
            throw std::runtime_error("sweep: write failed for '" + config.output_path + "'");
        }
    }
    return result;
}

void write_csv(const SweepResult& result, std::ostream& os) {
    os << "theta,zeta,branch,p_analytic,p_empirical,stderr\n";
    for (const SweepRow& row : result.rows) {
        os << fmt_double(row.theta) << ',' << fmt_double(row.zeta) << ','
           << branch_name(row.branch) << ',' << fmt_double(row.p_analytic) << ',';
        if (row.p_empirical) os << fmt_double(*row.p_empirical);
        os << ',';
        if (row.stderr_) os << fmt_double(*row.stderr_);
        os << '\n';
    }
}

}  // namespace ejm
