// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "ejm/cli.hpp"
#include "ejm/sweep.hpp"
#include "ejm/verify.hpp"

using namespace ejm;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

}  // namespace

TEST_CASE("uniform_grid: inclusive endpoints") {
    const std::vector<double> grid = uniform_grid(0.0, 1.0, 4);
    REQUIRE(grid.size() == 5);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 1.0);
    CHECK(grid[2] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("sweep: analytic extremes at theta = 0 match the closed forms") {
    SweepConfig config;
    config.theta_grid = {0.0};
    config.zeta_grid = uniform_grid(0.0, 2.0 * kPi, 629);
    const SweepResult result = sweep(config);
    REQUIRE(result.extremes.size() == 1);
    CHECK(std::abs(result.extremes[0].p_min - (2.0 - kSqrt3) / (2.0 + kSqrt2)) <= 1e-3);
    CHECK(std::abs(result.extremes[0].p_max - (2.0 - kSqrt3) / (2.0 - kSqrt2)) <= 1e-3);
}

TEST_CASE("sweep: every cell is exactly one at theta = pi/2") {
    SweepConfig config;
    config.theta_grid = {kPi / 2.0};
    config.zeta_grid = uniform_grid(0.0, 2.0 * kPi, 100);
    const SweepResult result = sweep(config);
    for (const SweepRow& row : result.rows) {
        CHECK(row.p_analytic == 1.0);
    }
}

TEST_CASE("sweep: row ordering, schema, and csv layout") {
    SweepConfig config;
    config.theta_grid = {0.0, 0.5};
    config.zeta_grid = {0.0, 1.0, 2.0};
    const SweepResult result = sweep(config);
    REQUIRE(result.rows.size() == 2 * 3 * 4);
    // ordered by (theta index, zeta index, branch)
    CHECK(result.rows[0].theta == 0.0);
    CHECK(result.rows[0].zeta == 0.0);
    CHECK(result.rows[0].branch == Branch::k00);
    CHECK(result.rows[3].branch == Branch::k11);
    CHECK(result.rows[4].zeta == 1.0);
    CHECK(result.rows[12].theta == 0.5);

    std::ostringstream os;
    write_csv(result, os);
    std::istringstream in(os.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "theta,zeta,branch,p_analytic,p_empirical,stderr");
    int rows = 0;
    while (std::getline(in, line)) {
        const std::vector<std::string> cells = split_csv_line(line);
        REQUIRE(cells.size() == 6);
        CHECK(cells[4].empty());  // no sampling requested
        CHECK(cells[5].empty());
        ++rows;
    }
    CHECK(rows == 24);
}

TEST_CASE("sweep: sampled estimates are reproducible and land near the analytic value") {
    SweepConfig config;
    config.theta_grid = {0.6};
    config.zeta_grid = uniform_grid(0.0, 2.0 * kPi, 8);
    config.shots = 3000;
    config.seed = 11;
    const SweepResult a = sweep(config);
    const SweepResult b = sweep(config);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        REQUIRE(a.rows[i].p_empirical.has_value());
        CHECK(*a.rows[i].p_empirical == *b.rows[i].p_empirical);
        CHECK(std::abs(*a.rows[i].p_empirical - a.rows[i].p_analytic) <=
              5.0 * std::max(*a.rows[i].stderr_, 1e-3));
    }
}

TEST_CASE("sweep: branch filter and file output") {
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "ejm_sweep_test.csv";
    SweepConfig config;
    config.theta_grid = {0.3};
    config.zeta_grid = {0.0, 0.5};
    config.branch = Branch::k10;
    config.output_path = path.string();
    const SweepResult result = sweep(config);
    CHECK(result.rows.size() == 2);
    for (const SweepRow& row : result.rows) CHECK(row.branch == Branch::k10);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "theta,zeta,branch,p_analytic,p_empirical,stderr");
    in.close();
    std::filesystem::remove(path);

    SweepConfig bad = config;
    bad.output_path = "/nonexistent-dir/never.csv";
    CHECK_THROWS_AS(sweep(bad), std::runtime_error);

    SweepConfig empty;
    CHECK_THROWS_AS(sweep(empty), std::invalid_argument);
    SweepConfig out_of_domain;
    out_of_domain.theta_grid = {2.0};
    out_of_domain.zeta_grid = {0.0};
    CHECK_THROWS_AS(sweep(out_of_domain), std::invalid_argument);
}

TEST_CASE("verify: all checks pass on a small grid") {
    VerifyOptions options;
    options.theta_grid_points = 12;
    options.seed = 3;
    const std::vector<CheckResult> results = run_all_checks(options);
    CHECK(results.size() >= 15);
    for (const CheckResult& r : results) {
        INFO(r.name, ": ", r.detail);
        CHECK(r.pass);
    }
}

TEST_CASE("cli: EJMSIM_SEED supplies the default seed; --seed overrides it") {
    setenv("EJMSIM_SEED", "424242", 1);
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    const int rc_env = run_cli({"teleport", "--theta", "0.8"});
    const std::string env_out = captured.str();
    captured.str("");
    const int rc_flag = run_cli({"teleport", "--theta", "0.8", "--seed", "9"});
    const std::string flag_out = captured.str();
    std::cout.rdbuf(old);
    unsetenv("EJMSIM_SEED");
    CHECK(rc_env == 0);
    CHECK(rc_flag == 0);
    CHECK(env_out.find("seed=424242") != std::string::npos);
    CHECK(flag_out.find("seed=9 ") != std::string::npos);

    setenv("EJMSIM_SEED", "not-a-number", 1);
    const int rc_bad = run_cli({"teleport", "--theta", "0.8"});
    unsetenv("EJMSIM_SEED");
    CHECK(rc_bad == 2);
}

TEST_CASE("cli: exit codes for success, usage error, and verification") {
    // usage errors
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"bogus"}) == 2);
    CHECK(run_cli({"teleport"}) == 2);           // missing required --theta
    CHECK(run_cli({"sweep", "--zeta-steps", "4"}) == 2);  // no theta choice

    // a passing run
    CHECK(run_cli({"teleport", "--theta", "1.5707963267948966", "--seed", "7"}) == 0);

    // export to stdout and sweep to a file
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "ejm_cli_sweep.csv";
    CHECK(run_cli({"sweep", "--theta", "0.2", "--zeta-steps", "16", "--out",
                   path.string()}) == 0);
    CHECK(std::filesystem::exists(path));
    std::filesystem::remove(path);
    CHECK(run_cli({"export", "--circuit", "ejm", "--theta", "0.4"}) == 0);
    CHECK(run_cli({"export", "--circuit", "correction", "--theta", "0.4", "--branch",
                   "10"}) == 0);
    // degenerate tetrahedron print path
    CHECK(run_cli({"basis", "--theta", "1.5707963267948966"}) == 0);
    // unwritable output is an I/O failure, not a usage error
    CHECK(run_cli({"sweep", "--theta", "0.2", "--zeta-steps", "4", "--out",
                   "/nonexistent-dir/x.csv"}) == 1);
}
