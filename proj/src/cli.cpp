// SPDX-License-Identifier: Apache-2.0
#include "ejm/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ejm/basis.hpp"
#include "ejm/qasm.hpp"
#include "ejm/sim.hpp"
#include "ejm/sweep.hpp"
#include "ejm/teleport.hpp"
#include "ejm/verify.hpp"

namespace ejm {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

std::string fmt(Complex z) {
    std::ostringstream os;
    os << fmt(z.real()) << (z.imag() < 0.0 ? "" : "+") << fmt(z.imag()) << "i";
    return os.str();
}

std::uint64_t default_seed() {
    const char* env = std::getenv("EJMSIM_SEED");
    if (env == nullptr || *env == '\0') return 0;
    std::uint64_t value = 0;
    const std::string s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw CLI::ValidationError("EJMSIM_SEED", "not an unsigned integer: '" + s + "'");
    }
    return value;
}

Branch parse_branch(const std::string& name) {
    for (Branch b : kAllBranches) {
        if (branch_name(b) == name) return b;
    }
    throw CLI::ValidationError("--branch", "must be one of 00, 01, 10, 11");
}

int cmd_teleport(double theta, double zeta, double xi, std::uint64_t seed) {
    const InputState input = InputState::from_angles(zeta, xi);
    const RunRecord rec = run_teleportation(input, theta, seed);
    std::cout << "seed=" << rec.seed << " theta=" << fmt(rec.theta) << " zeta="
              << fmt(rec.zeta) << " xi=" << fmt(rec.xi) << "\n";
    std::cout << "branch=" << rec.m1 << rec.m2 << " p_branch=" << fmt(rec.branch_probability)
              << " keep_probability=" << fmt(rec.keep_probability) << "\n";
    std::cout << "ancilla=" << rec.ancilla_outcome << " success="
              << (rec.success ? "true" : "false") << " fidelity=" << fmt(rec.output_fidelity)
              << "\n";
    return 0;
}

int cmd_basis(double theta) {
    const EjmBasis basis = build_basis(theta);
    std::cout << "theta=" << fmt(theta) << " r_plus=" << fmt(basis.r_plus)
              << " r_minus=" << fmt(basis.r_minus) << "\n";
    for (Branch b : kAllBranches) {
        const Vector& v = basis.states[static_cast<std::size_t>(branch_index(b))];
        std::cout << "e" << branch_name(b) << " = [";
        for (int k = 0; k < 4; ++k) std::cout << (k ? ", " : "") << fmt(v[k]);
        std::cout << "]  concurrence=" << fmt(concurrence(v)) << "\n";
    }
    double gram_defect = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Complex g = inner(basis.states[i], basis.states[j]);
            gram_defect = std::max(gram_defect, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    std::cout << "gram_defect=" << fmt(gram_defect) << "\n";
    for (TraceSide side : {TraceSide::kTraceOutSecond, TraceSide::kTraceOutFirst}) {
        const TetrahedronReport rep = reduced_tetrahedron(basis, side);
        std::cout << (side == TraceSide::kTraceOutSecond ? "trace_out_second"
                                                         : "trace_out_first")
                  << ": radius=" << fmt(rep.common_radius);
        if (rep.degenerate) {
            std::cout << " (vectors vanish; cosines undefined)";
        } else {
            std::cout << " cosines=[";
            for (std::size_t k = 0; k < rep.pairwise_cosines.size(); ++k) {
                std::cout << (k ? ", " : "") << fmt(rep.pairwise_cosines[k]);
            }
            std::cout << "]";
        }
        std::cout << "\n";
        for (Branch b : kAllBranches) {
            const auto& v = rep.bloch_vectors[static_cast<std::size_t>(branch_index(b))];
            std::cout << "  bloch_" << branch_name(b) << " = (" << fmt(v[0]) << ", "
                      << fmt(v[1]) << ", " << fmt(v[2]) << ")\n";
        }
    }
    return 0;
}

int cmd_verify(int theta_grid_points, std::uint64_t seed) {
    VerifyOptions options;
    options.theta_grid_points = theta_grid_points;
    options.seed = seed;
    const std::vector<CheckResult> results = run_all_checks(options);
    int failures = 0;
    for (const CheckResult& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  [" << r.detail
                  << "]\n";
        if (!r.pass) ++failures;
    }
    std::cout << (failures == 0 ? "all checks passed" : "checks failed") << " ("
              << results.size() - static_cast<std::size_t>(failures) << "/" << results.size()
              << ")\n";
    return failures == 0 ? 0 : 1;
}

int cmd_sweep(const SweepConfig& config) {
    const SweepResult result = sweep(config);
    for (const ThetaExtremes& ex : result.extremes) {
        std::cout << "theta=" << fmt(ex.theta) << " p_min=" << fmt(ex.p_min)
                  << " p_max=" << fmt(ex.p_max) << "\n";
    }
    if (!config.output_path.empty()) {
        std::cout << "wrote " << result.rows.size() << " rows to " << config.output_path
                  << "\n";
    }
    return 0;
}

int cmd_export(const std::string& kind, double theta, Branch label, double zeta, double xi,
               const std::string& out_path) {
    Circuit circuit;
    if (kind == "singlet") {
        circuit = singlet_circuit();
    } else if (kind == "ejm") {
        circuit = ejm_export_circuit(theta);
    } else if (kind == "correction") {
        circuit = correction_export_circuit(theta, label);
    } else {
        circuit = full_teleport_circuit(InputState::from_angles(zeta, xi), theta, label);
    }
    const QasmProgram program = emit_qasm(circuit);
    if (out_path.empty()) {
        std::cout << program.source_text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "export: cannot write '" << out_path << "'\n";
            return 1;
        }
        out << program.source_text;
        if (!out) {
            std::cerr << "export: write failed for '" << out_path << "'\n";
            return 1;
        }
        std::cout << "wrote " << program.gate_count << " gates to " << out_path << "\n";
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Probabilistic single-qubit teleportation on a theta-parameterized joint "
                 "measurement: exact simulation, sweeps, verification, circuit export"};
    app.name("ejmsim");
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    double theta = kPi / 2.0;
    double zeta = 0.0;
    double xi = 0.0;
    std::string branch_str = "00";
    int theta_grid_points = 50;
    int zeta_steps = 200;
    std::optional<double> sweep_theta;
    std::optional<int> sweep_theta_grid;
    std::optional<long long> shots;
    std::string out_path;
    std::string export_kind = "full";

    CLI::App* teleport = app.add_subcommand("teleport", "run one seeded protocol instance");
    teleport->add_option("--theta", theta, "measurement parameter in [0, pi/2]")->required();
    teleport->add_option("--zeta", zeta, "input polar angle (default 0)");
    teleport->add_option("--xi", xi, "input phase angle (default 0)");
    teleport->add_option("--seed", seed, "random seed (default $EJMSIM_SEED or 0)");

    CLI::App* basis_cmd = app.add_subcommand("basis", "print the measurement basis and its "
                                                      "marginal geometry");
    basis_cmd->add_option("--theta", theta, "measurement parameter in [0, pi/2]")->required();

    CLI::App* verify = app.add_subcommand("verify", "run the full invariant suite");
    verify->add_option("--theta-grid", theta_grid_points, "grid points on [0, pi/2]")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "random seed (default $EJMSIM_SEED or 0)");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "tabulate success probabilities over "
                                                      "(theta, zeta) as CSV");
    auto* st = sweep_cmd->add_option("--theta", sweep_theta, "single theta value");
    auto* sg = sweep_cmd->add_option("--theta-grid", sweep_theta_grid,
                                     "uniform theta grid with this many points");
    st->excludes(sg);
    sweep_cmd->add_option("--zeta-steps", zeta_steps, "zeta grid intervals over [0, 2 pi]")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--xi", xi, "input phase angle (default 0)");
    std::string sweep_branch;
    sweep_cmd->add_option("--branch", sweep_branch, "restrict to one outcome (00|01|10|11)");
    sweep_cmd->add_option("--shots", shots, "sampled estimate per cell with this many shots");
    sweep_cmd->add_option("--seed", seed, "random seed (default $EJMSIM_SEED or 0)");
    sweep_cmd->add_option("--out", out_path, "output CSV path (default sweep.csv)");

    CLI::App* export_cmd = app.add_subcommand("export", "write a protocol circuit as "
                                                        "OpenQASM 3");
    export_cmd->add_option("--circuit", export_kind, "singlet|ejm|correction|full")
        ->check(CLI::IsMember({"singlet", "ejm", "correction", "full"}));
    export_cmd->add_option("--theta", theta, "measurement parameter in [0, pi/2]");
    export_cmd->add_option("--branch", branch_str, "outcome label (00|01|10|11)");
    export_cmd->add_option("--zeta", zeta, "input polar angle (full circuit)");
    export_cmd->add_option("--xi", xi, "input phase angle (full circuit)");
    export_cmd->add_option("--out", out_path, "output path (default stdout)");

    try {
        seed = default_seed();
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));

        if (teleport->parsed()) return cmd_teleport(theta, zeta, xi, seed);
        if (basis_cmd->parsed()) return cmd_basis(theta);
        if (verify->parsed()) return cmd_verify(theta_grid_points, seed);
        if (sweep_cmd->parsed()) {
            SweepConfig config;
            if (sweep_theta_grid) {
                config.theta_grid = uniform_grid(0.0, kPi / 2.0, std::max(1, *sweep_theta_grid - 1));
            } else if (sweep_theta) {
                config.theta_grid = {*sweep_theta};
            } else {
                throw CLI::RequiredError("--theta or --theta-grid");
            }
            config.zeta_grid = uniform_grid(0.0, 2.0 * kPi, zeta_steps);
            config.xi = xi;
            if (!sweep_branch.empty()) config.branch = parse_branch(sweep_branch);
            config.shots = shots;
            config.seed = seed;
            config.output_path = out_path.empty() ? "sweep.csv" : out_path;
            return cmd_sweep(config);
        }
        if (export_cmd->parsed()) {
            return cmd_export(export_kind, theta, parse_branch(branch_str), zeta, xi,
                              out_path);
        }
        return 2;
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cerr, std::cerr);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ejmsim: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ejm
