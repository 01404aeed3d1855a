// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ejm/basis.hpp"
#include "ejm/gates.hpp"
#include "ejm/qasm.hpp"
#include "ejm/qmath.hpp"
#include "ejm/rng.hpp"
#include "ejm/sampling.hpp"
#include "ejm/sim.hpp"
#include "ejm/sweep.hpp"
#include "ejm/teleport.hpp"

using namespace ejm;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;

struct Outcome {
    bool pass = true;
    double worst = 0.0;
    std::string note;

    void bound(double deviation, double limit, const std::string& what) {
        worst = std::max(worst, deviation);
        if (deviation > limit && pass) {
            pass = false;
            note = what + " deviated by " + std::to_string(deviation);
        }
    }
    void expect(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            note = what;
        }
    }
};

std::vector<double> fifty_grid() { return uniform_grid(0.0, kPi / 2.0, 49); }

InputState random_input(SeedStream& stream) {
    const Vector v = random_state(stream, 2);
    return InputState::from_amplitudes(v[0], v[1]);
}

// 1. Basis structure: orthonormality, completeness, marginal tetrahedra.
Outcome criterion_basis_structure() {
    Outcome out;
    for (double theta : fifty_grid()) {
        const EjmBasis basis = build_basis(theta);
        Matrix completeness(4, 4);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const Complex g = inner(basis.states[i], basis.states[j]);
                out.bound(std::abs(g - (i == j ? 1.0 : 0.0)), 1e-12, "gram entry");
            }
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    completeness(r, c) += basis.states[i][r] * std::conj(basis.states[i][c]);
        }
        out.bound(max_abs_diff(completeness, Matrix::identity(4)), 1e-12, "completeness");

        const double expected_radius = kSqrt3 / 2.0 * std::cos(theta);
        for (TraceSide side : {TraceSide::kTraceOutFirst, TraceSide::kTraceOutSecond}) {
            const TetrahedronReport rep = reduced_tetrahedron(basis, side);
            out.bound(std::abs(rep.common_radius - expected_radius), 1e-10, "radius");
            if (theta < kPi / 2.0 - 1e-9) {
                out.expect(!rep.degenerate, "unexpected degenerate tetrahedron");
                for (double c : rep.pairwise_cosines) {
                    out.bound(std::abs(c + 1.0 / 3.0), 1e-8, "pairwise cosine");
                }
            }
        }
    }
    out.bound(std::abs(reduced_tetrahedron(build_basis(0.0), TraceSide::kTraceOutSecond)
                           .common_radius - kSqrt3 / 2.0),
              1e-12, "radius at theta = 0");
    out.bound(reduced_tetrahedron(build_basis(kPi / 2.0), TraceSide::kTraceOutFirst)
                  .common_radius,
              1e-12, "radius at theta = pi/2");
    return out;
}

// 2. Corrections undo every branch exactly.
Outcome criterion_recovery() {
    Outcome out;
    SeedStream stream(1002);
    for (int rep = 0; rep < 1000; ++rep) {
        const InputState input = random_input(stream);
        const double theta = kPi / 2.0 * stream.next_unit();
        const Branch label = kAllBranches[rep % 4];
        const Vector recovered =
            correction_matrix(theta, label) * branch(input, theta, label).post_state;
        out.bound(std::abs(1.0 - fidelity(recovered, input.ket())), 1e-10, "fidelity");
    }
    return out;
}

// 3. Closed-form factorization against the generic decomposition.
Outcome criterion_svd_closed_forms() {
    Outcome out;
    for (double theta : fifty_grid()) {
        for (Branch label : kAllBranches) {
            const CorrectionFactors f = correction_factors(theta, label);
            const Matrix a = correction_matrix(theta, label);
            out.bound(max_abs_diff(f.reconstruct(), a), 1e-10, "closed-form reconstruction");
            const Svd2x2 svd = svd_2x2(a);
            const double scale = std::abs(f.coefficient);
            out.bound(std::abs(svd.singulars[0] - scale * f.d_plus), 1e-10, "s0");
            out.bound(std::abs(svd.singulars[1] - scale * f.d_minus), 1e-10, "s1");
        }
    }
    return out;
}

// 4. Kraus pair: completeness and normalization.
Outcome criterion_kraus() {
    Outcome out;
    for (double theta : fifty_grid()) {
        for (Branch label : kAllBranches) {
            const CorrectionPlan plan = correction_plan(theta, label);
            out.bound(max_abs_diff(dagger(plan.kraus_keep) * plan.kraus_keep +
                                       dagger(plan.kraus_fail) * plan.kraus_fail,
                                   Matrix::identity(2)),
                      1e-12, "completeness");
            out.bound(std::abs(svd_2x2(plan.kraus_keep).singulars[0] - 1.0), 1e-12,
                      "top singular value");
        }
    }
    return out;
}

// 5. Branch probabilities.
Outcome criterion_branch_probabilities() {
    Outcome out;
    SeedStream stream(1005);
    for (int rep = 0; rep < 100; ++rep) {
        const InputState input = random_input(stream);
        const double theta = kPi / 2.0 * stream.next_unit();
        double total = 0.0;
        for (Branch label : kAllBranches) {
            const BranchOutcome b = branch(input, theta, label);
            out.bound(std::abs(b.probability -
                               1.0 / (8.0 * b.normalization * b.normalization)),
                      1e-10, "p vs N");
            total += b.probability;
        }
        out.bound(std::abs(total - 1.0), 1e-10, "sum of probabilities");
    }
    const InputState zero_ket = InputState::from_amplitudes(1.0, 0.0);
    const std::array<double, 4> expected{1.0 / 8, 1.0 / 8, 3.0 / 8, 3.0 / 8};
    for (Branch label : kAllBranches) {
        out.bound(std::abs(branch(zero_ket, 0.0, label).probability -
                           expected[static_cast<std::size_t>(branch_index(label))]),
                  1e-12, "theta = 0 distribution");
    }
    return out;
}

// 6. Success-probability formulas, circuit-exact.
Outcome criterion_success_formulas() {
    Outcome out;
    SeedStream stream(1006);
    for (double theta : uniform_grid(0.0, kPi / 2.0, 9)) {
        for (int rep = 0; rep < 5; ++rep) {
            const InputState input = random_input(stream);
            const auto stats = exact_branch_analysis(input, theta);
            const double c = std::cos(theta);
            for (const BranchCircuitStats& entry : stats) {
                const BranchOutcome b = branch(input, theta, entry.label);
                const double analytic =
                    b.normalization * b.normalization * (2.0 - kSqrt3 * c);
                out.bound(std::abs(entry.keep_probability - analytic), 1e-12,
                          "circuit vs closed form");
            }
            // expanded form for outcome 10
            const Complex cross = Complex(1.0, -1.0) * std::conj(input.alpha) * input.beta;
            const double denom = 2.0 + c * (std::norm(input.alpha) - std::norm(input.beta)) +
                                 2.0 * c * cross.real();
            out.bound(std::abs(stats[2].keep_probability - (2.0 - kSqrt3 * c) / denom),
                      1e-12, "expanded outcome-10 form");
        }
    }
    // totals: state independence and the two checkpoints
    SeedStream stream2(1066);
    for (double theta : uniform_grid(0.0, kPi / 2.0, 19)) {
        double mean = 0.0, m2 = 0.0;
        int count = 0;
        for (int rep = 0; rep < 100; ++rep) {
            const InputState input = random_input(stream2);
            double total = 0.0;
            for (Branch label : kAllBranches) {
                total += branch(input, theta, label).probability *
                         success_probability(input, theta, label);
            }
            out.bound(std::abs(total - total_success_probability(theta)), 1e-12,
                      "branch-weighted total");
            ++count;
            const double delta = total - mean;
            mean += delta / count;
            m2 += delta * (total - mean);
        }
        out.bound(m2 / count, 1e-24, "variance over inputs");
    }
    out.bound(std::abs(total_success_probability(0.0) - (1.0 - kSqrt3 / 2.0)), 1e-12,
              "checkpoint theta = 0");
    out.expect(total_success_probability(kPi / 2.0) == 1.0, "checkpoint theta = pi/2");
    return out;
}

// 7. Sweep extremes against the closed-form range endpoints.
Outcome criterion_sweep_extremes() {
    Outcome out;
    SweepConfig config;
    config.theta_grid = {0.0};
    config.zeta_grid = uniform_grid(0.0, 2.0 * kPi, 629);  // step < 0.01
    const SweepResult at_zero = sweep(config);
    out.bound(std::abs(at_zero.extremes[0].p_min - (2.0 - kSqrt3) / (2.0 + kSqrt2)), 1e-3,
              "minimum at theta = 0");
    out.bound(std::abs(at_zero.extremes[0].p_max - (2.0 - kSqrt3) / (2.0 - kSqrt2)), 1e-3,
              "maximum at theta = 0");

    config.theta_grid = {kPi / 2.0};
    const SweepResult at_bsm = sweep(config);
    for (const SweepRow& row : at_bsm.rows) {
        out.expect(row.p_analytic == 1.0, "cell not exactly 1 at theta = pi/2");
    }
    return out;
}

// 8. Measurement circuit: basis mapping and outcome distribution.
Outcome criterion_measurement_circuit() {
    Outcome out;
    SeedStream stream(1008);
    for (double theta : uniform_grid(0.0, kPi / 2.0, 9)) {
        const EjmBasis basis = build_basis(theta);
        Matrix circuit = Matrix::identity(4);
        for (const GateSpec& g : ejm_circuit(theta)) {
            circuit = expand_gate(matrix_of(g), gate_qubits(g), 2) * circuit;
        }
        for (Branch label : kAllBranches) {
            const int i = branch_index(label);
            out.bound(std::abs(1.0 - fidelity(circuit * basis.states[i],
                                              Vector::basis_state(4, i))),
                      1e-10, "basis mapping fidelity");
        }
        for (int rep = 0; rep < 10; ++rep) {
            const Vector phi = random_state(stream, 4);
            const Vector rotated = circuit * phi;
            double tv = 0.0;
            for (int i = 0; i < 4; ++i) {
                tv += std::abs(std::norm(rotated[i]) -
                               std::norm(inner(basis.states[i], phi)));
            }
            out.bound(tv / 2.0, 1e-10, "distribution TV distance");
        }
    }
    return out;
}

// 9. Seeded sampling: frequencies, determinism, certainty at pi/2.
Outcome criterion_monte_carlo() {
    Outcome out;
    const long long shots = 100000;
    const InputState zero_ket = InputState::from_amplitudes(1.0, 0.0);
    const MonteCarloSummary mc = monte_carlo(zero_ket, 0.0, shots, 2024);

    const std::array<double, 4> p_branch{1.0 / 8, 1.0 / 8, 3.0 / 8, 3.0 / 8};
    for (int i = 0; i < 4; ++i) {
        const double sigma =
            std::sqrt(p_branch[i] * (1.0 - p_branch[i]) / static_cast<double>(shots));
        out.expect(std::abs(mc.branches[i].branch_rate - p_branch[i]) <= 4.0 * sigma,
                   "branch frequency outside 4 sigma");
        // per-branch success frequency against the conditional keep rate
        const double p_keep =
            success_probability(zero_ket, 0.0, static_cast<Branch>(i));
        const double sigma_keep = std::sqrt(
            p_keep * (1.0 - p_keep) / std::max(1.0, static_cast<double>(mc.branches[i].count)));
        out.expect(std::abs(mc.branches[i].success_rate - p_keep) <= 4.0 * sigma_keep,
                   "conditional success frequency outside 4 sigma");
    }
    const double p_total = 1.0 - kSqrt3 / 2.0;
    const double sigma_total =
        std::sqrt(p_total * (1.0 - p_total) / static_cast<double>(shots));
    out.expect(std::abs(mc.success_rate - p_total) <= 4.0 * sigma_total,
               "success frequency outside 4 sigma");

    const MonteCarloSummary again = monte_carlo(zero_ket, 0.0, shots, 2024);
    for (int i = 0; i < 4; ++i) {
        out.expect(mc.branches[i].count == again.branches[i].count &&
                       mc.branches[i].successes == again.branches[i].successes,
                   "same-seed summaries differ");
    }
    out.expect(mc.success_rate == again.success_rate, "same-seed rates differ");

    const MonteCarloSummary certain = monte_carlo(zero_ket, kPi / 2.0, shots, 99);
    out.expect(certain.total_successes == shots, "success count not exact at theta = pi/2");
    return out;
}

// 10. Serialization round trip across the protocol circuits.
Outcome criterion_qasm_round_trip() {
    Outcome out;
    const InputState input = InputState::from_angles(0.9, 0.35);
    for (double theta : uniform_grid(0.0, kPi / 2.0, 9)) {
        // unitary fragments resimulate identically
        for (const Circuit& circuit : {singlet_circuit(), ejm_export_circuit(theta)}) {
            const QasmProgram emitted = emit_qasm(circuit);
            const QasmProgram reparsed = parse_qasm_subset(emitted.source_text);
            out.bound(max_abs_diff(program_unitary(emitted), program_unitary(reparsed)),
                      1e-10, "unitary round trip");
            out.expect(emit_qasm(reparsed).source_text == emitted.source_text,
                       "text round trip");
        }
        for (Branch label : kAllBranches) {
            const Circuit circuit = correction_export_circuit(theta, label);
            const QasmProgram emitted = emit_qasm(circuit);
            const QasmProgram reparsed = parse_qasm_subset(emitted.source_text);
            out.bound(max_abs_diff(program_kraus(emitted), program_kraus(reparsed)), 1e-10,
                      "kraus round trip");
            // the kept system block is the kraus element itself
            const Matrix composite = program_kraus(reparsed);
            Matrix block(2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) block(i, j) = composite(i << 1, j << 1);
            out.bound(max_abs_diff(block, correction_plan(theta, label).kraus_keep), 1e-10,
                      "kraus block vs plan");
            out.expect(emit_qasm(reparsed).source_text == emitted.source_text,
                       "text round trip");
        }
        // the full protocol reproduces seeded statistics bit-for-bit
        const Branch label = Branch::k10;
        const QasmProgram full = emit_qasm(full_teleport_circuit(input, theta, label));
        const QasmProgram full_rt = parse_qasm_subset(full.source_text);
        for (int shot = 0; shot < 100; ++shot) {
            SeedStream sa = SeedStream(31337).split(shot);
            SeedStream sb = SeedStream(31337).split(shot);
            out.expect(run_program(full, sa) == run_program(full_rt, sb),
                       "seeded statistics differ");
        }
    }
    return out;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "basis orthonormality, completeness, marginal tetrahedra", criterion_basis_structure},
        {2, "branch recovery exactness", criterion_recovery},
        {3, "closed-form singular value factorization", criterion_svd_closed_forms},
        {4, "kraus completeness and normalization", criterion_kraus},
        {5, "branch probabilities", criterion_branch_probabilities},
        {6, "success-probability formulas", criterion_success_formulas},
        {7, "sweep range endpoints", criterion_sweep_extremes},
        {8, "measurement circuit equivalence", criterion_measurement_circuit},
        {9, "seeded monte carlo", criterion_monte_carlo},
        {10, "serialization round trip", criterion_qasm_round_trip},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.note = std::string("exception: ") + e.what();
        }
        std::ostringstream line;
        line << (outcome.pass ? "PASS" : "FAIL") << " criterion " << criterion.id << ": "
             << criterion.title;
        if (outcome.pass) {
            line << " (worst deviation " << outcome.worst << ")";
        } else {
            line << " -- " << outcome.note;
        }
        std::puts(line.str().c_str());
        if (!outcome.pass) ++failures;
    }
    if (failures > 0) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
