// SPDX-License-Identifier: Apache-2.0
#include "ejm/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ejm/basis.hpp"
#include "ejm/gates.hpp"
#include "ejm/qasm.hpp"
#include "ejm/qmath.hpp"
#include "ejm/rng.hpp"
#include "ejm/sampling.hpp"
#include "ejm/sim.hpp"
#include "ejm/sweep.hpp"
#include "ejm/teleport.hpp"

namespace ejm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

/// Accumulates the worst deviation of one named check against a bound.
class Check {
public:
    Check(std::string name, double bound) : name_(std::move(name)), bound_(bound) {}

    void observe(double deviation) { worst_ = std::max(worst_, deviation); }
    void require(bool condition, const std::string& note) {
        if (!condition && note_.empty()) note_ = note;
    }

    CheckResult result() const {
        CheckResult r;
        r.name = name_;
        r.pass = note_.empty() && worst_ <= bound_;
        r.detail = !note_.empty() ? note_
                                  : "worst " + fmt(worst_) + " (bound " + fmt(bound_) + ")";
        return r;
    }

private:
    std::string name_;
    double bound_;
    double worst_ = 0.0;
    std::string note_;
};

InputState random_input(SeedStream& stream) {
    const Vector v = random_state(stream, 2);
    return InputState::from_amplitudes(v[0], v[1]);
}

std::vector<double> theta_grid(int points) {
    return uniform_grid(0.0, kPi / 2.0, std::max(1, points - 1));
}

// --- qmath -----------------------------------------------------------------

CheckResult check_tensor_associativity(SeedStream stream) {
    Check check("qmath: tensor associativity on random 2x2 triples", 1e-14);
    for (int rep = 0; rep < 100; ++rep) {
        const Matrix a = random_matrix(stream, 2, 2);
        const Matrix b = random_matrix(stream, 2, 2);
        const Matrix c = random_matrix(stream, 2, 2);
        check.observe(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))));
    }
    return check.result();
}

CheckResult check_svd_properties(SeedStream stream) {
    Check check("qmath: svd factors unitary and reconstruction on random matrices", 1e-10);
    const Matrix eye = Matrix::identity(2);
    for (int rep = 0; rep < 1000; ++rep) {
        const Matrix m = random_matrix(stream, 2, 2);
        const Svd2x2 svd = svd_2x2(m);
        check.observe(max_abs_diff(dagger(svd.left) * svd.left, eye));
        check.observe(max_abs_diff(svd.right_dagger * dagger(svd.right_dagger), eye));
        Matrix diag(2, 2);
        diag(0, 0) = svd.singulars[0];
        diag(1, 1) = svd.singulars[1];
        check.observe(max_abs_diff(svd.left * (diag * svd.right_dagger), m));
        check.require(svd.singulars[0] >= svd.singulars[1] && svd.singulars[1] >= 0.0,
                      "singular values out of order");
    }
    return check.result();
}

CheckResult check_svd_of_unitaries(SeedStream stream) {
    Check check("qmath: singular values of unitary inputs are 1", 1e-12);
    for (int rep = 0; rep < 300; ++rep) {
        const Svd2x2 svd = svd_2x2(random_unitary_2x2(stream));
        check.observe(std::abs(svd.singulars[0] - 1.0));
        check.observe(std::abs(svd.singulars[1] - 1.0));
    }
    return check.result();
}

CheckResult check_zyz_reconstruction(SeedStream stream) {
    Check check("qmath: zyz reconstruction on random unitaries", 1e-10);
    for (int rep = 0; rep < 1000; ++rep) {
        const Matrix u = random_unitary_2x2(stream);
        const ZyzAngles a = zyz_decompose(u);
        check.observe(max_abs_diff(zyz_compose(a), u));
        check.require(a.gamma >= 0.0 && a.gamma <= kPi + 1e-12, "gamma out of range");
        check.require(std::abs(a.beta) <= kPi + 1e-12 && std::abs(a.delta) <= kPi + 1e-12 &&
                          std::abs(a.alpha) <= kPi + 1e-12,
                      "phase angle out of range");
    }
    return check.result();
}

// --- gates -------------------------------------------------------------------

CheckResult check_gate_unitarity(SeedStream stream) {
    Check check("gates: single-qubit kinds unitary; N(d) defect diag(1, d^2)", 1e-12);
    for (int rep = 0; rep < 50; ++rep) {
        const double angle = 2.0 * kPi * stream.next_unit() - kPi;
        for (const GateSpec& g :
             {gate::h(0), gate::s(0), gate::x(0), gate::y(0), gate::z(0), gate::ry(0, angle),
              gate::rz(0, angle)}) {
            check.observe(unitarity_defect(matrix_of(g)));
        }
        const double d = stream.next_unit();
        const Matrix nd = matrix_of(gate::n(0, d));
        const Matrix gram = dagger(nd) * nd;
        Matrix expected(2, 2);
        expected(0, 0) = 1.0;
        expected(1, 1) = d * d;
        check.require(max_abs_diff(gram, expected) == 0.0, "N(d) gram is not diag(1, d^2)");
        if (d < 1.0) {
            check.require(matrix_of(gate::n(0, d)).unitarity() == Unitarity::kNonunitary,
                          "N(d), d<1 not flagged nonunitary");
        }
    }
    return check.result();
}

CheckResult check_ancilla_identity(SeedStream stream) {
    // [I (x) N(0)] C_U(d) [(a|0> + b|1>)|0>] == [N(d)(a|0> + b|1>)] (x) |0>
    Check check("gates: controlled-ancilla identity for N(d)", 1e-12);
    for (int rep = 0; rep < 1000; ++rep) {
        const Vector sys = random_state(stream, 2);
        const double d = stream.next_unit();
        Register reg = Register::from_state(tensor(sys, Vector::basis_state(2, 0)));
        reg.apply(gate::cu(0, 1, u_of_d(d)));
        reg.apply(gate::n(1, 0.0));
        const Vector damped = matrix_of(gate::n(0, d)) * sys;
        check.observe(max_abs_diff(reg.state(), tensor(damped, Vector::basis_state(2, 0))));
        check.observe(std::abs(squared_norm(reg.state()) -
                               (std::norm(sys[0]) + d * d * std::norm(sys[1]))));
    }
    return check.result();
}

// --- basis -------------------------------------------------------------------

CheckResult check_basis_structure(const std::vector<double>& grid) {
    Check check("basis: orthonormality and completeness across the theta grid", 1e-12);
    for (double theta : grid) {
        const EjmBasis basis = build_basis(theta);
        Matrix completeness(4, 4);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const Complex g = inner(basis.states[i], basis.states[j]);
                check.observe(std::abs(g - (i == j ? 1.0 : 0.0)));
            }
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    completeness(r, c) += basis.states[i][r] * std::conj(basis.states[i][c]);
        }
        check.observe(max_abs_diff(completeness, Matrix::identity(4)));
    }
    return check.result();
}

CheckResult check_equal_entanglement(const std::vector<double>& grid) {
    Check check("basis: the four states are equally entangled", 1e-10);
    for (double theta : grid) {
        const EjmBasis basis = build_basis(theta);
        double lo = 2.0, hi = -1.0;
        for (const Vector& state : basis.states) {
            const double c = concurrence(state);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        check.observe(hi - lo);
    }
    return check.result();
}

CheckResult check_tetrahedron(const std::vector<double>& grid) {
    Check check("basis: marginal tetrahedra have radius (sqrt(3)/2) cos(theta)", 1e-10);
    Check cosines("basis: marginal tetrahedra are regular (cosines -1/3)", 1e-8);
    for (double theta : grid) {
        const EjmBasis basis = build_basis(theta);
        const TetrahedronReport a = reduced_tetrahedron(basis, TraceSide::kTraceOutSecond);
        const TetrahedronReport b = reduced_tetrahedron(basis, TraceSide::kTraceOutFirst);
        const double expected = kSqrt3 / 2.0 * std::cos(theta);
        check.observe(std::abs(a.common_radius - expected));
        check.observe(std::abs(b.common_radius - expected));
        check.observe(std::abs(a.common_radius - b.common_radius));
        for (const TetrahedronReport* rep : {&a, &b}) {
            if (rep->degenerate) continue;
            for (double c : rep->pairwise_cosines) cosines.observe(std::abs(c + 1.0 / 3.0));
        }
    }
    CheckResult combined = check.result();
    const CheckResult reg = cosines.result();
    if (!reg.pass) {
        combined.pass = false;
        combined.detail += "; " + reg.detail;
    }
    return combined;
}

CheckResult check_circuit_projector_agreement(SeedStream stream) {
    Check check("basis: measurement circuit matches projector probabilities", 1e-10);
    const std::array<double, 5> thetas{0.0, 0.4, kPi / 4.0, 1.2, kPi / 2.0};
    for (double theta : thetas) {
        const EjmBasis basis = build_basis(theta);
        Matrix circuit = Matrix::identity(4);
        for (const GateSpec& g : ejm_circuit(theta)) {
            circuit = expand_gate(matrix_of(g), gate_qubits(g), 2) * circuit;
        }
        for (int rep = 0; rep < 20; ++rep) {
            const Vector phi = random_state(stream, 4);
            const Vector rotated = circuit * phi;
            double tv = 0.0;
            for (int i = 0; i < 4; ++i) {
                const double p_circuit = std::norm(rotated[i]);
                const double p_projector = std::norm(inner(basis.states[i], phi));
                tv += std::abs(p_circuit - p_projector);
            }
            check.observe(tv / 2.0);
        }
    }
    return check.result();
}

// --- teleport ------------------------------------------------------------------

CheckResult check_recovery(SeedStream stream) {
    Check check("teleport: corrections recover the input exactly", 1e-10);
    for (int rep = 0; rep < 1000; ++rep) {
        const InputState input = random_input(stream);
        const double theta = kPi / 2.0 * stream.next_unit();
        const Branch label = kAllBranches[rep % 4];
        const BranchOutcome outcome = branch(input, theta, label);
        const Vector recovered = correction_matrix(theta, label) * outcome.post_state;
        check.observe(std::abs(1.0 - fidelity(recovered, input.ket())));
        check.observe(max_abs_diff(recovered, input.ket()));
    }
    return check.result();
}

CheckResult check_proportional_unitarity_boundary(const std::vector<double>& grid) {
    Check check("teleport: corrections are proportionally unitary only at theta = pi/2", 1e-12);
    const auto defect = [](double theta, Branch label) {
        const Matrix a = correction_matrix(theta, label);
        const Matrix gram = dagger(a) * a;
        const Complex half_trace = (gram(0, 0) + gram(1, 1)) / 2.0;
        return max_abs_diff(gram, half_trace * Matrix::identity(2));
    };
    for (Branch label : kAllBranches) {
        check.observe(defect(kPi / 2.0, label));
        for (double theta : grid) {
            if (theta >= kPi / 2.0 - 1e-3) continue;
            check.require(defect(theta, label) > 1e-12,
                          "proportional unitarity below theta = pi/2");
        }
    }
    return check.result();
}

CheckResult check_probability_consistency(SeedStream stream) {
    Check check("teleport: branch-weighted success matches the closed form", 1e-12);
    Check spread("teleport: total success probability is state-independent", 1e-24);
    const std::vector<double> thetas = theta_grid(20);
    for (double theta : thetas) {
        double mean = 0.0, m2 = 0.0;
        int count = 0;
        for (int rep = 0; rep < 100; ++rep) {
            const InputState input = random_input(stream);
            double total = 0.0;
            for (Branch label : kAllBranches) {
                total += branch(input, theta, label).probability *
                         success_probability(input, theta, label);
            }
            check.observe(std::abs(total - total_success_probability(theta)));
            ++count;
            const double delta = total - mean;
            mean += delta / count;
            m2 += delta * (total - mean);
        }
        spread.observe(m2 / count);
    }
    CheckResult combined = check.result();
    const CheckResult variance = spread.result();
    if (!variance.pass) {
        combined.pass = false;
        combined.detail += "; variance " + variance.detail;
    }
    return combined;
}

CheckResult check_closed_form_svd(const std::vector<double>& grid) {
    Check check("teleport: closed-form factors rebuild the corrections", 1e-10);
    for (double theta : grid) {
        for (Branch label : kAllBranches) {
            const CorrectionFactors f = correction_factors(theta, label);
            check.observe(max_abs_diff(f.reconstruct(), correction_matrix(theta, label)));
            const Svd2x2 svd = svd_2x2(correction_matrix(theta, label));
            const double scale = std::abs(f.coefficient);
            check.observe(std::abs(svd.singulars[0] - scale * f.d_plus));
            check.observe(std::abs(svd.singulars[1] - scale * f.d_minus));
        }
    }
    return check.result();
}

CheckResult check_kraus_completeness(const std::vector<double>& grid) {
    Check check("teleport: kraus pair completeness and normalization", 1e-12);
    for (double theta : grid) {
        for (Branch label : kAllBranches) {
            const CorrectionPlan plan = correction_plan(theta, label);
            const Matrix sum = dagger(plan.kraus_keep) * plan.kraus_keep +
                               dagger(plan.kraus_fail) * plan.kraus_fail;
            check.observe(max_abs_diff(sum, Matrix::identity(2)));
            check.observe(std::abs(svd_2x2(plan.kraus_keep).singulars[0] - 1.0));
        }
    }
    return check.result();
}

// --- sim -------------------------------------------------------------------------

CheckResult check_circuit_vs_analytic(SeedStream stream) {
    Check check("sim: circuit keep probabilities equal the analytic formulas", 1e-12);
    const std::vector<double> thetas = theta_grid(10);
    for (double theta : thetas) {
        for (int rep = 0; rep < 10; ++rep) {
            const InputState input = random_input(stream);
            const auto stats = exact_branch_analysis(input, theta);
            for (const BranchCircuitStats& entry : stats) {
                check.observe(std::abs(entry.keep_probability -
                                       success_probability(input, theta, entry.label)));
                check.observe(std::abs(entry.branch_probability -
                                       branch(input, theta, entry.label).probability));
                check.observe(std::abs(1.0 - entry.output_fidelity));
            }
        }
    }
    return check.result();
}

CheckResult check_seeded_determinism(SeedStream stream) {
    Check check("sim: identical seeds give identical run records", 0.0);
    for (int rep = 0; rep < 20; ++rep) {
        const InputState input = random_input(stream);
        const double theta = kPi / 2.0 * stream.next_unit();
        const std::uint64_t seed = static_cast<std::uint64_t>(rep) * 7919u + 13u;
        const RunRecord a = run_teleportation(input, theta, seed);
        const RunRecord b = run_teleportation(input, theta, seed);
        check.require(a.m1 == b.m1 && a.m2 == b.m2 &&
                          a.ancilla_outcome == b.ancilla_outcome &&
                          a.output_fidelity == b.output_fidelity &&
                          a.keep_probability == b.keep_probability,
                      "same-seed runs diverged");
    }
    return check.result();
}

CheckResult check_conditional_perfection(SeedStream stream) {
    Check check("sim: every successful run reproduces the input", 1e-10);
    int successes = 0;
    for (int rep = 0; rep < 400; ++rep) {
        const InputState input = random_input(stream);
        const double theta = kPi / 2.0 * stream.next_unit();
        const RunRecord rec =
            run_teleportation(input, theta, static_cast<std::uint64_t>(rep) + 1u);
        if (rec.success) {
            ++successes;
            check.observe(std::abs(1.0 - rec.output_fidelity));
        }
    }
    check.require(successes > 0, "no successful runs observed");
    return check.result();
}

}  // namespace

std::vector<CheckResult> run_all_checks(const VerifyOptions& options) {
    const std::vector<double> grid = theta_grid(options.theta_grid_points);
    const SeedStream master(options.seed);
    int salt = 0;
    const auto fork = [&master, &salt] { return master.split(static_cast<std::uint64_t>(salt++)); };

    std::vector<CheckResult> results;
    results.push_back(check_tensor_associativity(fork()));
    results.push_back(check_svd_properties(fork()));
    results.push_back(check_svd_of_unitaries(fork()));
    results.push_back(check_zyz_reconstruction(fork()));
    results.push_back(check_gate_unitarity(fork()));
    results.push_back(check_ancilla_identity(fork()));
    results.push_back(check_basis_structure(grid));
    results.push_back(check_equal_entanglement(grid));
    results.push_back(check_tetrahedron(grid));
    results.push_back(check_circuit_projector_agreement(fork()));
    results.push_back(check_recovery(fork()));
    results.push_back(check_proportional_unitarity_boundary(grid));
    results.push_back(check_probability_consistency(fork()));
    results.push_back(check_closed_form_svd(grid));
    results.push_back(check_kraus_completeness(grid));
    results.push_back(check_circuit_vs_analytic(fork()));
    results.push_back(check_seeded_determinism(fork()));
    results.push_back(check_conditional_perfection(fork()));
    return results;
}

}  // namespace ejm
