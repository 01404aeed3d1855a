// SPDX-License-Identifier: Apache-2.0
#include "ejm/sim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ejm {

Matrix expand_gate(const Matrix& local, std::span<const int> qubits, int n_qubits) {
    const int k = static_cast<int>(qubits.size());
    if (local.rows() != (1 << k) || local.cols() != (1 << k)) {
        throw std::invalid_argument("expand_gate: matrix size does not match qubit count");
    }
    const int dim = 1 << n_qubits;
    Matrix full(dim, dim);
    full.set_unitarity(local.unitarity());

    // Local index bit j (MSB first) corresponds to register bit of qubits[j].
    std::vector<int> shifts(qubits.size());
    for (int j = 0; j < k; ++j) {
        const int q = qubits[j];
        if (q < 0 || q >= n_qubits) {
            throw std::invalid_argument("expand_gate: qubit index out of range");
        }
        shifts[j] = n_qubits - 1 - q;
    }

    for (int idx = 0; idx < dim; ++idx) {
        int loc = 0;
        for (int j = 0; j < k; ++j) loc = (loc << 1) | ((idx >> shifts[j]) & 1);
        int rest = idx;
        for (int j = 0; j < k; ++j) rest &= ~(1 << shifts[j]);
        for (int jloc = 0; jloc < (1 << k); ++jloc) {
            const Complex entry = local(loc, jloc);
            if (entry == Complex{}) continue;
            int col = rest;
            for (int j = 0; j < k; ++j) col |= ((jloc >> (k - 1 - j)) & 1) << shifts[j];
            full(idx, col) = entry;
        }
    }
    return full;
}

Register::Register(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 4) {
        throw std::invalid_argument("Register: supports 1..4 qubits");
    }
    state_ = Vector::basis_state(1 << n_qubits, 0);
}

Register Register::from_state(Vector state) {
    int n = 0;
    while ((1 << n) < state.dim()) ++n;
    if ((1 << n) != state.dim() || n < 1 || n > 4) {
        throw std::invalid_argument("Register: state dimension must be 2^n, n in 1..4");
    }
    Register reg(n);
    reg.state_ = std::move(state);
    return reg;
}

void Register::check_qubits(std::span<const int> qubits) const {
    for (int q : qubits) {
        if (q < 0 || q >= n_qubits_) {
            throw std::invalid_argument("Register: qubit index " + std::to_string(q) +
                                        " out of range");
        }
    }
}

void Register::apply(const GateSpec& g) {
    if (g.kind == GateKind::kGphase) {
        state_ = std::polar(1.0, g.angle) * state_;
        return;
    }
    const std::vector<int> qubits = gate_qubits(g);
    check_qubits(qubits);
    state_ = expand_gate(matrix_of(g), qubits, n_qubits_) * state_;
}

void Register::append_qubit() {
    if (n_qubits_ >= 4) {
        throw std::invalid_argument("Register: cannot grow beyond 4 qubits");
    }
    Vector grown(state_.dim() * 2);
    for (int i = 0; i < state_.dim(); ++i) grown[i << 1] = state_[i];
    state_ = std::move(grown);
    ++n_qubits_;
}

double Register::outcome_probability(std::span<const int> qubits,
                                     std::span<const int> bits) const {
    check_qubits(qubits);
    if (qubits.size() != bits.size()) {
        throw std::invalid_argument("Register: qubit/bit count mismatch");
    }
    double p = 0.0;
    for (int idx = 0; idx < state_.dim(); ++idx) {
        bool match = true;
        for (std::size_t j = 0; j < qubits.size(); ++j) {
            if (((idx >> (n_qubits_ - 1 - qubits[j])) & 1) != bits[j]) {
                match = false;
                break;
            }
        }
        if (match) p += std::norm(state_[idx]);
    }
    return p;
}

double Register::project(std::span<const int> qubits, std::span<const int> bits) {
    const double p = outcome_probability(qubits, bits);
    for (int idx = 0; idx < state_.dim(); ++idx) {
        for (std::size_t j = 0; j < qubits.size(); ++j) {
            if (((idx >> (n_qubits_ - 1 - qubits[j])) & 1) != bits[j]) {
                state_[idx] = 0.0;
                break;
            }
        }
    }
    return p;
}

double Register::renormalize() {
    const double n2 = squared_norm(state_);
    if (n2 <= 0.0) {
        throw std::logic_error("Register: cannot renormalize a zero state");
    }
    state_ = Complex(1.0 / std::sqrt(n2), 0.0) * state_;
    keep_probability_ *= n2;
    return n2;
}

MeasureResult Register::measure(std::span<const int> qubits, SeedStream& stream) {
    check_qubits(qubits);
    const int k = static_cast<int>(qubits.size());
    const int n_outcomes = 1 << k;

    std::vector<double> probs(n_outcomes, 0.0);
    for (int idx = 0; idx < state_.dim(); ++idx) {
        int outcome = 0;
        for (int j = 0; j < k; ++j) {
            outcome = (outcome << 1) | ((idx >> (n_qubits_ - 1 - qubits[j])) & 1);
        }
        probs[outcome] += std::norm(state_[idx]);
    }

    // Walk the distribution skipping exact zeros, so a zero-probability
    // outcome can never be drawn even when rounding leaves u past the total.
    const double u = stream.next_unit();
    double cum = 0.0;
    int chosen = -1;
    int last_positive = -1;
    for (int o = 0; o < n_outcomes; ++o) {
        if (probs[o] <= 0.0) continue;
        last_positive = o;
        cum += probs[o];
        if (u < cum && chosen < 0) chosen = o;
    }
    if (chosen < 0) chosen = last_positive;
    if (chosen < 0) {
        throw std::logic_error("Register: measurement on a zero state");
    }

    MeasureResult result;
    result.probability = probs[chosen];
    result.bits.resize(qubits.size());
    for (int j = 0; j < k; ++j) result.bits[j] = (chosen >> (k - 1 - j)) & 1;

    project(qubits, result.bits);
    // The projected norm is the outcome probability; measurement is a
    // normalization checkpoint but not a keep/fail filter, so the
    // accumulated keep probability is left untouched.
    state_ = Complex(1.0 / std::sqrt(result.probability), 0.0) * state_;
    return result;
}

std::vector<GateSpec> preparation_circuit(const InputState& input) {
    return {
        gate::ry(0, input.zeta),
        gate::rz(0, input.xi),
        gate::h(1),
        gate::cnot(1, 2),
    };
}

namespace {

// |0 1 1> start state of the three protocol qubits.
Register protocol_register() {
    return Register::from_state(Vector::basis_state(8, 0b011));
}

void run_prep_and_ejm(Register& reg, const InputState& input, double theta) {
    for (const GateSpec& g : preparation_circuit(input)) reg.apply(g);
    for (const GateSpec& g : ejm_circuit(theta)) reg.apply(g);
}

// Fidelity of the receiver qubit (index 2) against the input, with qubits
// 0, 1 and the ancilla collapsed to definite bits.
double receiver_fidelity(const Register& reg, const InputState& input, int m1, int m2,
                         int ancilla) {
    const Vector& s = reg.state();
    Vector receiver(2);
    for (int k = 0; k < 2; ++k) {
        receiver[k] = s[(m1 << 3) | (m2 << 2) | (k << 1) | ancilla];
    }
    return fidelity(receiver, input.ket());
}

}  // namespace

RunRecord run_teleportation(const InputState& input, double theta, std::uint64_t seed) {
    return run_teleportation(input, theta, SeedStream(seed));
}

RunRecord run_teleportation(const InputState& input, double theta, SeedStream stream) {
    RunRecord rec;
    rec.seed = stream.seed();
    rec.theta = theta;
    rec.zeta = input.zeta;
    rec.xi = input.xi;

    Register reg = protocol_register();
    run_prep_and_ejm(reg, input, theta);

    const std::array<int, 2> sender{0, 1};
    const MeasureResult ejm = reg.measure(sender, stream);
    rec.m1 = ejm.bits[0];
    rec.m2 = ejm.bits[1];
    rec.branch_probability = ejm.probability;
    const Branch label = branch_from_bits(rec.m1, rec.m2);

    reg.append_qubit();
    const CorrectionPlan plan = correction_plan(theta, label);
    const NonunitaryRealization realization = realize_nonunitary(plan.svd, theta, 2, 3);
    reg.apply(realization.pre_rotation);
    reg.apply(realization.controlled_step);

    const std::array<int, 1> ancilla{3};
    const std::array<int, 1> keep_bits{0};
    rec.keep_probability = reg.outcome_probability(ancilla, keep_bits);
    const MeasureResult anc = reg.measure(ancilla, stream);
    rec.ancilla_outcome = anc.bits[0];
    rec.success = anc.bits[0] == 0;
    if (rec.success) {
        reg.apply(realization.post_rotation);
    }
    rec.output_fidelity = receiver_fidelity(reg, input, rec.m1, rec.m2, rec.ancilla_outcome);
    return rec;
}

std::array<BranchCircuitStats, 4> exact_branch_analysis(const InputState& input, double theta) {
    std::array<BranchCircuitStats, 4> stats;
    for (Branch label : kAllBranches) {
        Register reg = protocol_register();
        run_prep_and_ejm(reg, input, theta);

        const std::array<int, 2> sender{0, 1};
        const std::array<int, 2> outcome{branch_m1(label), branch_m2(label)};
        BranchCircuitStats& entry = stats[static_cast<std::size_t>(branch_index(label))];
        entry.label = label;
        entry.branch_probability = reg.project(sender, outcome);
        reg.renormalize();

        reg.append_qubit();
        const CorrectionPlan plan = correction_plan(theta, label);
        const NonunitaryRealization realization = realize_nonunitary(plan.svd, theta, 2, 3);
        reg.apply(realization.pre_rotation);
        reg.apply(realization.controlled_step);

        const std::array<int, 1> ancilla{3};
        const std::array<int, 1> keep_bits{0};
        entry.keep_probability = reg.project(ancilla, keep_bits);
        reg.renormalize();
        reg.apply(realization.post_rotation);
        entry.output_fidelity =
            receiver_fidelity(reg, input, branch_m1(label), branch_m2(label), 0);
    }
    return stats;
}

MonteCarloSummary monte_carlo(const InputState& input, double theta, long long shots,
                              std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("monte_carlo: shots must be >= 1");
    }
    MonteCarloSummary summary;
    summary.seed = seed;
    summary.shots = shots;

    const SeedStream master(seed);
    for (long long k = 0; k < shots; ++k) {
        const RunRecord rec =
            run_teleportation(input, theta, master.split(static_cast<std::uint64_t>(k)));
        BranchTally& tally =
            summary.branches[static_cast<std::size_t>((rec.m1 << 1) | rec.m2)];
        ++tally.count;
        if (rec.success) {
            ++tally.successes;
            ++summary.total_successes;
        }
    }

    const auto binomial_stderr = [](double rate, long long n) {
        return n > 0 ? std::sqrt(rate * (1.0 - rate) / static_cast<double>(n)) : 0.0;
    };
    for (BranchTally& tally : summary.branches) {
        tally.branch_rate = static_cast<double>(tally.count) / static_cast<double>(shots);
        tally.branch_rate_stderr = binomial_stderr(tally.branch_rate, shots);
        if (tally.count > 0) {
            tally.success_rate =
                static_cast<double>(tally.successes) / static_cast<double>(tally.count);
            tally.success_rate_stderr = binomial_stderr(tally.success_rate, tally.count);
        }
    }
    summary.success_rate =
        static_cast<double>(summary.total_successes) / static_cast<double>(shots);
    summary.success_rate_stderr = binomial_stderr(summary.success_rate, shots);
    return summary;
}

}  // namespace ejm
