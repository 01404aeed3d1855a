// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ejm/gates.hpp"
#include "ejm/qmath.hpp"
#include "ejm/rng.hpp"
#include "ejm/teleport.hpp"

namespace ejm {

/// Embeds a gate matrix on the listed qubits (qubits[0] the most significant
/// local index) into the full 2^n-dimensional register space.
Matrix expand_gate(const Matrix& local, std::span<const int> qubits, int n_qubits);

struct MeasureResult {
    std::vector<int> bits;      // aligned with the measured qubit list
    double probability = 0.0;   // exact Born probability of the outcome
};

/// Dense statevector register for 1..4 qubits. Qubit 0 is the most
/// significant bit of the amplitude index; appended ancillas become the least
/// significant qubit. The state stays normalized except between a projective
/// keep-step (project) and its renormalize() checkpoint, where the squared
/// norm equals the step's keep probability.
class Register {
public:
    explicit Register(int n_qubits);
    static Register from_state(Vector state);

    int n_qubits() const { return n_qubits_; }
    const Vector& state() const { return state_; }
    double accumulated_keep_probability() const { return keep_probability_; }

    void apply(const GateSpec& g);

    /// Tensors a |0> ancilla onto the register as the new least significant
    /// qubit (index n_qubits()).
    void append_qubit();

    /// Samples the listed qubits from the Born distribution via the stream,
    /// collapses, renormalizes, and returns the outcome with its exact
    /// probability. Zero-probability outcomes are never selected.
    MeasureResult measure(std::span<const int> qubits, SeedStream& stream);

    /// Probability of observing `bits` on `qubits`, without touching state.
    double outcome_probability(std::span<const int> qubits, std::span<const int> bits) const;

    /// Deterministically keeps the `bits` outcome on `qubits` without
    /// renormalizing; returns the outcome probability.
    double project(std::span<const int> qubits, std::span<const int> bits);

    /// Normalization checkpoint: rescales to unit norm, multiplies the norm
    /// loss into accumulated_keep_probability, and returns the squared norm
    /// it found.
    double renormalize();

private:
    void check_qubits(std::span<const int> qubits) const;

    int n_qubits_;
    Vector state_;
    double keep_probability_ = 1.0;
};

/// One seeded end-to-end protocol run: prepare, measure, correct.
/// success means the ancilla came out |0>; in that case the receiver's qubit
/// reproduces the input exactly (output_fidelity = 1 up to rounding).
struct RunRecord {
    std::uint64_t seed = 0;
    double theta = 0.0;
    double zeta = 0.0;
    double xi = 0.0;
    int m1 = 0;
    int m2 = 0;
    int ancilla_outcome = 0;
    bool success = false;
    double output_fidelity = 0.0;
    double branch_probability = 0.0;  // exact p_i of the sampled outcome
    double keep_probability = 0.0;    // exact ancilla-|0> probability for it
};

RunRecord run_teleportation(const InputState& input, double theta, std::uint64_t seed);
RunRecord run_teleportation(const InputState& input, double theta, SeedStream stream);

/// Sampling-free evaluation of the same circuits: every branch is projected
/// out exactly and pushed through the correction stage.
struct BranchCircuitStats {
    Branch label = Branch::k00;
    double branch_probability = 0.0;  // from the measurement projector
    double keep_probability = 0.0;    // from the ancilla projector
    double output_fidelity = 0.0;     // after the closing rotation
};

std::array<BranchCircuitStats, 4> exact_branch_analysis(const InputState& input, double theta);

struct BranchTally {
    long long count = 0;
    long long successes = 0;
    double branch_rate = 0.0;
    double branch_rate_stderr = 0.0;
    double success_rate = 0.0;         // conditioned on the branch
    double success_rate_stderr = 0.0;
};

struct MonteCarloSummary {
    std::uint64_t seed = 0;
    long long shots = 0;
    std::array<BranchTally, 4> branches{};
    long long total_successes = 0;
    double success_rate = 0.0;
    double success_rate_stderr = 0.0;
};

/// `shots` seeded protocol runs (run k uses the child stream split(k));
/// reproducible bit-for-bit for a fixed (seed, shots).
MonteCarloSummary monte_carlo(const InputState& input, double theta, long long shots,
                              std::uint64_t seed);

/// Gate sequence of the full preparation stage: input rotations on qubit 0
/// and singlet preparation on qubits 1, 2 (from the |0 1 1> start state).
std::vector<GateSpec> preparation_circuit(const InputState& input);

}  // namespace ejm
