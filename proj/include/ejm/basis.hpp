// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "ejm/gates.hpp"
#include "ejm/qmath.hpp"

namespace ejm {

/// Measurement outcome label m1 m2, doubling as the index of the matching
/// basis state, branch state and correction.
enum class Branch : int { k00 = 0, k01 = 1, k10 = 2, k11 = 3 };

inline constexpr std::array<Branch, 4> kAllBranches{Branch::k00, Branch::k01, Branch::k10,
                                                    Branch::k11};

constexpr int branch_index(Branch b) { return static_cast<int>(b); }
constexpr int branch_m1(Branch b) { return branch_index(b) >> 1; }
constexpr int branch_m2(Branch b) { return branch_index(b) & 1; }
Branch branch_from_bits(int m1, int m2);
std::string branch_name(Branch b);

/// The four basis states of the joint measurement at a given theta, stored
/// over (|00>, |01>, |10>, |11>) with qubit 0 as the more significant index.
/// r_plus/r_minus are the construction constants (1 +- e^{-i theta})/sqrt(2).
struct EjmBasis {
    double theta = 0.0;
    std::array<Vector, 4> states;
    Complex r_plus;
    Complex r_minus;
};

/// Builds the basis. Domain: theta in [0, pi/2].
EjmBasis build_basis(double theta);

enum class TraceSide { kTraceOutFirst, kTraceOutSecond };

/// Bloch-sphere geometry of the single-qubit marginals of the basis states.
/// For theta < pi/2 the four vectors form a regular tetrahedron of radius
/// (sqrt(3)/2) cos(theta); at theta = pi/2 they vanish and `degenerate` is
/// set (pairwise cosines are then meaningless and left empty).
struct TetrahedronReport {
    TraceSide side = TraceSide::kTraceOutSecond;
    std::array<std::array<double, 3>, 4> bloch_vectors{};
    double common_radius = 0.0;
    std::vector<double> pairwise_cosines;  // 6 entries unless degenerate
    bool degenerate = false;
};

TetrahedronReport reduced_tetrahedron(const EjmBasis& basis, TraceSide side);

/// Pure-state concurrence |<psi*| sigma_y x sigma_y |psi>| of a normalized
/// two-qubit state. Rejects vectors that are not unit norm within tolerance.
double concurrence(const Vector& state, const Tolerances& tol = kDefaultTol);

/// Gate sequence on qubits 0 and 1 that rotates the measurement basis into
/// the computational basis: measuring both qubits afterwards realizes the
/// joint measurement. Works unchanged on wider registers since it only
/// touches the two most significant qubits.
std::vector<GateSpec> ejm_circuit(double theta);

/// Global phase picked up by basis state i under ejm_circuit:
/// (-1)^(m1 xor m2) * i. Recorded for reference; protocol code and tests
/// compare states by fidelity instead of asserting on it.
Complex ejm_outcome_phase(Branch b);

}  // namespace ejm
