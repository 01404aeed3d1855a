// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ejm/qmath.hpp"

namespace ejm {

enum class GateKind {
    kH,
    kS,        // Rz(pi/2) in the phase convention below; S|1> = i|1> exactly
    kX,
    kY,
    kZ,
    kRy,       // exp(-i angle Y / 2)
    kRz,       // exp(i angle / 2) exp(-i angle Z / 2) = diag(1, exp(i angle))
    kCnot,
    kCrz,      // controlled version of kRz: diag(1, 1, 1, exp(i angle))
    kCu,       // controlled 2x2 unitary
    kN,        // diag(1, d), 0 <= d <= 1; nonunitary for d < 1
    kCustom,   // arbitrary 2x2 matrix
    kGphase,   // global phase exp(i angle) on the whole register
};

/// One gate acting on named qubits of a register. Qubit 0 is the most
/// significant bit of the amplitude index throughout the library.
struct GateSpec {
    GateKind kind = GateKind::kH;
    int target = -1;
    int control = -1;     // controlled kinds only
    double angle = 0.0;   // kRy, kRz, kCrz, kGphase
    double damping = 1.0; // kN
    Matrix unitary;       // kCu, kCustom
};

namespace gate {
GateSpec h(int target);
GateSpec s(int target);
GateSpec x(int target);
GateSpec y(int target);
GateSpec z(int target);
GateSpec ry(int target, double angle);
GateSpec rz(int target, double angle);
GateSpec cnot(int control, int target);
GateSpec crz(int control, int target, double angle);
GateSpec cu(int control, int target, Matrix unitary);
GateSpec n(int target, double damping);
GateSpec custom(int target, Matrix m);
GateSpec gphase(double angle);
}  // namespace gate

bool is_controlled(GateKind kind);

/// Qubits the gate acts on, control first for controlled kinds; empty for
/// kGphase.
std::vector<int> gate_qubits(const GateSpec& g);

/// Dense matrix of the gate on its own qubits in the computational basis:
/// 2x2 for single-qubit kinds, 4x4 for controlled kinds (control is the more
/// significant local index), 1x1 for kGphase. The unitarity tag is set from
/// the construction (kN is nonunitary for d < 1).
Matrix matrix_of(const GateSpec& g);

/// d_theta = d_-/d_+ = sqrt(4 - 3 cos^2 t) / (2 + sqrt(3) cos t), the damping
/// of the residual nonunitary factor shared by all four corrections.
/// Domain: theta in [0, pi/2]; range (0, 1].
double d_theta(double theta);

/// [[d, sqrt(1-d^2)], [sqrt(1-d^2), -d]] -- Hermitian, involutory unitary
/// used as the controlled gate that realizes N(d) on an ancilla.
Matrix u_of_d(double d);

/// Circuit fragment realizing a nonunitary correction probabilistically:
/// pre-rotation on the system, controlled-U(d_theta) from system to ancilla,
/// projection of the ancilla onto |0> (the keep branch), post-rotation.
/// Keeping the ancilla-|0> block yields post * N(d_theta) * pre on the
/// system, which reproduces the decomposed matrix up to its dominant
/// singular value and coefficient phase.
struct NonunitaryRealization {
    GateSpec pre_rotation;    // right_dagger factor on the system qubit
    GateSpec controlled_step; // system-controlled U(d_theta) onto the ancilla
    GateSpec post_projection; // N(0) on the ancilla: keep-|0> projector
    GateSpec post_rotation;   // left factor on the system qubit
};

NonunitaryRealization realize_nonunitary(const Svd2x2& svd, double theta,
                                         int system_qubit = 0, int ancilla_qubit = 1);

}  // namespace ejm
