// SPDX-License-Identifier: Apache-2.0
#include "ejm/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ejm {

namespace {

void check_qubit(int q, const char* what) {
    if (q < 0) throw std::invalid_argument(std::string(what) + ": negative qubit index");
}

GateSpec single(GateKind kind, int target) {
    check_qubit(target, "gate");
    GateSpec g;
    g.kind = kind;
    g.target = target;
    return g;
}

GateSpec controlled(GateKind kind, int control, int target) {
    check_qubit(control, "controlled gate");
    check_qubit(target, "controlled gate");
    if (control == target) {
        throw std::invalid_argument("controlled gate: control and target must differ");
    }
    GateSpec g;
    g.kind = kind;
    g.control = control;
    g.target = target;
    return g;
}

}  // namespace

namespace gate {

GateSpec h(int target) { return single(GateKind::kH, target); }
GateSpec s(int target) { return single(GateKind::kS, target); }
GateSpec x(int target) { return single(GateKind::kX, target); }
GateSpec y(int target) { return single(GateKind::kY, target); }
GateSpec z(int target) { return single(GateKind::kZ, target); }

GateSpec ry(int target, double angle) {
    GateSpec g = single(GateKind::kRy, target);
    g.angle = angle;
    return g;
}

GateSpec rz(int target, double angle) {
    GateSpec g = single(GateKind::kRz, target);
    g.angle = angle;
    return g;
}

GateSpec cnot(int control, int target) { return controlled(GateKind::kCnot, control, target); }

GateSpec crz(int control, int target, double angle) {
    GateSpec g = controlled(GateKind::kCrz, control, target);
    g.angle = angle;
    return g;
}

GateSpec cu(int control, int target, Matrix unitary) {
    if (unitary.rows() != 2 || unitary.cols() != 2) {
        throw std::invalid_argument("cu: unitary must be 2x2");
    }
    require_unitary(unitary);
    GateSpec g = controlled(GateKind::kCu, control, target);
    unitary.set_unitarity(Unitarity::kUnitary);
    g.unitary = std::move(unitary);
    return g;
}

GateSpec n(int target, double damping) {
    if (!(damping >= 0.0 && damping <= 1.0)) {
        throw std::invalid_argument("n: damping must lie in [0, 1]");
    }
    GateSpec g = single(GateKind::kN, target);
    g.damping = damping;
    return g;
}

GateSpec custom(int target, Matrix m) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw std::invalid_argument("custom: matrix must be 2x2");
    }
    GateSpec g = single(GateKind::kCustom, target);
    g.unitary = std::move(m);
    return g;
}

GateSpec gphase(double angle) {
    GateSpec g;
    g.kind = GateKind::kGphase;
    g.angle = angle;
    return g;
}

}  // namespace gate

bool is_controlled(GateKind kind) {
    return kind == GateKind::kCnot || kind == GateKind::kCrz || kind == GateKind::kCu;
}

std::vector<int> gate_qubits(const GateSpec& g) {
    if (g.kind == GateKind::kGphase) return {};
    if (is_controlled(g.kind)) return {g.control, g.target};
    return {g.target};
}

Matrix matrix_of(const GateSpec& g) {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    switch (g.kind) {
        case GateKind::kH:
            return Matrix::from_rows({{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}},
                                     Unitarity::kUnitary);
        case GateKind::kS:
            return Matrix::from_rows({{1.0, 0.0}, {0.0, Complex(0.0, 1.0)}},
                                     Unitarity::kUnitary);
        case GateKind::kX:
            return Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}, Unitarity::kUnitary);
        case GateKind::kY:
            return Matrix::from_rows({{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}},
                                     Unitarity::kUnitary);
        case GateKind::kZ:
            return Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}, Unitarity::kUnitary);
        case GateKind::kRy:
            return rotation_y(g.angle);
        case GateKind::kRz:
            // diag(1, e^{i angle}): the phase-carrying convention, so that
            // rz(pi/2) is exactly the S gate.
            return Matrix::from_rows({{1.0, 0.0}, {0.0, std::polar(1.0, g.angle)}},
                                     Unitarity::kUnitary);
        case GateKind::kCnot:
            return Matrix::from_rows(
                {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}},
                Unitarity::kUnitary);
        case GateKind::kCrz:
            return Matrix::from_rows({{1, 0, 0, 0},
                                      {0, 1, 0, 0},
                                      {0, 0, 1, 0},
                                      {0, 0, 0, std::polar(1.0, g.angle)}},
                                     Unitarity::kUnitary);
        case GateKind::kCu: {
            Matrix m = Matrix::identity(4);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) m(2 + i, 2 + j) = g.unitary(i, j);
            m.set_unitarity(g.unitary.unitarity());
            return m;
        }
        case GateKind::kN: {
            Matrix m = Matrix::from_rows({{1.0, 0.0}, {0.0, g.damping}});
            m.set_unitarity(g.damping == 1.0 ? Unitarity::kUnitary : Unitarity::kNonunitary);
            return m;
        }
        case GateKind::kCustom:
            return g.unitary;
        case GateKind::kGphase: {
            Matrix m(1, 1);
            m(0, 0) = std::polar(1.0, g.angle);
            m.set_unitarity(Unitarity::kUnitary);
            return m;
        }
    }
    throw std::logic_error("matrix_of: unhandled gate kind");
}

double d_theta(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0 + 1e-12)) {
        throw std::invalid_argument("d_theta: theta must lie in [0, pi/2]");
    }
    const double c = std::cos(theta);
    return std::sqrt(4.0 - 3.0 * c * c) / (2.0 + std::numbers::sqrt3 * c);
}

Matrix u_of_d(double d) {
    if (!(d >= 0.0 && d <= 1.0)) {
        throw std::invalid_argument("u_of_d: d must lie in [0, 1]");
    }
    const double off = std::sqrt(1.0 - d * d);
    return Matrix::from_rows({{d, off}, {off, -d}}, Unitarity::kUnitary);
}

NonunitaryRealization realize_nonunitary(const Svd2x2& svd, double theta, int system_qubit,
                                         int ancilla_qubit) {
    NonunitaryRealization r;
    r.pre_rotation = gate::custom(system_qubit, svd.right_dagger);
    r.controlled_step = gate::cu(system_qubit, ancilla_qubit, u_of_d(d_theta(theta)));
    r.post_projection = gate::n(ancilla_qubit, 0.0);
    r.post_rotation = gate::custom(system_qubit, svd.left);
    return r;
}

}  // namespace ejm
