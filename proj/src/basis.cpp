// SPDX-License-Identifier: Apache-2.0
#include "ejm/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ejm {

Branch branch_from_bits(int m1, int m2) {
    if ((m1 & ~1) || (m2 & ~1)) {
        throw std::invalid_argument("branch_from_bits: bits must be 0 or 1");
    }
    return static_cast<Branch>((m1 << 1) | m2);
}

std::string branch_name(Branch b) {
    static const std::array<const char*, 4> names{"00", "01", "10", "11"};
    return names[static_cast<std::size_t>(branch_index(b))];
}

namespace {

void check_theta(double theta, const char* what) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0 + 1e-12)) {
        throw std::invalid_argument(std::string(what) + ": theta must lie in [0, pi/2]");
    }
}

Complex unit_phase(double quarter_turns) {
    return std::polar(1.0, quarter_turns * std::numbers::pi / 4.0);
}

}  // namespace

EjmBasis build_basis(double theta) {
    check_theta(theta, "build_basis");
    EjmBasis basis;
    basis.theta = theta;
    const Complex e = std::polar(1.0, -theta);  // e^{-i theta}
    basis.r_plus = (1.0 + e) / std::numbers::sqrt2;
    basis.r_minus = (1.0 - e) / std::numbers::sqrt2;
    const Complex rp = basis.r_plus;
    const Complex rm = basis.r_minus;

    // Rows as printed; the dagger turns each row into a column of conjugated
    // entries. This reading is the one under which the four states are the
    // eigenvectors rotated onto |m1 m2> by ejm_circuit.
    const std::array<std::array<Complex, 4>, 4> rows{{
        {unit_phase(-1), rm, rp, unit_phase(-3)},
        {unit_phase(3), rm, rp, unit_phase(1)},
        {unit_phase(1), -rp, -rm, unit_phase(3)},
        {unit_phase(-3), -rp, -rm, unit_phase(-1)},
    }};
    for (int i = 0; i < 4; ++i) {
        Vector v(4);
        for (int k = 0; k < 4; ++k) v[k] = std::conj(rows[i][k]) / 2.0;
        basis.states[i] = v;
    }
    return basis;
}

TetrahedronReport reduced_tetrahedron(const EjmBasis& basis, TraceSide side) {
    TetrahedronReport report;
    report.side = side;

    std::array<double, 4> radii{};
    for (int i = 0; i < 4; ++i) {
        const Vector& psi = basis.states[i];
        // rho over the kept qubit; amplitude index is (q0 q1) with q0 the
        // more significant bit.
        Complex r00{}, r01{}, r11{};
        for (int kept = 0; kept < 2; ++kept)
            for (int kept2 = 0; kept2 < 2; ++kept2)
                for (int traced = 0; traced < 2; ++traced) {
                    int a, b;
                    if (side == TraceSide::kTraceOutSecond) {
                        a = (kept << 1) | traced;
                        b = (kept2 << 1) | traced;
                    } else {
                        a = (traced << 1) | kept;
                        b = (traced << 1) | kept2;
                    }
                    const Complex term = psi[a] * std::conj(psi[b]);
                    if (kept == 0 && kept2 == 0) r00 += term;
                    if (kept == 0 && kept2 == 1) r01 += term;
                    if (kept == 1 && kept2 == 1) r11 += term;
                }
        report.bloch_vectors[i] = {2.0 * r01.real(), -2.0 * r01.imag(),
                                   (r00 - r11).real()};
        const auto& v = report.bloch_vectors[i];
        radii[i] = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    }

    double mean_radius = 0.0;
    for (double r : radii) mean_radius += r / 4.0;
    report.common_radius = mean_radius;
    report.degenerate = mean_radius <= 1e-12;
    if (!report.degenerate) {
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                const auto& a = report.bloch_vectors[i];
                const auto& b = report.bloch_vectors[j];
                const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
                report.pairwise_cosines.push_back(dot / (radii[i] * radii[j]));
            }
    }
    return report;
}

double concurrence(const Vector& state, const Tolerances& tol) {
    if (state.dim() != 4) {
        throw std::invalid_argument("concurrence: state must be a two-qubit vector");
    }
    if (std::abs(squared_norm(state) - 1.0) > tol.equality) {
        throw std::invalid_argument("concurrence: state must be normalized");
    }
    static const Matrix syy = tensor(matrix_of(gate::y(0)), matrix_of(gate::y(0)));
    const Vector flipped = syy * state;
    Complex acc{};
    for (int k = 0; k < 4; ++k) acc += state[k] * flipped[k];  // <psi*| ... |psi>
    return std::abs(acc);
}

std::vector<GateSpec> ejm_circuit(double theta) {
    check_theta(theta, "ejm_circuit");
    return {
        gate::cnot(0, 1),
        gate::h(0),
        gate::crz(0, 1, std::numbers::pi / 2.0 - theta),
        gate::s(0),
        gate::s(1),
        gate::h(0),
        gate::h(1),
    };
}

Complex ejm_outcome_phase(Branch b) {
    const double sign = (branch_m1(b) ^ branch_m2(b)) ? -1.0 : 1.0;
    return Complex(0.0, sign);
}

}  // namespace ejm
