// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ejm/basis.hpp"
#include "ejm/qmath.hpp"

namespace ejm {

/// Normalized single-qubit state alpha|0> + beta|1>, together with a rotation
/// parameterization (zeta, xi) that prepares it from |0> as
/// Rz(xi) Ry(zeta) |0> = cos(zeta/2)|0> + e^{i xi} sin(zeta/2)|1>.
/// States given directly as amplitudes carry the canonical angles of the
/// equivalent state with real nonnegative alpha (global phase dropped).
struct InputState {
    Complex alpha;
    Complex beta;
    double zeta = 0.0;
    double xi = 0.0;

    static InputState from_angles(double zeta, double xi);
    /// Requires |alpha|^2 + |beta|^2 = 1 within tolerance.
    static InputState from_amplitudes(Complex alpha, Complex beta,
                                      const Tolerances& tol = kDefaultTol);

    Vector ket() const { return Vector{alpha, beta}; }
};

/// |psi0>_1 (x) (|01> - |10>)_23 / sqrt(2), qubit 1 most significant.
Vector prepare_joint_state(const InputState& input);

/// Receiver-side state conditioned on one measurement outcome.
/// post_state is the unnormalized two-component branch state; normalization
/// is N_i = 1/||post_state||; probability is p_i = 1/(8 N_i^2).
struct BranchOutcome {
    Branch label = Branch::k00;
    Vector post_state;
    double normalization = 0.0;
    double probability = 0.0;
};

BranchOutcome branch(const InputState& input, double theta, Branch label);

/// The 2x2 map taking the unnormalized branch state back to the input state
/// exactly: correction_matrix(theta, i) * branch(...).post_state = input.ket().
/// Nonunitary except at theta = pi/2, where A A^dag = I/2.
Matrix correction_matrix(double theta, Branch label);

/// Closed-form factorization A = coefficient * left * diag(d_plus, d_minus)
/// * right_dagger with d_pm = sqrt(4 +- 2 sqrt(3) cos theta) and coefficient
/// sqrt(2)/(3 - e^{-2 i theta}). An independent construction of the same
/// factors that svd_2x2 finds numerically (up to per-column phases).
struct CorrectionFactors {
    Matrix left;
    double d_plus = 0.0;
    double d_minus = 0.0;
    Matrix right_dagger;
    Complex coefficient;

    Matrix reconstruct() const;
};

CorrectionFactors correction_factors(double theta, Branch label);

/// Measurement pair implementing the correction probabilistically.
/// kraus_keep = A / s_max(A), the largest-singular-value-1 rescaling (equal to
/// left * N(d_theta) * right_dagger of the generic SVD); kraus_fail is the
/// principal square root of I - keep^dag keep. c_magnitude_sq = 1/s_max^2 is
/// the squared magnitude of the rescaling coefficient, 2 - sqrt(3) cos theta.
struct CorrectionPlan {
    Branch label = Branch::k00;
    Matrix a;
    Svd2x2 svd;
    Matrix kraus_keep;
    Matrix kraus_fail;
    double c_magnitude_sq = 0.0;
};

CorrectionPlan correction_plan(double theta, Branch label);

/// <psi_i|psi_i> for the unnormalized branch state, via the closed form
/// 2 + cos(theta) * (s_i (|alpha|^2 - |beta|^2) + 2 Re[w_i conj(alpha) beta]).
double branch_squared_norm(const InputState& input, double theta, Branch label);

/// Probability that the correction's keep branch fires for this outcome:
/// N_i^2 (2 - sqrt(3) cos theta), evaluated through branch_squared_norm.
double success_probability(const InputState& input, double theta, Branch label);

/// Outcome-averaged success probability 1 - (sqrt(3)/2) cos theta;
/// independent of the input state.
double total_success_probability(double theta);

}  // namespace ejm
