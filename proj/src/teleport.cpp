// SPDX-License-Identifier: Apache-2.0
#include "ejm/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ejm {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;

void check_theta(double theta, const char* what) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0 + 1e-12)) {
        throw std::invalid_argument(std::string(what) + ": theta must lie in [0, pi/2]");
    }
}

Complex quarter(double turns) { return std::polar(1.0, turns * std::numbers::pi / 4.0); }

}  // namespace

InputState InputState::from_angles(double zeta, double xi) {
    InputState s;
    s.zeta = zeta;
    s.xi = xi;
    s.alpha = std::cos(zeta / 2.0);
    s.beta = std::polar(1.0, xi) * std::sin(zeta / 2.0);
    return s;
}

InputState InputState::from_amplitudes(Complex alpha, Complex beta, const Tolerances& tol) {
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(n2 - 1.0) > tol.unitarity) {
        throw std::invalid_argument("InputState: amplitudes must be normalized");
    }
    InputState s;
    s.alpha = alpha;
    s.beta = beta;
    s.zeta = 2.0 * std::atan2(std::abs(beta), std::abs(alpha));
    s.xi = (std::abs(beta) > 0.0 && std::abs(alpha) > 0.0)
               ? std::arg(beta) - std::arg(alpha)
               : 0.0;
    return s;
}

Vector prepare_joint_state(const InputState& input) {
    const Vector singlet{0.0, 1.0 / kSqrt2, -1.0 / kSqrt2, 0.0};
    return tensor(input.ket(), singlet);
}

BranchOutcome branch(const InputState& input, double theta, Branch label) {
    check_theta(theta, "branch");
    const Complex e = std::polar(1.0, -theta);
    const Complex rp = (1.0 + e) / kSqrt2;
    const Complex rm = (1.0 - e) / kSqrt2;
    const Complex a = input.alpha;
    const Complex b = input.beta;

    Vector psi(2);
    switch (label) {
        case Branch::k00:
            psi = {-rm * a - quarter(-3) * b, quarter(-1) * a + rp * b};
            break;
        case Branch::k01:
            psi = {-rm * a - quarter(1) * b, quarter(3) * a + rp * b};
            break;
        case Branch::k10:
            psi = {rp * a - quarter(3) * b, quarter(1) * a - rm * b};
            break;
        case Branch::k11:
            psi = {rp * a - quarter(-1) * b, quarter(-3) * a - rm * b};
            break;
        default:
            throw std::invalid_argument("branch: invalid label");
    }

    BranchOutcome out;
    out.label = label;
    out.post_state = psi;
    const double n2 = squared_norm(psi);
    out.normalization = 1.0 / std::sqrt(n2);
    out.probability = n2 / 8.0;
    return out;
}

Matrix correction_matrix(double theta, Branch label) {
    check_theta(theta, "correction_matrix");
    const Complex e = std::polar(1.0, -theta);
    const Complex pref = kSqrt2 / (3.0 - std::polar(1.0, -2.0 * theta));
    const Complex i1(0.0, 1.0);
    Matrix m(2, 2);
    switch (label) {
        case Branch::k00:
            m = Matrix::from_rows({{-1.0 - e, 1.0 + i1}, {1.0 - i1, 1.0 - e}});
            break;
        case Branch::k01:
            m = Matrix::from_rows({{-1.0 - e, -1.0 - i1}, {-1.0 + i1, 1.0 - e}});
            break;
        case Branch::k10:
            m = Matrix::from_rows({{1.0 - e, 1.0 - i1}, {1.0 + i1, -1.0 - e}});
            break;
        case Branch::k11:
            m = Matrix::from_rows({{1.0 - e, -1.0 + i1}, {-1.0 - i1, -1.0 - e}});
            break;
        default:
            throw std::invalid_argument("correction_matrix: invalid label");
    }
    Matrix out = pref * m;
    out.set_unitarity(Unitarity::kUnchecked);
    return out;
}

Matrix CorrectionFactors::reconstruct() const {
    Matrix diag(2, 2);
    diag(0, 0) = d_plus;
    diag(1, 1) = d_minus;
    return coefficient * (left * (diag * right_dagger));
}

CorrectionFactors correction_factors(double theta, Branch label) {
    check_theta(theta, "correction_factors");
    const Complex e = std::polar(1.0, -theta);
    const double c = std::cos(theta);
    const double ap = std::sqrt(6.0 + 2.0 * kSqrt3);
    const double am = std::sqrt(6.0 - 2.0 * kSqrt3);
    const double dp = std::sqrt(4.0 + 2.0 * kSqrt3 * c);
    const double dm = std::sqrt(4.0 - 2.0 * kSqrt3 * c);
    const double s3p1 = kSqrt3 + 1.0;
    const double s3m1 = kSqrt3 - 1.0;

    CorrectionFactors f;
    f.d_plus = dp;
    f.d_minus = dm;
    f.coefficient = kSqrt2 / (3.0 - std::polar(1.0, -2.0 * theta));

    switch (label) {
        case Branch::k00:
            f.left = Matrix::from_rows(
                {{(-(1.0 + e) * s3p1 - 2.0) / (ap * dp), ((1.0 + e) * s3m1 - 2.0) / (am * dm)},
                 {kSqrt2 * quarter(-1) * (kSqrt3 + e) / (ap * dp),
                  -kSqrt2 * quarter(-1) * (kSqrt3 - e) / (am * dm)}});
            f.right_dagger = Matrix::from_rows({{s3p1 / ap, kSqrt2 * quarter(-3) / ap},
                                                {-s3m1 / am, kSqrt2 * quarter(-3) / am}});
            break;
        case Branch::k01:
            f.left = Matrix::from_rows(
                {{(-(1.0 + e) * s3p1 - 2.0) / (ap * dp), (-(1.0 + e) * s3m1 + 2.0) / (am * dm)},
                 {kSqrt2 * quarter(3) * (kSqrt3 + e) / (ap * dp),
                  kSqrt2 * quarter(3) * (kSqrt3 - e) / (am * dm)}});
            f.right_dagger = Matrix::from_rows({{s3p1 / ap, kSqrt2 * quarter(1) / ap},
                                                {s3m1 / am, -kSqrt2 * quarter(1) / am}});
            break;
        case Branch::k10:
            f.left = Matrix::from_rows(
                {{(-(1.0 - e) * s3m1 + 2.0) / (am * dp), ((1.0 - e) * s3p1 + 2.0) / (ap * dm)},
                 {-kSqrt2 * quarter(1) * (kSqrt3 + e) / (am * dp),
                  kSqrt2 * quarter(1) * (kSqrt3 - e) / (ap * dm)}});
            f.right_dagger = Matrix::from_rows({{-s3m1 / am, -kSqrt2 * quarter(3) / am},
                                                {s3p1 / ap, -kSqrt2 * quarter(3) / ap}});
            break;
        case Branch::k11:
            f.left = Matrix::from_rows(
                {{((1.0 - e) * s3m1 - 2.0) / (am * dp), ((1.0 - e) * s3p1 + 2.0) / (ap * dm)},
                 {kSqrt2 * quarter(-3) * (kSqrt3 + e) / (am * dp),
                  kSqrt2 * quarter(-3) * (kSqrt3 - e) / (ap * dm)}});
            f.right_dagger = Matrix::from_rows({{s3m1 / am, kSqrt2 * quarter(-1) / am},
                                                {s3p1 / ap, -kSqrt2 * quarter(-1) / ap}});
            break;
        default:
            throw std::invalid_argument("correction_factors: invalid label");
    }
    return f;
}

CorrectionPlan correction_plan(double theta, Branch label) {
    check_theta(theta, "correction_plan");
    CorrectionPlan plan;
    plan.label = label;
    plan.a = correction_matrix(theta, label);
    plan.svd = svd_2x2(plan.a);

    const double s0 = plan.svd.singulars[0];
    const double s1 = plan.svd.singulars[1];
    plan.kraus_keep = Complex(1.0 / s0, 0.0) * plan.a;
    plan.c_magnitude_sq = 1.0 / (s0 * s0);

    // keep^dag keep = V diag(1, d^2) V^dag, so the principal square root of
    // the complement is V diag(0, sqrt(1 - d^2)) V^dag.
    const double d = s1 / s0;
    const double residual = std::sqrt(std::max(0.0, 1.0 - d * d));
    const Matrix v = dagger(plan.svd.right_dagger);
    Matrix diag(2, 2);
    diag(1, 1) = residual;
    plan.kraus_fail = v * (diag * plan.svd.right_dagger);
    plan.kraus_fail.set_unitarity(Unitarity::kUnchecked);
    return plan;
}

double branch_squared_norm(const InputState& input, double theta, Branch label) {
    check_theta(theta, "branch_squared_norm");
    // <psi_i|psi_i> = 2 + cos(theta) (s_i (|a|^2-|b|^2) + 2 Re[w_i conj(a) b])
    // with sign s and cross weight w per outcome:
    static constexpr std::array<double, 4> sign{-1.0, -1.0, 1.0, 1.0};
    static const std::array<Complex, 4> cross{Complex(1, 1), Complex(-1, -1), Complex(1, -1),
                                              Complex(-1, 1)};
    const int i = branch_index(label);
    const double pop = std::norm(input.alpha) - std::norm(input.beta);
    const Complex coh = std::conj(input.alpha) * input.beta;
    const double q = sign[i] * pop + 2.0 * (cross[i] * coh).real();
    return 2.0 + std::cos(theta) * q;
}

double success_probability(const InputState& input, double theta, Branch label) {
    return (2.0 - kSqrt3 * std::cos(theta)) / branch_squared_norm(input, theta, label);
}

double total_success_probability(double theta) {
    check_theta(theta, "total_success_probability");
    return 1.0 - (kSqrt3 / 2.0) * std::cos(theta);
}

}  // namespace ejm
