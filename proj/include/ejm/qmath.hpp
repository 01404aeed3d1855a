// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ejm {

using Complex = std::complex<double>;

/// Central numeric tolerances. Every approximate comparison in the library
/// routes through one of these two knobs.
struct Tolerances {
    double equality = 1e-10;   // state/matrix equality, reconstruction checks
    double unitarity = 1e-12;  // ||M^dag M - I||_max for unitarity decisions
};

inline constexpr Tolerances kDefaultTol{};

enum class Unitarity { kUnchecked, kUnitary, kNonunitary };

/// Dense complex column vector. Dimension is a power of two when the vector
/// holds qubit amplitudes, but the type itself is agnostic.
class Vector {
public:
    Vector() = default;
    explicit Vector(int dim) : amps_(static_cast<std::size_t>(dim)) {}
    Vector(std::initializer_list<Complex> amps) : amps_(amps) {}

    static Vector basis_state(int dim, int index);

    int dim() const { return static_cast<int>(amps_.size()); }
    Complex& operator[](int i) { return amps_[static_cast<std::size_t>(i)]; }
    const Complex& operator[](int i) const { return amps_[static_cast<std::size_t>(i)]; }

    const std::vector<Complex>& amplitudes() const { return amps_; }

private:
    std::vector<Complex> amps_;
};

/// Dense row-major complex matrix with a tri-state unitarity tag. The tag is
/// only ever set to kUnitary by constructions that guarantee it; consumers
/// that need certainty call unitarity_defect().
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), m_(static_cast<std::size_t>(rows) * cols) {}

    static Matrix identity(int n);
    static Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows,
                            Unitarity u = Unitarity::kUnchecked);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Complex& operator()(int r, int c) { return m_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Complex& operator()(int r, int c) const {
        return m_[static_cast<std::size_t>(r) * cols_ + c];
    }

    Unitarity unitarity() const { return unitarity_; }
    void set_unitarity(Unitarity u) { unitarity_ = u; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> m_;
    Unitarity unitarity_ = Unitarity::kUnchecked;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex s, const Matrix& m);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& m, const Vector& v);
Vector operator*(Complex s, const Vector& v);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);

Matrix dagger(const Matrix& m);
Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);

/// <a|b> with the conjugate on the left argument.
Complex inner(const Vector& a, const Vector& b);
double norm(const Vector& v);
double squared_norm(const Vector& v);

/// |<a|b>|^2 / (||a||^2 ||b||^2): phase-insensitive state equality in [0,1].
double fidelity(const Vector& a, const Vector& b);

double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(const Vector& a, const Vector& b);

/// ||M^dag M - I||_max; 0 for a perfect unitary.
double unitarity_defect(const Matrix& m);

/// Computes the defect and classifies, ignoring any stored tag.
Unitarity classify_unitarity(const Matrix& m, double tol = kDefaultTol.unitarity);

/// Throws std::invalid_argument unless m is square and unitary within tol.
void require_unitary(const Matrix& m, double tol = kDefaultTol.unitarity);

/// Result of the fixed-convention 2x2 singular value decomposition:
/// m = left * diag(singulars) * right_dagger, singulars descending.
///
/// Convention: the first entry of each left column whose modulus exceeds the
/// unitarity tolerance is made real positive, and the right factor is then
/// derived from the left factor and the source matrix. `degenerate` flags
/// |s0 - s1| within tolerance; the factors are still valid, their columns are
/// just one choice among the continuum.
struct Svd2x2 {
    Matrix left;
    std::array<double, 2> singulars{};
    Matrix right_dagger;
    bool degenerate = false;
};

Svd2x2 svd_2x2(const Matrix& m, const Tolerances& tol = kDefaultTol);

/// Angles with u = exp(i*alpha) Rz(beta) Ry(gamma) Rz(delta), in the standard
/// rotation convention Rz(t) = exp(-i t Z/2), Ry(t) = exp(-i t Y/2).
/// Ranges: gamma in [0, pi]; alpha, beta, delta in (-pi, pi].
struct ZyzAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

ZyzAngles zyz_decompose(const Matrix& u, const Tolerances& tol = kDefaultTol);

/// Standard rotation matrices (no extra global phase).
Matrix rotation_y(double angle);
Matrix rotation_z(double angle);

/// exp(i*alpha) Rz(beta) Ry(gamma) Rz(delta) -- the reconstruction map for
/// ZyzAngles, exposed so callers can build unitaries from angles.
Matrix zyz_compose(const ZyzAngles& a);

}  // namespace ejm
