// SPDX-License-Identifier: Apache-2.0
#include "ejm/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ejm {

namespace {

void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
    }
}

}  // namespace

Vector Vector::basis_state(int dim, int index) {
    if (index < 0 || index >= dim) {
        throw std::invalid_argument("basis_state: index out of range");
    }
    Vector v(dim);
    v[index] = 1.0;
    return v;
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    m.set_unitarity(Unitarity::kUnitary);
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows,
                         Unitarity u) {
    const int r = static_cast<int>(rows.size());
    const int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    Matrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c) {
            throw std::invalid_argument("from_rows: ragged rows");
        }
        int j = 0;
        for (const Complex& z : row) m(i, j++) = z;
        ++i;
    }
    m.set_unitarity(u);
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix product: inner dimension mismatch");
    }
    Matrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    if (a.unitarity() == Unitarity::kUnitary && b.unitarity() == Unitarity::kUnitary) {
        out.set_unitarity(Unitarity::kUnitary);
    }
    return out;
}

Matrix operator*(Complex s, const Matrix& m) {
    Matrix out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = s * m(i, j);
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "matrix sum");
    Matrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "matrix difference");
    Matrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

Vector operator*(const Matrix& m, const Vector& v) {
    if (m.cols() != v.dim()) {
        throw std::invalid_argument("matvec: dimension mismatch");
    }
    Vector out(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        Complex acc{};
        for (int j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

Vector operator*(Complex s, const Vector& v) {
    Vector out(v.dim());
    for (int i = 0; i < v.dim(); ++i) out[i] = s * v[i];
    return out;
}

Vector operator+(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("vector sum: dimension mismatch");
    Vector out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vector operator-(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("vector difference: dimension mismatch");
    Vector out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
    return out;
}

Matrix dagger(const Matrix& m) {
    Matrix out(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    out.set_unitarity(m.unitarity());
    return out;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    if (a.unitarity() == Unitarity::kUnitary && b.unitarity() == Unitarity::kUnitary) {
        out.set_unitarity(Unitarity::kUnitary);
    } else if (a.unitarity() == Unitarity::kNonunitary ||
               b.unitarity() == Unitarity::kNonunitary) {
        out.set_unitarity(Unitarity::kNonunitary);
    }
    return out;
}

Vector tensor(const Vector& a, const Vector& b) {
    Vector out(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    return out;
}

Complex inner(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    Complex acc{};
    for (int i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double squared_norm(const Vector& v) {
    double acc = 0.0;
    for (int i = 0; i < v.dim(); ++i) acc += std::norm(v[i]);
    return acc;
}

double norm(const Vector& v) { return std::sqrt(squared_norm(v)); }

double fidelity(const Vector& a, const Vector& b) {
    const double na = squared_norm(a);
    const double nb = squared_norm(b);
    if (na == 0.0 || nb == 0.0) {
        throw std::invalid_argument("fidelity: zero vector");
    }
    return std::norm(inner(a, b)) / (na * nb);
}

double max_abs(const Matrix& m) {
    double worst = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j)));
    return worst;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "max_abs_diff");
    return max_abs(a - b);
}

double max_abs_diff(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double worst = 0.0;
    for (int i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

double unitarity_defect(const Matrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return max_abs_diff(dagger(m) * m, Matrix::identity(m.rows()));
}

Unitarity classify_unitarity(const Matrix& m, double tol) {
    return unitarity_defect(m) <= tol ? Unitarity::kUnitary : Unitarity::kNonunitary;
}

void require_unitary(const Matrix& m, double tol) {
    if (m.unitarity() == Unitarity::kUnitary) return;
    if (m.rows() != m.cols() || unitarity_defect(m) > tol) {
        throw std::invalid_argument("matrix is not unitary within tolerance");
    }
}

namespace {

// Normalized column orthogonal to v: (-conj(v1), conj(v0)).
std::array<Complex, 2> orthogonal_complement(const std::array<Complex, 2>& v) {
    return {-std::conj(v[1]), std::conj(v[0])};
}

// Multiplies column j of u by a phase that makes its first entry with
// |entry| > tol real positive. Returns the applied phase.
Complex fix_column_phase(Matrix& u, int j, double tol) {
    for (int i = 0; i < u.rows(); ++i) {
        const Complex z = u(i, j);
        if (std::abs(z) > tol) {
            const Complex phase = std::conj(z) / std::abs(z);
            for (int r = 0; r < u.rows(); ++r) u(r, j) *= phase;
            return phase;
        }
    }
    return 1.0;
}

}  // namespace

Svd2x2 svd_2x2(const Matrix& m, const Tolerances& tol) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw std::invalid_argument("svd_2x2: matrix must be 2x2");
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
                throw std::invalid_argument("svd_2x2: non-finite entry");
            }

    const Matrix h = dagger(m) * m;  // Hermitian PSD
    const double h00 = h(0, 0).real();
    const double h11 = h(1, 1).real();
    const Complex h01 = h(0, 1);
    const double tr = h00 + h11;
    // Cancellation-free discriminant: tr^2/4 - det == ((h00-h11)/2)^2 + |h01|^2.
    const double disc = std::hypot((h00 - h11) / 2.0, std::abs(h01));
    const double lam_hi = tr / 2.0 + disc;

    Svd2x2 out;
    const double s0 = std::sqrt(std::max(0.0, lam_hi));
    // s0 * s1 = |det m|, which avoids the subtractive eigenvalue for s1.
    const Complex det_m = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double s1 = s0 > 0.0 ? std::min(std::abs(det_m) / s0, s0) : 0.0;
    out.singulars = {s0, s1};
    out.degenerate = std::abs(out.singulars[0] - out.singulars[1]) <= tol.unitarity;

    if (out.singulars[0] <= tol.unitarity) {
        // Zero matrix: any unitary pair works, pick identities.
        out.left = Matrix::identity(2);
        out.right_dagger = Matrix::identity(2);
        out.singulars = {0.0, 0.0};
        return out;
    }

    // The shortcut below assumes m/s0 is unitary, which needs the gap to be
    // small relative to s0; the reported flag keeps the absolute threshold.
    if (out.degenerate && s0 - s1 <= tol.unitarity * s0) {
        // m is (a multiple of) a unitary; m / s0 itself is the canonical left
        // factor and the right factor absorbs the column phases.
        Matrix u = (Complex{1.0 / out.singulars[0], 0.0}) * m;
        fix_column_phase(u, 0, tol.unitarity);
        fix_column_phase(u, 1, tol.unitarity);
        u.set_unitarity(Unitarity::kUnitary);
        Matrix vd = dagger(u) * ((Complex{1.0 / out.singulars[0], 0.0}) * m);
        vd.set_unitarity(Unitarity::kUnitary);
        out.left = u;
        out.right_dagger = vd;
        return out;
    }

    // Right singular vector for the dominant eigenvalue of m^dag m. Of the two
    // analytic eigenvector expressions pick the numerically larger one.
    std::array<Complex, 2> v0;
    const std::array<Complex, 2> cand_a = {h01, Complex{lam_hi - h00, 0.0}};
    const std::array<Complex, 2> cand_b = {Complex{lam_hi - h11, 0.0}, std::conj(h01)};
    const double na = std::norm(cand_a[0]) + std::norm(cand_a[1]);
    const double nb = std::norm(cand_b[0]) + std::norm(cand_b[1]);
    if (na >= nb) {
        v0 = cand_a;
    } else {
        v0 = cand_b;
    }
    double vn = std::sqrt(std::norm(v0[0]) + std::norm(v0[1]));
    if (vn == 0.0) {
        v0 = {1.0, 0.0};
        vn = 1.0;
    }
    v0 = {v0[0] / vn, v0[1] / vn};
    const std::array<Complex, 2> v1 = orthogonal_complement(v0);

    // Left columns u_j = m v_j / s_j; the subdominant one falls back to the
    // orthogonal complement when s1 ~ 0.
    Matrix u(2, 2);
    std::array<Complex, 2> u0 = {m(0, 0) * v0[0] + m(0, 1) * v0[1],
                                 m(1, 0) * v0[0] + m(1, 1) * v0[1]};
    const double u0n = std::sqrt(std::norm(u0[0]) + std::norm(u0[1]));
    u0 = {u0[0] / u0n, u0[1] / u0n};
    std::array<Complex, 2> u1;
    if (out.singulars[1] > tol.unitarity) {
        u1 = {m(0, 0) * v1[0] + m(0, 1) * v1[1], m(1, 0) * v1[0] + m(1, 1) * v1[1]};
        // Project out any rounding-induced overlap with u0 before normalizing.
        const Complex ov = std::conj(u0[0]) * u1[0] + std::conj(u0[1]) * u1[1];
        u1 = {u1[0] - ov * u0[0], u1[1] - ov * u0[1]};
        const double u1n = std::sqrt(std::norm(u1[0]) + std::norm(u1[1]));
        if (u1n > 0.0) {
            u1 = {u1[0] / u1n, u1[1] / u1n};
        } else {
            u1 = orthogonal_complement(u0);
        }
    } else {
        u1 = orthogonal_complement(u0);
    }
    u(0, 0) = u0[0];
    u(1, 0) = u0[1];
    u(0, 1) = u1[0];
    u(1, 1) = u1[1];
    fix_column_phase(u, 0, tol.unitarity);
    fix_column_phase(u, 1, tol.unitarity);
    u.set_unitarity(Unitarity::kUnitary);

    // Right factor from the left factor and the source: row j of right_dagger
    // is u_j^dag m / s_j, completed orthogonally when s_j ~ 0.
    Matrix vd(2, 2);
    const Matrix um = dagger(u) * m;
    for (int j = 0; j < 2; ++j) {
        if (out.singulars[j] > tol.unitarity) {
            vd(j, 0) = um(j, 0) / out.singulars[j];
            vd(j, 1) = um(j, 1) / out.singulars[j];
        } else {
            const std::array<Complex, 2> row0c = {std::conj(vd(0, 0)), std::conj(vd(0, 1))};
            const auto comp = orthogonal_complement(row0c);
            vd(j, 0) = std::conj(comp[0]);
            vd(j, 1) = std::conj(comp[1]);
        }
    }
    vd.set_unitarity(Unitarity::kUnitary);

    out.left = u;
    out.right_dagger = vd;
    return out;
}

Matrix rotation_y(double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    return Matrix::from_rows({{c, -s}, {s, c}}, Unitarity::kUnitary);
}

Matrix rotation_z(double angle) {
    return Matrix::from_rows({{std::polar(1.0, -angle / 2.0), 0.0},
                              {0.0, std::polar(1.0, angle / 2.0)}},
                             Unitarity::kUnitary);
}

Matrix zyz_compose(const ZyzAngles& a) {
    Matrix m = rotation_z(a.beta) * rotation_y(a.gamma) * rotation_z(a.delta);
    m = std::polar(1.0, a.alpha) * m;
    m.set_unitarity(Unitarity::kUnitary);
    return m;
}

namespace {

double wrap_to_half_open_pi(double x) {
    // Maps into (-pi, pi].
    const double two_pi = 2.0 * std::numbers::pi;
    x = std::fmod(x, two_pi);
    if (x <= -std::numbers::pi) x += two_pi;
    if (x > std::numbers::pi) x -= two_pi;
    return x;
}

}  // namespace

ZyzAngles zyz_decompose(const Matrix& u, const Tolerances& tol) {
    if (u.rows() != 2 || u.cols() != 2) {
        throw std::invalid_argument("zyz_decompose: matrix must be 2x2");
    }
    require_unitary(u, tol.unitarity);

    const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    double alpha = std::arg(det) / 2.0;
    const Complex inv_phase = std::polar(1.0, -alpha);

    // w has unit determinant: w = [[x, -conj(y)], [y, conj(x)]].
    const Complex w00 = inv_phase * u(0, 0);
    const Complex w10 = inv_phase * u(1, 0);
    const Complex w01 = inv_phase * u(0, 1);
    const Complex w11 = inv_phase * u(1, 1);

    const double c = (std::abs(w00) + std::abs(w11)) / 2.0;
    const double s = (std::abs(w01) + std::abs(w10)) / 2.0;
    const double gamma = 2.0 * std::atan2(s, c);

    double sum;   // beta + delta
    double diff;  // beta - delta
    if (c >= s) {
        sum = 2.0 * std::arg(w11);
        diff = s > tol.unitarity ? 2.0 * std::arg(w10) : 0.0;
    } else {
        diff = 2.0 * std::arg(w10);
        sum = c > tol.unitarity ? 2.0 * std::arg(w11) : 0.0;
    }
    double beta = (sum + diff) / 2.0;
    double delta = (sum - diff) / 2.0;

    // Wrapping beta or delta by an odd multiple of 2*pi flips the sign of the
    // rotation product; compensate through the global phase.
    long flips = 0;
    const double beta_w = wrap_to_half_open_pi(beta);
    flips += std::lround((beta_w - beta) / (2.0 * std::numbers::pi));
    const double delta_w = wrap_to_half_open_pi(delta);
    flips += std::lround((delta_w - delta) / (2.0 * std::numbers::pi));
    if (flips & 1) alpha += std::numbers::pi;

    ZyzAngles out{wrap_to_half_open_pi(alpha), beta_w, gamma, delta_w};
    // Guard against residual sign errors from the branch structure above: the
    // reconstruction either matches u or -u, and the latter is fixed by one
    // more pi shift of alpha.
    if (max_abs_diff(zyz_compose(out), u) > 1e-6) {
        out.alpha = wrap_to_half_open_pi(out.alpha + std::numbers::pi);
    }
    return out;
}

}  // namespace ejm
