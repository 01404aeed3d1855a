// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "ejm/qmath.hpp"
#include "ejm/rng.hpp"
#include "ejm/sampling.hpp"

using namespace ejm;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// Reference rotations built from scratch so reconstruction checks do not
// reuse the library's own rotation helpers.
Matrix ry_ref(double t) {
    Matrix m(2, 2);
    m(0, 0) = std::cos(t / 2);
    m(0, 1) = -std::sin(t / 2);
    m(1, 0) = std::sin(t / 2);
    m(1, 1) = std::cos(t / 2);
    return m;
}

Matrix rz_ref(double t) {
    Matrix m(2, 2);
    m(0, 0) = std::exp(kI * (-t / 2.0));
    m(1, 1) = std::exp(kI * (t / 2.0));
    return m;
}

Matrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return Matrix::from_rows({{s, s}, {s, -s}}, Unitarity::kUnitary);
}

}  // namespace

TEST_CASE("tensor: identity and basis-vector cases") {
    CHECK(max_abs_diff(tensor(Matrix::identity(2), Matrix::identity(2)),
                       Matrix::identity(4)) == 0.0);

    Matrix ket1(2, 1);
    ket1(1, 0) = 1.0;
    Matrix ket0(2, 1);
    ket0(0, 0) = 1.0;
    const Matrix prod = tensor(ket1, ket0);
    REQUIRE(prod.rows() == 4);
    REQUIRE(prod.cols() == 1);
    CHECK(prod(0, 0) == Complex{});
    CHECK(prod(1, 0) == Complex{});
    CHECK(prod(2, 0) == Complex{1.0});
    CHECK(prod(3, 0) == Complex{});
}

TEST_CASE("tensor: H on the first qubit matches the brute-force 4x4 product") {
    // (H (x) I)|psi> computed entry-by-entry from the definition.
    const Matrix hi = tensor(hadamard(), Matrix::identity(2));
    Matrix ref(4, 4);
    const Matrix h = hadamard();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    ref(a * 2 + b, c * 2 + d) = h(a, c) * (b == d ? 1.0 : 0.0);
    CHECK(max_abs_diff(hi, ref) == 0.0);
    CHECK(hi.unitarity() == Unitarity::kUnitary);
}

TEST_CASE("tensor: associativity on random inputs") {
    SeedStream stream(11);
    for (int rep = 0; rep < 200; ++rep) {
        const Matrix a = random_matrix(stream, 2, 2);
        const Matrix b = random_matrix(stream, 2, 2);
        const Matrix c = random_matrix(stream, 2, 2);
        CHECK(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) <= 1e-14);
    }
}

TEST_CASE("tensor: unitarity flag combines") {
    const Matrix u = hadamard();
    Matrix n = Matrix::from_rows({{1.0, 0.0}, {0.0, 0.5}});
    n.set_unitarity(Unitarity::kNonunitary);
    CHECK(tensor(u, u).unitarity() == Unitarity::kUnitary);
    CHECK(tensor(u, n).unitarity() == Unitarity::kNonunitary);
    Matrix unknown = Matrix::from_rows({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(tensor(u, unknown).unitarity() == Unitarity::kUnchecked);
}

TEST_CASE("dagger involution and matvec contracts") {
    SeedStream stream(12);
    const Matrix m = random_matrix(stream, 2, 2);
    CHECK(max_abs_diff(dagger(dagger(m)), m) == 0.0);

    const Vector v = random_state(stream, 2);
    const Vector w = m * v;
    Complex expect0 = m(0, 0) * v[0] + m(0, 1) * v[1];
    CHECK(std::abs(w[0] - expect0) == 0.0);

    CHECK_THROWS_AS(m * Vector(3), std::invalid_argument);
    CHECK_THROWS_AS(inner(Vector(2), Vector(4)), std::invalid_argument);
}

TEST_CASE("svd_2x2: identity under the fixed convention") {
    const Svd2x2 svd = svd_2x2(Matrix::identity(2));
    CHECK(svd.degenerate);
    CHECK(svd.singulars[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(svd.singulars[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_abs_diff(svd.left, Matrix::identity(2)) <= 1e-14);
    CHECK(max_abs_diff(svd.right_dagger, Matrix::identity(2)) <= 1e-14);
}

TEST_CASE("svd_2x2: reconstruction oracle on random matrices") {
    SeedStream stream(13);
    const Matrix eye = Matrix::identity(2);
    for (int rep = 0; rep < 1000; ++rep) {
        const Matrix m = random_matrix(stream, 2, 2);
        const Svd2x2 svd = svd_2x2(m);
        REQUIRE(svd.singulars[0] >= svd.singulars[1]);
        REQUIRE(svd.singulars[1] >= 0.0);
        CHECK(max_abs_diff(dagger(svd.left) * svd.left, eye) <= 1e-12);
        CHECK(max_abs_diff(svd.right_dagger * dagger(svd.right_dagger), eye) <= 1e-12);
        Matrix diag(2, 2);
        diag(0, 0) = svd.singulars[0];
        diag(1, 1) = svd.singulars[1];
        CHECK(max_abs_diff(svd.left * (diag * svd.right_dagger), m) <= 1e-10);
    }
}

TEST_CASE("svd_2x2: unitary inputs have unit singular values") {
    SeedStream stream(14);
    for (int rep = 0; rep < 200; ++rep) {
        const Svd2x2 svd = svd_2x2(random_unitary_2x2(stream));
        CHECK(std::abs(svd.singulars[0] - 1.0) <= 1e-12);
        CHECK(std::abs(svd.singulars[1] - 1.0) <= 1e-12);
        CHECK(svd.degenerate);
    }
}

TEST_CASE("svd_2x2: rank-deficient and zero matrices") {
    Matrix rank1(2, 2);
    rank1(0, 0) = 3.0;
    rank1(0, 1) = 4.0;  // rows (3,4) and (0,0)
    const Svd2x2 svd = svd_2x2(rank1);
    CHECK(svd.singulars[0] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(svd.singulars[1] == doctest::Approx(0.0).epsilon(1e-12));
    Matrix diag(2, 2);
    diag(0, 0) = svd.singulars[0];
    CHECK(max_abs_diff(svd.left * (diag * svd.right_dagger), rank1) <= 1e-10);

    const Svd2x2 zero = svd_2x2(Matrix(2, 2));
    CHECK(zero.singulars[0] == 0.0);
    CHECK(zero.degenerate);

    Matrix bad(2, 2);
    bad(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(svd_2x2(bad), std::invalid_argument);
    CHECK_THROWS_AS(svd_2x2(Matrix(3, 3)), std::invalid_argument);
}

TEST_CASE("svd_2x2: tiny matrices with unequal spectra keep unitary factors") {
    // the gap is below the absolute degeneracy threshold, but the factors
    // must not degrade into a rescaled copy of the source
    Matrix tiny(2, 2);
    tiny(0, 0) = 1e-12;
    tiny(1, 1) = 1e-13;
    const Svd2x2 svd = svd_2x2(tiny);
    CHECK(svd.degenerate);
    CHECK(unitarity_defect(svd.left) <= 1e-12);
    CHECK(unitarity_defect(svd.right_dagger) <= 1e-12);
    Matrix diag(2, 2);
    diag(0, 0) = svd.singulars[0];
    diag(1, 1) = svd.singulars[1];
    CHECK(max_abs_diff(svd.left * (diag * svd.right_dagger), tiny) <= 1e-24);
    CHECK(svd.singulars[0] == doctest::Approx(1e-12).epsilon(1e-10));
    CHECK(svd.singulars[1] == doctest::Approx(1e-13).epsilon(1e-10));
}

TEST_CASE("zyz_decompose: identity and Hadamard") {
    const ZyzAngles id = zyz_decompose(Matrix::identity(2));
    CHECK(id.alpha == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(id.beta == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(id.gamma == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(id.delta == doctest::Approx(0.0).epsilon(1e-14));

    const ZyzAngles h = zyz_decompose(hadamard());
    CHECK(h.alpha == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(h.beta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(h.gamma == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(h.delta == doctest::Approx(kPi).epsilon(1e-12));
    // Independent reconstruction: e^{i pi/2} Ry(pi/2) Rz(pi).
    const Matrix rebuilt = std::exp(kI * h.alpha) *
                           (rz_ref(h.beta) * (ry_ref(h.gamma) * rz_ref(h.delta)));
    CHECK(max_abs_diff(rebuilt, hadamard()) <= 1e-12);
}

TEST_CASE("zyz_decompose: reconstruction oracle on random unitaries") {
    SeedStream stream(15);
    for (int rep = 0; rep < 1000; ++rep) {
        const Matrix u = random_unitary_2x2(stream);
        const ZyzAngles a = zyz_decompose(u);
        CHECK(a.gamma >= 0.0);
        CHECK(a.gamma <= kPi + 1e-12);
        CHECK(std::abs(a.beta) <= kPi + 1e-12);
        CHECK(std::abs(a.delta) <= kPi + 1e-12);
        const Matrix rebuilt = std::exp(kI * a.alpha) *
                               (rz_ref(a.beta) * (ry_ref(a.gamma) * rz_ref(a.delta)));
        CHECK(max_abs_diff(rebuilt, u) <= 1e-10);
    }
}

TEST_CASE("zyz_decompose: rejects non-unitary input") {
    Matrix m(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = 1.0;
    CHECK_THROWS_AS(zyz_decompose(m), std::invalid_argument);
}

TEST_CASE("fidelity is phase-insensitive and scale-insensitive") {
    SeedStream stream(16);
    const Vector v = random_state(stream, 4);
    const Vector w = Complex(std::polar(2.5, 1.1)) * v;
    CHECK(fidelity(v, w) == doctest::Approx(1.0).epsilon(1e-12));
}
