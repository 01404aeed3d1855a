// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <numbers>

#include "ejm/qmath.hpp"
#include "ejm/rng.hpp"

namespace ejm {

/// Haar-like normalized state of the given dimension (Gaussian amplitudes).
inline Vector random_state(SeedStream& stream, int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) {
        v[i] = Complex(stream.next_gaussian(), stream.next_gaussian());
    }
    return Complex(1.0 / norm(v), 0.0) * v;
}

/// Dense matrix with independent standard-Gaussian complex entries.
inline Matrix random_matrix(SeedStream& stream, int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            m(i, j) = Complex(stream.next_gaussian(), stream.next_gaussian());
        }
    return m;
}

/// Random 2x2 unitary drawn from the ZYZ form with uniform angles.
inline Matrix random_unitary_2x2(SeedStream& stream) {
    const double pi = std::numbers::pi;
    ZyzAngles a;
    a.alpha = pi * (2.0 * stream.next_unit() - 1.0);
    a.beta = pi * (2.0 * stream.next_unit() - 1.0);
    a.gamma = pi * stream.next_unit();
    a.delta = pi * (2.0 * stream.next_unit() - 1.0);
    return zyz_compose(a);
}

}  // namespace ejm
