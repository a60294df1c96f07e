#pragma once

// Seeded generators and comparison helpers shared by the test suites.

#include <array>
#include <cmath>
#include <random>

#include "seqsteer/engine.hpp"
#include "seqsteer/linalg.hpp"

namespace seqsteer::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline BlochVector random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    for (;;) {
        const double x = gauss(rng), y = gauss(rng), z = gauss(rng);
        const double n = std::sqrt(x * x + y * y + z * z);
        if (n > 1e-6) return BlochVector(x / n, y / n, z / n);
    }
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> gauss;
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) m.at(r, c) = Complex(gauss(rng), gauss(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
    const ComplexMatrix g = random_matrix(rng, dim);
    ComplexMatrix h = g + g.adjoint();
    h *= 0.5;
    return h;
}

// G G^dag / tr, PSD with unit trace.
inline ComplexMatrix random_density(std::mt19937_64& rng, std::size_t dim) {
    const ComplexMatrix g = random_matrix(rng, dim);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace();
    return rho;
}

inline Ket2 random_pure_state(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    for (;;) {
        Ket2 psi{Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng))};
        const double n = std::sqrt(std::norm(psi[0]) + std::norm(psi[1]));
        if (n > 1e-6) return {psi[0] / n, psi[1] / n};
    }
}

// Rotation matrix from a uniformly random unit quaternion, row-major 3x3.
inline std::array<double, 9> random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    double q0 = gauss(rng), q1 = gauss(rng), q2 = gauss(rng), q3 = gauss(rng);
    const double n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
    q0 /= n, q1 /= n, q2 /= n, q3 /= n;
    return {1 - 2 * (q2 * q2 + q3 * q3), 2 * (q1 * q2 - q0 * q3), 2 * (q1 * q3 + q0 * q2),
            2 * (q1 * q2 + q0 * q3), 1 - 2 * (q1 * q1 + q3 * q3), 2 * (q2 * q3 - q0 * q1),
            2 * (q1 * q3 - q0 * q2), 2 * (q2 * q3 + q0 * q1), 1 - 2 * (q1 * q1 + q2 * q2)};
}

inline BlochVector rotate(const std::array<double, 9>& r, const BlochVector& v) {
    return BlochVector::normalized(r[0] * v.x + r[1] * v.y + r[2] * v.z,
                                   r[3] * v.x + r[4] * v.y + r[5] * v.z,
                                   r[6] * v.x + r[7] * v.y + r[8] * v.z);
}

}  // namespace seqsteer::testing
