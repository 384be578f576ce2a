#pragma once

// Test-only oracles, independent of the library's evaluation paths.

#include <Eigen/Dense>
#include <complex>
#include <random>

namespace oracles {

using Matrix2 = Eigen::Matrix2cd;

// Term-by-term Taylor summation of e^{Mt}, 30 terms.
inline Matrix2 taylor_exp(const Matrix2& M, double t, int terms = 30) {
    Matrix2 sum = Matrix2::Identity();
    Matrix2 term = Matrix2::Identity();
    for (int n = 1; n <= terms; ++n) {
        term = term * (M * t) / static_cast<double>(n);
        sum += term;
    }
    return sum;
}

inline Matrix2 random_complex(std::mt19937& rng, double scale = 1.0) {
    std::normal_distribution<double> g;
    Matrix2 M;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) M(i, j) = std::complex<double>(g(rng), g(rng)) * scale;
    return M;
}

inline Matrix2 random_hermitian(std::mt19937& rng, double scale = 1.0) {
    const Matrix2 M = random_complex(rng, scale);
    return 0.5 * (M + M.adjoint());
}

}  // namespace oracles
