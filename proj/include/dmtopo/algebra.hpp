#pragma once

// Dense complex 2x2 kernel: Pauli decomposition, biorthogonal eigensystems,
// closed-form propagators, Hermitian logarithms. Everything here is a pure
// function; Matrix2cd values are safe to share between workers.

#include <Eigen/Dense>
#include <complex>

#include "dmtopo/errors.hpp"

namespace dmtopo {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;
using Vector3 = Eigen::Vector3d;
using Vector3c = Eigen::Vector3cd;

/// M = alpha*sigma_0 + n . sigma, with complex alpha and n in general.
struct PauliForm {
    Complex alpha;
    Vector3c n;
};

/// Eigen-decomposition of a (generally non-Hermitian) 2x2 matrix with
/// biorthonormal left/right vectors: <L_xi|R_xi'> = delta.
/// `defective` marks a coalescing pair with a nontrivial nilpotent part
/// (exceptional point); the eigenvectors are then not populated and the
/// spectral route must not be used.
struct EigenSystem2 {
    Complex eps_plus;
    Complex eps_minus;
    Vector2 R_plus;
    Vector2 R_minus;
    Vector2 L_plus;   // stored so that L.adjoint()*R = 1
    Vector2 L_minus;
    bool defective = false;
};

PauliForm pauli_decompose(const Matrix2& M);
Matrix2 pauli_compose(const PauliForm& p);

/// Principal branch sqrt(n.n); with the +/- pairing this covers both
/// eigenvalues, and downstream quantities are branch-symmetric.
Complex pauli_mu(const Vector3c& n);

EigenSystem2 eigensystem(const Matrix2& M, double ep_tol);
EigenSystem2 eigensystem(const Matrix2& M);  // ep_tol = 1e-9 * max(1, ||M||)

/// exp(M t) via exp(alpha t)[cosh(mu t) sigma_0 + sinh(mu t)/mu n.sigma],
/// exact at exceptional points (sinh(mu t)/mu -> t as mu -> 0).
Matrix2 propagator(const Matrix2& M, double t);

/// Principal logarithm of a Hermitian positive-definite matrix.
/// Throws NotHermitian / NonPositiveSpectrum.
Matrix2 hermitian_log(const Matrix2& M);

/// exp of a Hermitian matrix through its real Pauli form.
Matrix2 hermitian_exp(const Matrix2& M);

/// Spectral norm (largest singular value).
double spectral_norm(const Matrix2& M);

double default_ep_tol(const Matrix2& M);

}  // namespace dmtopo
