#include "dmtopo/algebra.hpp"

#include <cmath>

namespace dmtopo {

namespace {
constexpr Complex I{0.0, 1.0};

// sinh(z)/z, series below |z| = 1e-6 to avoid cancellation.
Complex sinhc(Complex z) {
    if (std::abs(z) < 1e-6) {
        const Complex z2 = z * z;
        return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0);
    }
    return std::sinh(z) / z;
}
}  // namespace

PauliForm pauli_decompose(const Matrix2& M) {
    PauliForm p;
    p.alpha = 0.5 * (M(0, 0) + M(1, 1));
    p.n[0] = 0.5 * (M(0, 1) + M(1, 0));
    p.n[1] = 0.5 * I * (M(0, 1) - M(1, 0));
    p.n[2] = 0.5 * (M(0, 0) - M(1, 1));
    return p;
}

Matrix2 pauli_compose(const PauliForm& p) {
    Matrix2 M;
    M(0, 0) = p.alpha + p.n[2];
    M(0, 1) = p.n[0] - I * p.n[1];
    M(1, 0) = p.n[0] + I * p.n[1];
    M(1, 1) = p.alpha - p.n[2];
    return M;
}

Complex pauli_mu(const Vector3c& n) {
    const Complex nn = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
    Complex mu = std::sqrt(nn);
    if (mu.real() < 0.0) mu = -mu;
    return mu;
}

double spectral_norm(const Matrix2& M) {
    return M.jacobiSvd().singularValues()(0);
}

double default_ep_tol(const Matrix2& M) {
    // sqrt(machine-eps) scale: an O(eps) matrix perturbation moves the
    // eigenvalue splitting by O(sqrt(eps)) near a defective point
    return 1e-7 * std::max(1.0, M.norm());
}

EigenSystem2 eigensystem(const Matrix2& M, double ep_tol) {
    const PauliForm p = pauli_decompose(M);
    const Complex mu = pauli_mu(p.n);
    const double nnorm = p.n.norm();

    EigenSystem2 es;
    es.eps_plus = p.alpha + mu;
    es.eps_minus = p.alpha - mu;

    if (nnorm < ep_tol) {
        // scalar matrix: any basis is an eigenbasis
        es.R_plus = Vector2(1.0, 0.0);
        es.R_minus = Vector2(0.0, 1.0);
        es.L_plus = es.R_plus;
        es.L_minus = es.R_minus;
        return es;
    }
    if (std::abs(mu) < ep_tol) {
        es.defective = true;
        return es;
    }

    // Right eigenvectors of n.sigma for +/- mu; pick the better-conditioned
    // column form.
    const Complex nz = p.n[2];
    const Complex nm = p.n[0] - I * p.n[1];  // (0,1) entry
    const Complex np = p.n[0] + I * p.n[1];  // (1,0) entry
    auto right_vec = [&](Complex eig) {
        Vector2 a(nm, eig - nz);        // from first row of (n.sigma - eig)
        Vector2 b(eig + nz, np);        // from second row
        return (a.norm() >= b.norm()) ? a : b;
    };
    Vector2 rp = right_vec(mu);
    Vector2 rm = right_vec(-mu);
    rp.normalize();
    rm.normalize();

    // Left vectors from the inverse of the right-eigenvector matrix, so that
    // biorthonormality holds by construction.
    Matrix2 R;
    R.col(0) = rp;
    R.col(1) = rm;
    const Complex det = R(0, 0) * R(1, 1) - R(0, 1) * R(1, 0);
    Matrix2 Rinv;
    Rinv << R(1, 1) / det, -R(0, 1) / det, -R(1, 0) / det, R(0, 0) / det;

    es.R_plus = rp;
    es.R_minus = rm;
    es.L_plus = Rinv.row(0).adjoint();   // <L_+| = first row of R^-1
    es.L_minus = Rinv.row(1).adjoint();
    return es;
}

EigenSystem2 eigensystem(const Matrix2& M) {
    return eigensystem(M, default_ep_tol(M));
}

Matrix2 propagator(const Matrix2& M, double t) {
    const PauliForm p = pauli_decompose(M);
    const Complex mu = pauli_mu(p.n);
    const Complex mut = mu * t;
    const Complex scale = std::exp(p.alpha * t);
    PauliForm q;
    q.alpha = scale * std::cosh(mut);
    const Complex s = scale * t * sinhc(mut);  // = scale * sinh(mu t)/mu
    q.n = s * p.n;
    return pauli_compose(q);
}

Matrix2 hermitian_exp(const Matrix2& M) {
    if ((M - M.adjoint()).norm() > 1e-10 * std::max(1.0, M.norm()))
        throw NotHermitian("hermitian_exp: matrix is not Hermitian");
    const PauliForm p = pauli_decompose(M);
    const double a = p.alpha.real();
    const Vector3 n = p.n.real();
    const double r = n.norm();
    PauliForm q;
    q.alpha = std::exp(a) * std::cosh(r);
    const double s = (r < 1e-8) ? std::exp(a) : std::exp(a) * std::sinh(r) / r;
    q.n = s * n.cast<Complex>();
    return pauli_compose(q);
}

Matrix2 hermitian_log(const Matrix2& M) {
    if ((M - M.adjoint()).norm() > 1e-10 * std::max(1.0, M.norm()))
        throw NotHermitian("hermitian_log: matrix is not Hermitian");
    const PauliForm p = pauli_decompose(M);
    const double a = p.alpha.real();
    const Vector3 n = p.n.real();
    const double r = n.norm();
    const double lo = a - r;
    const double hi = a + r;
    if (lo <= 0.0)
        throw NonPositiveSpectrum("hermitian_log: eigenvalue <= 0");
    PauliForm q;
    q.alpha = 0.5 * (std::log(hi) + std::log(lo));
    const double nr = 0.5 * (std::log(hi) - std::log(lo));
    q.n = (r < 1e-300) ? Vector3c::Zero() : Vector3c((nr / r) * n.cast<Complex>());
    return pauli_compose(q);
}

}  // namespace dmtopo
