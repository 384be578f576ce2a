#include "dmtopo/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

namespace dmtopo {

namespace {
constexpr Complex I{0.0, 1.0};

Matrix2 hermitize(const Matrix2& M) {
    return 0.5 * (M + M.adjoint());
}
}  // namespace

std::pair<double, Vector3> correlation_bloch(const Matrix2& C) {
    const PauliForm p = pauli_decompose(C);
    return {p.alpha.real(), p.n.real()};
}

CorrelationField initial_state(const InitialStateSpec& spec, const std::vector<double>& kgrid) {
    if (spec.a <= 0.0 || spec.b <= 0.0)
        throw InvalidParameter("initial_state: a and b must be > 0");
    CorrelationField field;
    field.kgrid = kgrid;
    field.time = 0.0;
    field.blocks.reserve(kgrid.size());
    for (double k : kgrid) {
        const Vector3 n(0.0, spec.b * std::sin(k), spec.a + spec.b * std::cos(k));
        const double r = n.norm();
        const double f = (r > 0.0) ? std::tanh(r) / r : 1.0;
        PauliForm p;
        p.alpha = 0.5;
        p.n = (-0.5 * f) * n.cast<Complex>();
        field.blocks.push_back(pauli_compose(p));
    }
    return field;
}

CorrelationField evolve_propagator(const std::vector<BlochBlock>& blocks,
                                   const CorrelationField& C0, double t) {
    CorrelationField out;
    out.kgrid = C0.kgrid;
    out.time = t;
    out.blocks.reserve(C0.blocks.size());
    for (size_t i = 0; i < C0.blocks.size(); ++i) {
        const Matrix2 P = propagator(blocks[i].X_tilde_k, t);
        out.blocks.push_back(hermitize(P * C0.blocks[i] * P.adjoint()));
    }
    return out;
}

CorrelationField evolve_spectral(const std::vector<BlochBlock>& blocks,
                                 const CorrelationField& C0, double t) {
    CorrelationField out;
    out.kgrid = C0.kgrid;
    out.time = t;
    out.blocks.reserve(C0.blocks.size());
    for (size_t i = 0; i < C0.blocks.size(); ++i) {
        const EigenSystem2 es = eigensystem(blocks[i].X_tilde_k);
        if (es.defective)
            throw DefectiveBlock("evolve_spectral: defective block (exceptional point)");
        const Complex eps[2] = {es.eps_plus, es.eps_minus};
        const Vector2 R[2] = {es.R_plus, es.R_minus};
        const Vector2 L[2] = {es.L_plus, es.L_minus};
        Matrix2 C = Matrix2::Zero();
        for (int xi = 0; xi < 2; ++xi) {
            for (int xj = 0; xj < 2; ++xj) {
                const Complex weight = std::exp((eps[xi] + std::conj(eps[xj])) * t);
                const Complex overlap = (L[xi].adjoint() * C0.blocks[i] * L[xj]).value();
                C += weight * overlap * (R[xi] * R[xj].adjoint());
            }
        }
        out.blocks.push_back(hermitize(C));
    }
    return out;
}

Trajectory evolve_bloch_ode(const std::vector<BlochBlock>& blocks, const CorrelationField& C0,
                            const std::vector<double>& times, double dt_max) {
    if (dt_max <= 0.0) throw InvalidParameter("evolve_bloch_ode: dt_max must be > 0");
    const size_t nk = C0.blocks.size();

    struct State {
        double alpha;
        Vector3 n;
    };
    std::vector<State> state(nk);
    std::vector<double> alpha_X(nk);
    std::vector<Vector3> re_nX(nk), im_nX(nk);
    std::vector<double> step(nk);
    for (size_t i = 0; i < nk; ++i) {
        (void)pt_decompose(blocks[i]);  // rejects non-PT-form blocks
        auto [a, n] = correlation_bloch(C0.blocks[i]);
        state[i] = {a, n};
        const PauliForm p = pauli_decompose(blocks[i].X_tilde_k);
        alpha_X[i] = p.alpha.real();
        re_nX[i] = p.n.real();
        im_nX[i] = p.n.imag();
        const double nrm = spectral_norm(blocks[i].X_tilde_k);
        step[i] = (nrm > 0.0) ? std::min(dt_max, 0.05 / nrm) : dt_max;
    }

    auto deriv = [&](size_t i, const State& s) {
        State d;
        d.alpha = 2.0 * (alpha_X[i] * s.alpha + s.n.dot(re_nX[i]));
        d.n = 2.0 * (alpha_X[i] * s.n + s.alpha * re_nX[i] + s.n.cross(im_nX[i]));
        return d;
    };
    auto rk4 = [&](size_t i, State s, double h) {
        const State k1 = deriv(i, s);
        const State k2 = deriv(i, {s.alpha + 0.5 * h * k1.alpha, s.n + 0.5 * h * k1.n});
        const State k3 = deriv(i, {s.alpha + 0.5 * h * k2.alpha, s.n + 0.5 * h * k2.n});
        const State k4 = deriv(i, {s.alpha + h * k3.alpha, s.n + h * k3.n});
        s.alpha += h / 6.0 * (k1.alpha + 2.0 * k2.alpha + 2.0 * k3.alpha + k4.alpha);
        s.n += h / 6.0 * (k1.n + 2.0 * k2.n + 2.0 * k3.n + k4.n);
        return s;
    };

    Trajectory traj;
    traj.times = times;
    double t_cur = C0.time;
    for (double t_target : times) {
        const double span = t_target - t_cur;
        if (span > 0.0) {
            for (size_t i = 0; i < nk; ++i) {
                const int nsteps = std::max(1, static_cast<int>(std::ceil(span / step[i])));
                const double h = span / nsteps;
                for (int s = 0; s < nsteps; ++s) state[i] = rk4(i, state[i], h);
            }
            t_cur = t_target;
        }
        CorrelationField field;
        field.kgrid = C0.kgrid;
        field.time = t_target;
        field.blocks.reserve(nk);
        for (size_t i = 0; i < nk; ++i) {
            PauliForm p;
            p.alpha = state[i].alpha;
            p.n = state[i].n.cast<Complex>();
            field.blocks.push_back(pauli_compose(p));
        }
        traj.fields.push_back(std::move(field));
    }
    return traj;
}

Eigen::MatrixXcd evolve_realspace_oracle(const LatticeModel& model,
                                         const Eigen::MatrixXcd& C0_real, double t) {
    const int N = 2 * model.L;
    if (C0_real.rows() != N || C0_real.cols() != N)
        throw DimensionMismatch("evolve_realspace_oracle: C0 must be 2L x 2L");
    auto [X, X_tilde] = real_space_damping(model);
    const Eigen::MatrixXcd P = (X_tilde * t).exp();  // scaling-and-squaring Pade
    Eigen::MatrixXcd C = P * C0_real * P.adjoint();
    return 0.5 * (C + C.adjoint().eval());
}

std::optional<Vector3> steady_direction(const BlochBlock& block) {
    const double tol = default_ep_tol(block.X_tilde_k);
    const EigenSystem2 es = eigensystem(block.X_tilde_k, tol);
    if (es.defective) return std::nullopt;
    if (std::abs(es.eps_plus.imag()) >= tol || std::abs(es.eps_minus.imag()) >= tol)
        return std::nullopt;  // broken sector: oscillatory, no steady direction
    const Matrix2 P = es.R_plus * es.R_plus.adjoint() / es.R_plus.squaredNorm();
    Vector3 n = pauli_decompose(P).n.real();
    const double r = n.norm();
    if (r == 0.0) return std::nullopt;
    return n / r;
}

std::vector<Matrix2> to_bloch_basis(const Eigen::MatrixXcd& O, int L) {
    if (O.rows() != 2 * L || O.cols() != 2 * L)
        throw DimensionMismatch("to_bloch_basis: matrix must be 2L x 2L");
    std::vector<Matrix2> blocks;
    blocks.reserve(L);
    for (double k : k_grid(L)) {
        Matrix2 B = Matrix2::Zero();
        for (int x = 0; x < L; ++x)
            for (int xp = 0; xp < L; ++xp) {
                const Complex phase = std::exp(-I * k * static_cast<double>(x - xp)) / double(L);
                for (int s = 0; s < 2; ++s)
                    for (int sp = 0; sp < 2; ++sp)
                        B(s, sp) += phase * O(2 * x + s, 2 * xp + sp);
            }
        blocks.push_back(B);
    }
    return blocks;
}

Eigen::MatrixXcd from_bloch_basis(const std::vector<Matrix2>& blocks) {
    const int L = static_cast<int>(blocks.size());
    Eigen::MatrixXcd O = Eigen::MatrixXcd::Zero(2 * L, 2 * L);
    const auto ks = k_grid(L);
    for (int x = 0; x < L; ++x)
        for (int xp = 0; xp < L; ++xp)
            for (int j = 0; j < L; ++j) {
                const Complex phase = std::exp(I * ks[j] * static_cast<double>(x - xp)) / double(L);
                for (int s = 0; s < 2; ++s)
                    for (int sp = 0; sp < 2; ++sp)
                        O(2 * x + s, 2 * xp + sp) += phase * blocks[j](s, sp);
            }
    return O;
}

}  // namespace dmtopo
