#pragma once

// Time evolution of correlation matrices: closed-form propagator engine,
// biorthogonal spectral sum, Bloch-vector ODE, and a real-space
// matrix-exponential oracle. Per-k evolution is independent and stateless.

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "dmtopo/model.hpp"

namespace dmtopo {

/// Set of transposed correlation blocks {C_k^T} on a k-grid at one time.
struct CorrelationField {
    std::vector<double> kgrid;
    std::vector<Matrix2> blocks;
    double time = 0.0;
};

/// Parameters (a, b) of the initial Gaussian state, both > 0.
struct InitialStateSpec {
    double a = 1.0;
    double b = 2.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<CorrelationField> fields;
};

CorrelationField initial_state(const InitialStateSpec& spec, const std::vector<double>& kgrid);

CorrelationField evolve_propagator(const std::vector<BlochBlock>& blocks,
                                   const CorrelationField& C0, double t);

/// Four-term biorthogonal sum; throws DefectiveBlock at exceptional points.
CorrelationField evolve_spectral(const std::vector<BlochBlock>& blocks,
                                 const CorrelationField& C0, double t);

/// Fixed-step RK4 on the coupled (alpha_C, n_C) system per k.
Trajectory evolve_bloch_ode(const std::vector<BlochBlock>& blocks, const CorrelationField& C0,
                            const std::vector<double>& times, double dt_max);

/// Brute-force 2L x 2L evolution C(t) = e^{Xt} C(0) e^{X^dag t}.
Eigen::MatrixXcd evolve_realspace_oracle(const LatticeModel& model,
                                         const Eigen::MatrixXcd& C0_real, double t);

/// Normalized Bloch vector of |R_+><R_+| for PT-unbroken non-defective
/// blocks; nullopt when the sector is broken or at an exceptional point.
std::optional<Vector3> steady_direction(const BlochBlock& block);

/// Bloch vector (alpha_C, n_C) of a Hermitian correlation block.
std::pair<double, Vector3> correlation_bloch(const Matrix2& C);

/// Fourier transform of a translation-invariant 2L x 2L matrix to its
/// 2x2 Bloch blocks on the L-point grid (same convention as bloch_blocks).
std::vector<Matrix2> to_bloch_basis(const Eigen::MatrixXcd& O, int L);

/// Inverse of to_bloch_basis.
Eigen::MatrixXcd from_bloch_basis(const std::vector<Matrix2>& blocks);

}  // namespace dmtopo
