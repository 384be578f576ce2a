#pragma once

// Lattice model construction (Hamiltonian + lossy jump operators), Bloch
// blocks of the damping matrix, PT classification and the chiral axis.

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "dmtopo/algebra.hpp"

namespace dmtopo {

/// One term of a linear jump operator L_mu = sum_i D_{mu i} c_i.
struct JumpTerm {
    int mu;        // jump-operator index
    int site;      // flattened site index, 2*cell + sublattice
    Complex amp;   // D_{mu i}
};

/// Translation-invariant 1D two-sublattice chain with loss.
/// Site order: (cell 0, A), (cell 0, B), (cell 1, A), ...
struct LatticeModel {
    double u = 0.0;       // intra-cell hopping
    double w = 0.0;       // inter-cell hopping
    double lambda = 0.0;  // loss rate, >= 0
    int L = 2;            // unit cells
    std::vector<JumpTerm> jump_coefficients;
};

struct BlochBlock {
    double k = 0.0;
    Matrix2 H_k;        // Hermitian
    Matrix2 M_k;        // Hermitian PSD
    Matrix2 X_tilde_k;  // -i H_k - M_k
};

/// Splitting of n_X into gamma*n1 + i rho (sin(theta) n2 + cos(theta) n3)
/// with (n1, n2, n3) orthonormal.
struct PTDecomposition {
    double alpha_X = 0.0;
    double gamma = 0.0;
    double rho = 0.0;
    double theta = 0.0;
    Vector3 n1, n2, n3;
};

/// Chiral axis plus a right-handed in-plane basis: e1 x e2 = n_gamma.
struct ChiralFrame {
    Vector3 n_gamma;
    Vector3 e1;
    Vector3 e2;
};

enum class KSectorLabel { Unbroken, Broken, ExceptionalPoint };
enum class PTGlobalLabel { FullyUnbroken, PartiallyBroken, FullyBroken };

struct PTClassification {
    std::vector<KSectorLabel> per_k;
    PTGlobalLabel global = PTGlobalLabel::FullyUnbroken;
};

LatticeModel build_ssh_model(double u, double w, double lambda, int L);

/// Uniform grid k_j = -pi + 2 pi j / n_k, j = 0..n_k-1.
std::vector<double> k_grid(int n_k);

std::vector<BlochBlock> bloch_blocks(const LatticeModel& model, int n_k);

/// Real-space damping matrices (X, X_tilde), each 2L x 2L.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> real_space_damping(const LatticeModel& model);

/// Real-space Hamiltonian and loss matrices (H, M), each 2L x 2L.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> real_space_hm(const LatticeModel& model);

PTClassification pt_classify(const std::vector<BlochBlock>& blocks, double ep_tol);

PTDecomposition pt_decompose(const BlochBlock& block);

ChiralFrame chiral_axis(const std::vector<BlochBlock>& blocks, double tol);

/// Frame from a given axis (used where the axis is fixed by convention).
ChiralFrame frame_from_axis(const Vector3& axis);

}  // namespace dmtopo
