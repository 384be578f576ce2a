#pragma once

// Modular-Hamiltonian extraction, chiral-symmetry checks, winding numbers,
// and detection of dynamic topological transitions along trajectories.

#include <optional>
#include <vector>

#include "dmtopo/dynamics.hpp"

namespace dmtopo {

struct ModularField {
    std::vector<double> kgrid;
    std::vector<Matrix2> blocks;     // K_k, Hermitian
    std::vector<double> alpha_K;
    std::vector<Vector3> n_K;
};

struct WindingResult {
    int nu = 0;
    double min_amp = 0.0;  // min over k of the in-plane |n_C| component
};

struct ChiralReport {
    double max_axis_component = 0.0;
    bool ok = false;
};

struct TopologyTrace {
    std::vector<double> times;
    std::vector<std::optional<int>> nu;  // nullopt where winding is undefined
    std::vector<double> min_planar_amplitude;
    std::vector<double> transitions;
};

ModularField modular_from_correlation(const CorrelationField& C);
CorrelationField correlation_from_modular(const ModularField& K);

ChiralReport check_chiral(const CorrelationField& C, const ChiralFrame& frame, double tol);

/// Winding of the in-plane direction; nullopt (undefined) when at some k the
/// planar amplitude falls below gap_tol relative to |n_C| (gap closing).
std::optional<WindingResult> winding_number(const CorrelationField& C, const ChiralFrame& frame,
                                            double gap_tol);

/// Winding of an arbitrary field of real Bloch vectors over k.
std::optional<WindingResult> winding_of_vectors(const std::vector<Vector3>& n,
                                                const ChiralFrame& frame, double gap_tol);

/// Minimum over continuous k of the in-plane |n_C| amplitude, refined from
/// the trigonometric interpolant of the grid samples (gap closings generically
/// fall between grid points).
double min_planar_amplitude(const CorrelationField& C, const ChiralFrame& frame);

TopologyTrace transition_scan(const std::vector<BlochBlock>& blocks, const CorrelationField& C0,
                              const ChiralFrame& frame, double t_max, int n_samples,
                              double gap_tol);

/// Max angle (rad) between n_K and -n_C over k; degenerate k (n_C ~ 0)
/// are excluded.
double nk_nc_antiparallel_check(const CorrelationField& C);

}  // namespace dmtopo
