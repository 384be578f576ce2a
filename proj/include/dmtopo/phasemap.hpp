#pragma once

// Parameter sweeps over (u, w): PT region classification, dynamic-transition
// behavior, and location of the flat-band threshold u_c.

#include <vector>

#include "dmtopo/topology.hpp"

namespace dmtopo {

enum class Region { I, II, III, IV };
enum class TransitionBehavior { AtLeastOnce, Repeated, None, Mixed };

struct RegionLabel {
    Region region = Region::I;
    PTGlobalLabel pt_part = PTGlobalLabel::FullyUnbroken;
    TransitionBehavior transition_behavior = TransitionBehavior::None;
};

struct SweepPoint {
    double u = 0.0;
    double w = 0.0;
    RegionLabel label;
    std::vector<double> transition_times;
};

struct SweepMetadata {
    double lambda = 1.0;
    double a = 1.0;
    double b = 2.0;
    double t_max = 20.0;
    int n_k = 256;
    int n_samples = 2000;
    double ep_tol = 1e-8;
    double gap_tol = 1e-6;
};

struct SweepResult {
    std::vector<double> u_values;
    std::vector<double> w_values;
    std::vector<SweepPoint> points;  // row-major over (u, w), u outer
    SweepMetadata meta;
};

RegionLabel classify_point(double u, double w, double lambda, const InitialStateSpec& spec,
                           double t_max, int n_k, int n_samples, double ep_tol = 1e-8,
                           double gap_tol = 1e-6);

/// Full scan of one point; the label plus the raw transition times.
SweepPoint scan_point(double u, double w, const SweepMetadata& meta);

SweepResult sweep(double u_min, double u_max, int u_resolution, double w_min, double w_max,
                  int w_resolution, const SweepMetadata& meta);

/// Bisection on "at least one transition within t_max" along u at fixed w.
double find_uc(double lambda, const InitialStateSpec& spec, double w, double search_lo,
               double search_hi, double tol, const SweepMetadata& meta = {});

const char* to_string(Region r);
const char* to_string(TransitionBehavior b);
const char* to_string(PTGlobalLabel g);

}  // namespace dmtopo
