#include "dmtopo/phasemap.hpp"

#include <cmath>

namespace dmtopo {

namespace {

TransitionBehavior behavior_from_trace(const TopologyTrace& trace, double t_max) {
    const size_t nt = trace.transitions.size();
    if (nt == 0) return TransitionBehavior::None;

    // steady tail: no winding change over the last quarter of the horizon
    bool tail_steady = true;
    std::optional<int> tail_nu;
    for (size_t i = 0; i < trace.times.size(); ++i) {
        if (trace.times[i] < 0.75 * t_max || !trace.nu[i]) continue;
        if (!tail_nu) tail_nu = trace.nu[i];
        else if (*tail_nu != *trace.nu[i]) tail_steady = false;
    }
    if (tail_steady && nt >= 1 && trace.transitions.back() < 0.75 * t_max)
        return TransitionBehavior::AtLeastOnce;
    if (nt >= 3) return TransitionBehavior::Repeated;
    return TransitionBehavior::Mixed;
}

RegionLabel assemble_label(PTGlobalLabel pt, TransitionBehavior behavior) {
    RegionLabel label;
    label.pt_part = pt;
    label.transition_behavior = behavior;
    switch (pt) {
        case PTGlobalLabel::FullyUnbroken:
            label.region = Region::I;
            break;
        case PTGlobalLabel::PartiallyBroken:
            label.region = Region::II;
            break;
        case PTGlobalLabel::FullyBroken:
            label.region =
                (behavior == TransitionBehavior::None) ? Region::IV : Region::III;
            break;
    }
    return label;
}

}  // namespace

SweepPoint scan_point(double u, double w, const SweepMetadata& meta) {
    const LatticeModel model = build_ssh_model(u, w, meta.lambda, 2);
    const auto blocks = bloch_blocks(model, meta.n_k);
    const PTClassification pt = pt_classify(blocks, meta.ep_tol);
    const CorrelationField C0 =
        initial_state({meta.a, meta.b}, k_grid(meta.n_k));
    ChiralFrame frame;
    try {
        frame = chiral_axis(blocks, 1e-12);
    } catch (const AllImaginaryPartsZero&) {
        // hopping-free corner (u = w = 0): X_tilde is real-diagonal and any
        // in-plane frame works; keep the axis the rest of the family uses
        frame = frame_from_axis(Vector3::UnitX());
    }
    const TopologyTrace trace =
        transition_scan(blocks, C0, frame, meta.t_max, meta.n_samples, meta.gap_tol);

    SweepPoint point;
    point.u = u;
    point.w = w;
    point.transition_times = trace.transitions;
    point.label = assemble_label(pt.global, behavior_from_trace(trace, meta.t_max));
    return point;
}

RegionLabel classify_point(double u, double w, double lambda, const InitialStateSpec& spec,
                           double t_max, int n_k, int n_samples, double ep_tol,
                           double gap_tol) {
    SweepMetadata meta;
    meta.lambda = lambda;
    meta.a = spec.a;
    meta.b = spec.b;
    meta.t_max = t_max;
    meta.n_k = n_k;
    meta.n_samples = n_samples;
    meta.ep_tol = ep_tol;
    meta.gap_tol = gap_tol;
    return scan_point(u, w, meta).label;
}

SweepResult sweep(double u_min, double u_max, int u_resolution, double w_min, double w_max,
                  int w_resolution, const SweepMetadata& meta) {
    if (u_resolution < 2 || w_resolution < 2)
        throw InvalidParameter("sweep: resolution must be >= 2 per axis");
    SweepResult result;
    result.meta = meta;
    for (int i = 0; i < u_resolution; ++i)
        result.u_values.push_back(u_min + (u_max - u_min) * i / (u_resolution - 1));
    for (int j = 0; j < w_resolution; ++j)
        result.w_values.push_back(w_min + (w_max - w_min) * j / (w_resolution - 1));
    for (double u : result.u_values)
        for (double w : result.w_values)
            result.points.push_back(scan_point(u, w, meta));
    return result;
}

double find_uc(double lambda, const InitialStateSpec& spec, double w, double search_lo,
               double search_hi, double tol, const SweepMetadata& meta_in) {
    SweepMetadata meta = meta_in;
    meta.lambda = lambda;
    meta.a = spec.a;
    meta.b = spec.b;
    auto has_transition = [&](double u) {
        return !scan_point(u, w, meta).transition_times.empty();
    };
    if (!has_transition(search_lo) || has_transition(search_hi))
        throw NoBracket("find_uc: search interval does not bracket a behavior change");
    double lo = search_lo, hi = search_hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (has_transition(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

const char* to_string(Region r) {
    switch (r) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
        case Region::IV: return "IV";
    }
    return "?";
}

const char* to_string(TransitionBehavior b) {
    switch (b) {
        case TransitionBehavior::AtLeastOnce: return "AtLeastOnce";
        case TransitionBehavior::Repeated: return "Repeated";
        case TransitionBehavior::None: return "None";
        case TransitionBehavior::Mixed: return "Mixed";
    }
    return "?";
}

const char* to_string(PTGlobalLabel g) {
    switch (g) {
        case PTGlobalLabel::FullyUnbroken: return "FullyUnbroken";
        case PTGlobalLabel::PartiallyBroken: return "PartiallyBroken";
        case PTGlobalLabel::FullyBroken: return "FullyBroken";
    }
    return "?";
}

}  // namespace dmtopo
