#include "dmtopo/topology.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

namespace dmtopo {

namespace {

constexpr double kPi = std::numbers::pi;

struct RawWinding {
    std::optional<int> nu;
    double min_amp = 0.0;
};

RawWinding winding_from_components(const std::vector<double>& c1, const std::vector<double>& c2,
                                   const std::vector<double>& c3, double gap_tol) {
    const size_t nk = c1.size();
    std::vector<double> phi(nk);
    double min_amp = std::numeric_limits<double>::infinity();
    bool resolvable = true;
    for (size_t j = 0; j < nk; ++j) {
        const double amp = std::hypot(c1[j], c2[j]);
        min_amp = std::min(min_amp, amp);
        // the winding uses only the direction, so overall decay of |n_C| is
        // harmless; the direction stops being meaningful when the in-plane
        // part is a vanishing fraction of the vector (gap closing)
        const double nrm = std::hypot(amp, c3[j]);
        if (nrm < 1e-300 || amp < gap_tol * nrm) resolvable = false;
        phi[j] = std::atan2(c2[j], c1[j]);
    }
    RawWinding out;
    out.min_amp = min_amp;
    if (!resolvable) return out;  // undefined
    double total = 0.0;
    for (size_t j = 0; j < nk; ++j) {
        double d = phi[(j + 1) % nk] - phi[j];
        while (d <= -kPi) d += 2.0 * kPi;
        while (d > kPi) d -= 2.0 * kPi;
        total += d;
    }
    out.nu = static_cast<int>(std::lround(total / (2.0 * kPi)));
    return out;
}

struct FrameComponents {
    std::vector<double> c1, c2, c3;  // n_C projected on (e1, e2, axis)
};

FrameComponents frame_components(const std::vector<Vector3>& n, const ChiralFrame& frame) {
    FrameComponents f;
    f.c1.reserve(n.size());
    f.c2.reserve(n.size());
    f.c3.reserve(n.size());
    for (const auto& v : n) {
        f.c1.push_back(v.dot(frame.e1));
        f.c2.push_back(v.dot(frame.e2));
        f.c3.push_back(v.dot(frame.n_gamma));
    }
    return f;
}

RawWinding winding_raw(const std::vector<Vector3>& n, const ChiralFrame& frame, double gap_tol) {
    const FrameComponents f = frame_components(n, frame);
    return winding_from_components(f.c1, f.c2, f.c3, gap_tol);
}

std::vector<Vector3> bloch_vectors(const CorrelationField& C) {
    std::vector<Vector3> n;
    n.reserve(C.blocks.size());
    for (const auto& b : C.blocks) n.push_back(correlation_bloch(b).second);
    return n;
}

// Trigonometric interpolant of periodic real samples on k_j = -pi + 2 pi j / n.
// Smooth k-dependence makes this spectrally accurate, so the continuum field
// between grid points can be queried reliably.
class TrigSeries {
  public:
    explicit TrigSeries(const std::vector<double>& samples)
        : n_(static_cast<int>(samples.size())) {
        // twiddle table: e^{-i 2 pi q / n}
        std::vector<Complex> tw(n_);
        for (int q = 0; q < n_; ++q) tw[q] = std::polar(1.0, -2.0 * kPi * q / n_);

        const int m_lo = -(n_ / 2), m_hi = (n_ - 1) / 2;
        std::vector<Complex> F;
        F.reserve(m_hi - m_lo + 1);
        for (int m = m_lo; m <= m_hi; ++m) {
            // e^{-i m k_j} = (-1)^m e^{-i 2 pi (m j mod n) / n}
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            Complex acc = 0.0;
            long q = 0;
            const long step = ((m % n_) + n_) % n_;
            for (int j = 0; j < n_; ++j) {
                acc += samples[j] * tw[q];
                q += step;
                if (q >= n_) q -= n_;
            }
            F.push_back(sign * acc / static_cast<double>(n_));
        }
        if (n_ % 2 == 0) {
            // split the Nyquist weight between m = -n/2 and m = +n/2 so the
            // interpolant is real (matches the cardinal-function interpolant)
            m_lo_ = m_lo;
            coef_.assign(F.begin(), F.end());
            coef_.front() *= 0.5;
            coef_.push_back(coef_.front());
        } else {
            m_lo_ = m_lo;
            coef_ = std::move(F);
        }
    }

    double eval(double k) const {
        const Complex z = std::polar(1.0, k);
        Complex s = 0.0;
        for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) s = s * z + *it;
        s *= std::polar(1.0, m_lo_ * k);
        return s.real();
    }

    // values on the uniform grid k_grid(factor * n)
    std::vector<double> resample(int factor) const {
        const int N = factor * n_;
        std::vector<double> out(N);
        for (int p = 0; p < N; ++p) out[p] = eval(-kPi + 2.0 * kPi * p / N);
        return out;
    }

  private:
    int n_;
    int m_lo_ = 0;
    std::vector<Complex> coef_;
};

// Minimum over continuous k of the interpolated in-plane amplitude: grid
// argmin bracket followed by golden-section refinement.
double refined_min_planar(const FrameComponents& f) {
    const int n = static_cast<int>(f.c1.size());
    int j0 = 0;
    double gridmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        const double a = std::hypot(f.c1[j], f.c2[j]);
        if (a < gridmin) {
            gridmin = a;
            j0 = j;
        }
    }
    if (n < 4) return gridmin;
    const TrigSeries s1(f.c1), s2(f.c2);
    const double dk = 2.0 * kPi / n;
    double lo = -kPi + dk * j0 - dk, hi = lo + 2.0 * dk;
    auto amp = [&](double k) { return std::hypot(s1.eval(k), s2.eval(k)); };
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = amp(x1), f2 = amp(x2);
    for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = amp(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = amp(x2);
        }
    }
    return std::min({gridmin, f1, f2});
}

// Winding evaluated on a spectrally supersampled k-grid: same integer away
// from transitions, but localizes nu flips much closer to the continuum
// gap-closing time than the raw grid does.
RawWinding winding_supersampled(const FrameComponents& f, double gap_tol, int factor) {
    if (f.c1.size() < 4) return winding_from_components(f.c1, f.c2, f.c3, gap_tol);
    const TrigSeries s1(f.c1), s2(f.c2), s3(f.c3);
    return winding_from_components(s1.resample(factor), s2.resample(factor),
                                   s3.resample(factor), gap_tol);
}

}  // namespace

ModularField modular_from_correlation(const CorrelationField& C) {
    ModularField K;
    K.kgrid = C.kgrid;
    K.blocks.reserve(C.blocks.size());
    for (const auto& Cb : C.blocks) {
        const PauliForm p = pauli_decompose(Cb);
        const double a = p.alpha.real();
        const double r = p.n.real().norm();
        if (a - r < 1e-12 || a + r > 1.0 - 1e-12)
            throw SpectrumOutOfRange("modular_from_correlation: eigenvalue outside (0,1)");
        // e^{K} = (1 - C) C^{-1} = C^{-1} - 1
        const Matrix2 eK = Cb.inverse() - Matrix2::Identity();
        const Matrix2 Kb = hermitian_log(0.5 * (eK + eK.adjoint()));
        K.blocks.push_back(Kb);
        const PauliForm pk = pauli_decompose(Kb);
        K.alpha_K.push_back(pk.alpha.real());
        K.n_K.push_back(pk.n.real());
    }
    return K;
}

CorrelationField correlation_from_modular(const ModularField& K) {
    CorrelationField C;
    C.kgrid = K.kgrid;
    C.blocks.reserve(K.blocks.size());
    for (const auto& Kb : K.blocks) {
        const Matrix2 eK = hermitian_exp(Kb);
        const Matrix2 Cb = (eK + Matrix2::Identity()).inverse();
        C.blocks.push_back(0.5 * (Cb + Cb.adjoint()));
    }
    return C;
}

ChiralReport check_chiral(const CorrelationField& C, const ChiralFrame& frame, double tol) {
    ChiralReport rep;
    for (const auto& b : C.blocks) {
        const Vector3 n = correlation_bloch(b).second;
        const double comp = std::abs(n.dot(frame.n_gamma)) / std::max(n.norm(), 1e-15);
        rep.max_axis_component = std::max(rep.max_axis_component, comp);
    }
    rep.ok = rep.max_axis_component < tol;
    return rep;
}

std::optional<WindingResult> winding_of_vectors(const std::vector<Vector3>& n,
                                                const ChiralFrame& frame, double gap_tol) {
    const RawWinding raw = winding_raw(n, frame, gap_tol);
    if (!raw.nu) return std::nullopt;
    return WindingResult{*raw.nu, raw.min_amp};
}

std::optional<WindingResult> winding_number(const CorrelationField& C, const ChiralFrame& frame,
                                            double gap_tol) {
    const auto n = bloch_vectors(C);
    const RawWinding raw = winding_raw(n, frame, gap_tol);
    if (!raw.nu) return std::nullopt;
    // the reported value is the winding of n_K = -n_C; a global sign flip
    // preserves winding, which we verify
    std::vector<Vector3> flipped(n.size());
    std::transform(n.begin(), n.end(), flipped.begin(), [](const Vector3& v) { return -v; });
    const RawWinding raw_k = winding_raw(flipped, frame, gap_tol);
    assert(raw_k.nu && *raw_k.nu == *raw.nu);
    (void)raw_k;
    return WindingResult{*raw.nu, raw.min_amp};
}

double min_planar_amplitude(const CorrelationField& C, const ChiralFrame& frame) {
    return refined_min_planar(frame_components(bloch_vectors(C), frame));
}

TopologyTrace transition_scan(const std::vector<BlochBlock>& blocks, const CorrelationField& C0,
                              const ChiralFrame& frame, double t_max, int n_samples,
                              double gap_tol) {
    if (t_max <= 0.0) throw InvalidParameter("transition_scan: t_max must be > 0");
    if (n_samples < 16) throw InvalidParameter("transition_scan: n_samples must be >= 16");

    constexpr int kSuperFactor = 8;
    auto components_at = [&](double t) {
        const CorrelationField C = evolve_propagator(blocks, C0, t);
        return frame_components(bloch_vectors(C), frame);
    };

    TopologyTrace trace;
    trace.times.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i)
        trace.times.push_back(t_max * i / (n_samples - 1));
    trace.nu.reserve(n_samples);
    trace.min_planar_amplitude.reserve(n_samples);
    for (double t : trace.times) {
        const FrameComponents f = components_at(t);
        const RawWinding r = winding_from_components(f.c1, f.c2, f.c3, gap_tol);
        trace.nu.push_back(r.nu);
        // report the continuum minimum, not the grid minimum: gap closings
        // generically fall between grid points
        trace.min_planar_amplitude.push_back(refined_min_planar(f));
    }

    for (int i = 0; i + 1 < n_samples; ++i) {
        if (!trace.nu[i] || !trace.nu[i + 1]) continue;  // never manufacture from noise
        if (*trace.nu[i] == *trace.nu[i + 1]) continue;
        double lo = trace.times[i], hi = trace.times[i + 1];
        // supersampled winding localizes the flip much closer to the continuum
        // gap-closing time; fall back to the raw grid if the supersampled value
        // does not change across the interval
        const RawWinding s_lo = winding_supersampled(components_at(lo), gap_tol, kSuperFactor);
        const RawWinding s_hi = winding_supersampled(components_at(hi), gap_tol, kSuperFactor);
        const bool refined = s_lo.nu && s_hi.nu && *s_lo.nu != *s_hi.nu;
        const int nu_lo = refined ? *s_lo.nu : *trace.nu[i];
        for (int it = 0; it < 80 && hi - lo > 1e-13 * t_max; ++it) {
            const double mid = 0.5 * (lo + hi);
            const FrameComponents f = components_at(mid);
            const RawWinding r = refined
                                     ? winding_supersampled(f, gap_tol, kSuperFactor)
                                     : winding_from_components(f.c1, f.c2, f.c3, gap_tol);
            if (!r.nu) {  // amplitude already closed: the transition is here
                lo = hi = mid;
                break;
            }
            (*r.nu == nu_lo ? lo : hi) = mid;
        }
        trace.transitions.push_back(0.5 * (lo + hi));
    }
    return trace;
}

double nk_nc_antiparallel_check(const CorrelationField& C) {
    const ModularField K = modular_from_correlation(C);
    double max_angle = 0.0;
    for (size_t j = 0; j < C.blocks.size(); ++j) {
        const Vector3 nc = correlation_bloch(C.blocks[j]).second;
        const Vector3 nk = K.n_K[j];
        if (nc.norm() < 1e-12 || nk.norm() < 1e-12) continue;  // degenerate k excluded
        // atan2 form stays accurate for near-zero angles
        const double angle = std::atan2(((-nc).cross(nk)).norm(), (-nc).dot(nk));
        max_angle = std::max(max_angle, angle);
    }
    return max_angle;
}

}  // namespace dmtopo
