#include "dmtopo/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace dmtopo {

namespace {
constexpr Complex I{0.0, 1.0};
}

LatticeModel build_ssh_model(double u, double w, double lambda, int L) {
    if (lambda < 0.0) throw InvalidParameter("build_ssh_model: lambda must be >= 0");
    if (L < 2) throw InvalidParameter("build_ssh_model: L must be >= 2");
    LatticeModel m;
    m.u = u;
    m.w = w;
    m.lambda = lambda;
    m.L = L;
    const double amp = std::sqrt(2.0 * lambda);
    if (lambda > 0.0) {
        for (int x = 0; x < L; ++x)
            m.jump_coefficients.push_back({x, 2 * x + 1, amp});
    }
    return m;
}

std::vector<double> k_grid(int n_k) {
    std::vector<double> ks(n_k);
    for (int j = 0; j < n_k; ++j)
        ks[j] = -std::numbers::pi + 2.0 * std::numbers::pi * j / n_k;
    return ks;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> real_space_hm(const LatticeModel& model) {
    const int N = 2 * model.L;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(N, N);
    for (int x = 0; x < model.L; ++x) {
        const int A = 2 * x, B = 2 * x + 1;
        const int A1 = 2 * ((x + 1) % model.L);
        const int B1 = 2 * ((x + 1) % model.L) + 1;
        H(A, B) += model.u;
        H(B, A) += model.u;
        H(A1, B) += 0.5 * model.w;
        H(B, A1) += 0.5 * model.w;
        H(A, B1) += 0.5 * model.w;
        H(B1, A) += 0.5 * model.w;
    }
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
    std::map<int, std::vector<JumpTerm>> ops;
    for (const auto& t : model.jump_coefficients) ops[t.mu].push_back(t);
    for (const auto& [mu, terms] : ops)
        for (const auto& a : terms)
            for (const auto& b : terms)
                M(a.site, b.site) += std::conj(a.amp) * b.amp;
    return {H, M};
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> real_space_damping(const LatticeModel& model) {
    auto [H, M] = real_space_hm(model);
    Eigen::MatrixXcd X = I * H.transpose() - M.transpose();
    Eigen::MatrixXcd X_tilde = X.conjugate();
    return {X, X_tilde};
}

namespace {

// Per-cell loss block: requires every jump operator to live inside one cell
// and all cells to carry the same pattern.
Matrix2 cell_loss_block(const LatticeModel& model) {
    std::map<int, std::vector<JumpTerm>> ops;
    for (const auto& t : model.jump_coefficients) ops[t.mu].push_back(t);

    // pattern of one operator: sorted (sublattice, amp) list, keyed by cell
    using Pattern = std::vector<std::pair<int, Complex>>;
    std::map<int, std::vector<Pattern>> per_cell;
    for (const auto& [mu, terms] : ops) {
        const int cell = terms.front().site / 2;
        Pattern pat;
        for (const auto& t : terms) {
            if (t.site / 2 != cell)
                throw NotTranslationInvariant("bloch_blocks: jump operator spans multiple cells");
            pat.emplace_back(t.site % 2, t.amp);
        }
        std::sort(pat.begin(), pat.end(), [](const auto& a, const auto& b) {
            return a.first < b.first;
        });
        per_cell[cell].push_back(pat);
    }
    Matrix2 Mc = Matrix2::Zero();
    if (per_cell.empty()) return Mc;

    auto canon = [](std::vector<Pattern> v) {
        std::sort(v.begin(), v.end(), [](const Pattern& a, const Pattern& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            for (size_t i = 0; i < a.size(); ++i) {
                if (a[i].first != b[i].first) return a[i].first < b[i].first;
                if (a[i].second.real() != b[i].second.real())
                    return a[i].second.real() < b[i].second.real();
                if (a[i].second.imag() != b[i].second.imag())
                    return a[i].second.imag() < b[i].second.imag();
            }
            return false;
        });
        return v;
    };
    const auto ref = canon(per_cell.begin()->second);
    if (static_cast<int>(per_cell.size()) != model.L)
        throw NotTranslationInvariant("bloch_blocks: jump operators missing on some cells");
    for (const auto& [cell, pats] : per_cell)
        if (canon(pats) != ref)
            throw NotTranslationInvariant("bloch_blocks: jump pattern differs between cells");

    for (const auto& pat : ref)
        for (const auto& a : pat)
            for (const auto& b : pat)
                Mc(a.first, b.first) += std::conj(a.second) * b.second;
    return Mc;
}

}  // namespace

std::vector<BlochBlock> bloch_blocks(const LatticeModel& model, int n_k) {
    if (n_k < 2) throw InvalidParameter("bloch_blocks: n_k must be >= 2");
    const Matrix2 Mc = cell_loss_block(model);
    std::vector<BlochBlock> blocks;
    blocks.reserve(n_k);
    for (double k : k_grid(n_k)) {
        BlochBlock b;
        b.k = k;
        const double hop = model.u + model.w * std::cos(k);
        b.H_k << 0.0, hop, hop, 0.0;
        b.M_k = Mc;
        b.X_tilde_k = -I * b.H_k - b.M_k;
        blocks.push_back(b);
    }
    return blocks;
}

PTClassification pt_classify(const std::vector<BlochBlock>& blocks, double ep_tol) {
    PTClassification cls;
    cls.per_k.reserve(blocks.size());
    bool any_unbroken = false, any_broken = false, any_ep = false;
    for (const auto& b : blocks) {
        const PauliForm p = pauli_decompose(b.X_tilde_k);
        const Complex disc = p.n[0] * p.n[0] + p.n[1] * p.n[1] + p.n[2] * p.n[2];
        KSectorLabel label;
        if (std::abs(disc) < ep_tol * ep_tol && p.n.norm() > ep_tol) {
            label = KSectorLabel::ExceptionalPoint;
            any_ep = true;
        } else {
            const Complex mu = pauli_mu(p.n);
            const double im_plus = std::abs(std::imag(p.alpha + mu));
            const double im_minus = std::abs(std::imag(p.alpha - mu));
            if (im_plus < ep_tol && im_minus < ep_tol) {
                label = KSectorLabel::Unbroken;
                any_unbroken = true;
            } else {
                label = KSectorLabel::Broken;
                any_broken = true;
            }
        }
        cls.per_k.push_back(label);
    }
    if (any_unbroken && !any_broken && !any_ep)
        cls.global = PTGlobalLabel::FullyUnbroken;
    else if (any_broken && !any_unbroken && !any_ep)
        cls.global = PTGlobalLabel::FullyBroken;
    else
        cls.global = PTGlobalLabel::PartiallyBroken;
    return cls;
}

namespace {

Vector3 any_perpendicular(const Vector3& v) {
    Vector3 h = (std::abs(v[0]) < 0.9) ? Vector3::UnitX() : Vector3::UnitY();
    Vector3 e = h - h.dot(v) * v;
    return e.normalized();
}

}  // namespace

PTDecomposition pt_decompose(const BlochBlock& block) {
    const PauliForm p = pauli_decompose(block.X_tilde_k);
    const double scale = std::max(1.0, block.X_tilde_k.norm());
    if (std::abs(p.alpha.imag()) > 1e-10 * scale)
        throw NotPTForm("pt_decompose: alpha_X is not real");
    const Vector3 r = p.n.real();
    const Vector3 m = p.n.imag();
    if (std::abs(r.dot(m)) > 1e-10 * scale * scale)
        throw NotPTForm("pt_decompose: Re(n_X) and Im(n_X) are not orthogonal");

    PTDecomposition d;
    d.alpha_X = p.alpha.real();
    d.gamma = r.norm();
    d.rho = m.norm();
    d.theta = 0.0;
    if (d.gamma > 0.0 && d.rho > 0.0) {
        d.n1 = r / d.gamma;
        d.n3 = m / d.rho;
        d.n2 = d.n3.cross(d.n1);
    } else if (d.gamma > 0.0) {
        d.n1 = r / d.gamma;
        d.n3 = any_perpendicular(d.n1);
        d.n2 = d.n3.cross(d.n1);
    } else if (d.rho > 0.0) {
        d.n3 = m / d.rho;
        d.n1 = any_perpendicular(d.n3);
        d.n2 = d.n3.cross(d.n1);
    } else {
        d.n1 = Vector3::UnitX();
        d.n2 = Vector3::UnitY();
        d.n3 = Vector3::UnitZ();
    }
    return d;
}

ChiralFrame frame_from_axis(const Vector3& axis) {
    ChiralFrame f;
    f.n_gamma = axis.normalized();
    f.e1 = any_perpendicular(f.n_gamma);
    f.e2 = f.n_gamma.cross(f.e1);  // (e1, e2, n_gamma) right-handed
    return f;
}

ChiralFrame chiral_axis(const std::vector<BlochBlock>& blocks, double tol) {
    Vector3 axis = Vector3::Zero();
    bool found = false;
    for (const auto& b : blocks) {
        const Vector3 m = pauli_decompose(b.X_tilde_k).n.imag();
        const double mag = m.norm();
        if (mag <= tol) continue;
        if (!found) {
            axis = m / mag;
            found = true;
        } else if ((m - m.dot(axis) * axis).norm() > tol * mag) {
            throw NoCommonAxis("chiral_axis: Im(n_X) directions disagree across k");
        }
    }
    if (!found)
        throw AllImaginaryPartsZero("chiral_axis: no block with ||Im(n_X)|| above tol");
    return frame_from_axis(axis);
}

}  // namespace dmtopo
