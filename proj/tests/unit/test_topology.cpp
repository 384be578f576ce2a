#include "doctest.h"

#include "dmtopo/topology.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace dmtopo;

namespace {

CorrelationField field_from_blocks(std::vector<Matrix2> blocks) {
    CorrelationField C;
    C.blocks = std::move(blocks);
    C.kgrid.resize(C.blocks.size(), 0.0);
    return C;
}

struct Scenario {
    std::vector<BlochBlock> blocks;
    CorrelationField C0;
    ChiralFrame frame;
};

Scenario ssh_scenario(double u, double w, double lambda, int n_k, double a = 1.0,
                      double b = 2.0) {
    Scenario s;
    s.blocks = bloch_blocks(build_ssh_model(u, w, lambda, 4), n_k);
    s.C0 = initial_state({a, b}, k_grid(n_k));
    s.frame = chiral_axis(s.blocks, 1e-12);
    return s;
}

}  // namespace

TEST_CASE("modular_from_correlation basics") {
    auto C = field_from_blocks({0.5 * Matrix2::Identity()});
    auto K = modular_from_correlation(C);
    CHECK(K.blocks[0].norm() < 1e-12);

    Matrix2 fd;
    fd << 1.0 / (std::exp(1.0) + 1.0), 0.0, 0.0, 1.0 / (std::exp(-1.0) + 1.0);
    K = modular_from_correlation(field_from_blocks({fd}));
    CHECK(std::abs(K.blocks[0](0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(K.blocks[0](1, 1) + 1.0) < 1e-12);

    Matrix2 pure;
    pure << 1.0, 0.0, 0.0, 0.5;
    CHECK_THROWS_AS((void)modular_from_correlation(field_from_blocks({pure})),
                    SpectrumOutOfRange);
}

TEST_CASE("correlation_from_modular basics") {
    ModularField K;
    K.kgrid = {0.0, 0.0};
    K.blocks = {Matrix2::Zero(), (Matrix2() << 50.0, 0.0, 0.0, 0.0).finished()};
    const auto C = correlation_from_modular(K);
    CHECK((C.blocks[0] - 0.5 * Matrix2::Identity()).norm() < 1e-14);
    CHECK(std::abs(C.blocks[1](0, 0)) < 1e-20);  // saturated Fermi function

    // n_K along +y gives n_C along -y
    ModularField Ky;
    Ky.kgrid = {0.0};
    Ky.blocks = {pauli_compose({0.3, Vector3c(0.0, 0.8, 0.0)})};
    const auto Cy = correlation_from_modular(Ky);
    const Vector3 nc = correlation_bloch(Cy.blocks[0]).second;
    CHECK(nc.y() < 0.0);
    CHECK(std::abs(nc.x()) + std::abs(nc.z()) < 1e-12);
}

TEST_CASE("modular round trip on random states") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> scale(0.1, 5.0);
    double worst_matrix = 0.0, worst_K = 0.0;
    for (int i = 0; i < 1000; ++i) {
        Matrix2 K0 = oracles::random_hermitian(rng);
        K0 *= scale(rng) / std::max(K0.norm(), 1e-6);
        ModularField K;
        K.kgrid = {0.0};
        K.blocks = {K0};
        const auto C = correlation_from_modular(K);
        const auto K2 = modular_from_correlation(C);
        worst_K = std::max(worst_K, (K2.blocks[0] - K0).cwiseAbs().maxCoeff());
        const auto C2 = correlation_from_modular(K2);
        worst_matrix = std::max(worst_matrix, (C2.blocks[0] - C.blocks[0]).cwiseAbs().maxCoeff());
    }
    CHECK(worst_K < 1e-9);
    CHECK(worst_matrix < 1e-9);
}

TEST_CASE("check_chiral on the initial state") {
    const auto s = ssh_scenario(0.6, 0.2, 1.0, 64);
    const auto rep = check_chiral(s.C0, s.frame, 1e-10);
    CHECK(rep.ok);
    CHECK(rep.max_axis_component < 1e-14);

    // rotate one vector toward the axis: violation
    auto C = s.C0;
    auto [alpha, n] = correlation_bloch(C.blocks[3]);
    const Vector3 rotated = std::cos(0.1) * n + std::sin(0.1) * n.norm() * s.frame.n_gamma;
    C.blocks[3] = pauli_compose({alpha, rotated.cast<Complex>()});
    CHECK(!check_chiral(C, s.frame, 1e-10).ok);
}

TEST_CASE("chiral plane is preserved along trajectories") {
    const auto s = ssh_scenario(0.6, 0.2, 1.0, 64);
    for (double t : {0.5, 2.0, 5.0, 12.0}) {
        const auto Ct = evolve_propagator(s.blocks, s.C0, t);
        CHECK(check_chiral(Ct, s.frame, 1e-8).ok);
    }
}

TEST_CASE("winding number of the initial state") {
    const auto frame = frame_from_axis(Vector3::UnitX());
    auto wind = [&](double a, double b) {
        const auto C = initial_state({a, b}, k_grid(256));
        const auto res = winding_number(C, frame, 1e-6);
        REQUIRE(res.has_value());
        return res->nu;
    };
    CHECK(std::abs(wind(1.0, 2.0)) == 1);
    CHECK(wind(3.0, 2.0) == 0);

    // constant field: zero winding
    std::vector<Matrix2> blocks(32, pauli_compose({0.5, Vector3c(0.0, 0.2, 0.1)}));
    const auto res = winding_number(field_from_blocks(std::move(blocks)), frame, 1e-6);
    REQUIRE(res.has_value());
    CHECK(res->nu == 0);
}

TEST_CASE("winding is undefined when the planar gap closes") {
    const auto frame = frame_from_axis(Vector3::UnitX());
    std::vector<Matrix2> blocks(16, 0.5 * Matrix2::Identity());  // n_C = 0
    CHECK(!winding_number(field_from_blocks(std::move(blocks)), frame, 1e-6).has_value());
}

TEST_CASE("winding quantization and sign-flip invariance") {
    std::mt19937 rng(29);
    const auto frame = frame_from_axis(Vector3::UnitX());
    std::uniform_real_distribution<double> ab(0.2, 3.0);
    for (int i = 0; i < 20; ++i) {
        const double a = ab(rng), b = ab(rng);
        if (std::abs(a - b) < 0.05) continue;
        const auto C = initial_state({a, b}, k_grid(256));
        const auto res = winding_number(C, frame, 1e-6);
        REQUIRE(res.has_value());
        std::vector<Vector3> n, flipped;
        for (const auto& blk : C.blocks) n.push_back(correlation_bloch(blk).second);
        for (const auto& v : n) flipped.push_back(-v);
        const auto direct = winding_of_vectors(n, frame, 1e-6);
        const auto mirror = winding_of_vectors(flipped, frame, 1e-6);
        REQUIRE(direct.has_value());
        REQUIRE(mirror.has_value());
        CHECK(direct->nu == res->nu);
        CHECK(mirror->nu == res->nu);

        // quantization: the accumulated phase is an integer multiple of 2 pi
        double total = 0.0;
        std::vector<double> phi;
        for (const auto& v : n)
            phi.push_back(std::atan2(v.dot(frame.e2), v.dot(frame.e1)));
        for (size_t j = 0; j < phi.size(); ++j) {
            double d = phi[(j + 1) % phi.size()] - phi[j];
            while (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
            while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
            total += d;
        }
        CHECK(std::abs(total / (2.0 * std::numbers::pi) - res->nu) < 1e-6);
    }
}

TEST_CASE("transition_scan single flat-band transition") {
    const auto s = ssh_scenario(0.6, 0.0, 1.0, 256);
    const auto trace = transition_scan(s.blocks, s.C0, s.frame, 20.0, 2000, 1e-6);
    REQUIRE(trace.transitions.size() == 1);
    CHECK(std::abs(*trace.nu.front()) == 1);
    CHECK(*trace.nu.back() == 0);
}

TEST_CASE("transition_scan no transitions at large hopping") {
    const auto s = ssh_scenario(2.0, 0.0, 1.0, 256);
    const auto trace = transition_scan(s.blocks, s.C0, s.frame, 20.0, 2000, 1e-6);
    CHECK(trace.transitions.empty());
}

TEST_CASE("transition_scan periodic flat-band transitions") {
    const double u = 1.3;
    const auto s = ssh_scenario(u, 0.0, 1.0, 256);
    const auto trace = transition_scan(s.blocks, s.C0, s.frame, 20.0, 2000, 1e-6);
    REQUIRE(trace.transitions.size() >= 3);
    const double T = std::numbers::pi / std::sqrt(u * u - 1.0);
    // the transition pattern repeats with period T
    bool periodic = false;
    for (int m = 1; m <= 4 && !periodic; ++m) {
        bool ok = trace.transitions.size() > static_cast<size_t>(m);
        for (size_t i = 0; i + m < trace.transitions.size(); ++i)
            ok = ok && std::abs(trace.transitions[i + m] - trace.transitions[i] - T) < 0.01 * T;
        periodic = ok;
    }
    CHECK(periodic);
}

TEST_CASE("transitions require a planar gap closing") {
    for (double u : {0.6, 1.3}) {
        const auto s = ssh_scenario(u, 0.0, 1.0, 256);
        const auto trace = transition_scan(s.blocks, s.C0, s.frame, 20.0, 2000, 1e-6);
        for (double tc : trace.transitions) {
            const auto Ct = evolve_propagator(s.blocks, s.C0, tc);
            CHECK(min_planar_amplitude(Ct, s.frame) < 1e-6);
        }
    }
}

TEST_CASE("winding stays integer and grid-stable in region II") {
    const auto s256 = ssh_scenario(1.0, 0.5, 1.0, 256);
    const auto s512 = ssh_scenario(1.0, 0.5, 1.0, 512);
    for (double t : {0.0, 1.0, 3.0}) {
        const auto a = winding_number(evolve_propagator(s256.blocks, s256.C0, t),
                                      s256.frame, 1e-6);
        const auto b = winding_number(evolve_propagator(s512.blocks, s512.C0, t),
                                      s512.frame, 1e-6);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(a->nu == b->nu);
    }
}

TEST_CASE("steady-direction field has zero winding in region I") {
    const auto s = ssh_scenario(0.4, 0.3, 1.0, 256);
    std::vector<Vector3> dirs;
    for (const auto& b : s.blocks) {
        const auto d = steady_direction(b);
        REQUIRE(d.has_value());
        dirs.push_back(*d);
    }
    const auto res = winding_of_vectors(dirs, s.frame, 1e-9);
    REQUIRE(res.has_value());
    CHECK(res->nu == 0);
}

TEST_CASE("n_K is anti-parallel to n_C") {
    const auto s = ssh_scenario(0.6, 0.2, 1.0, 64);
    CHECK(nk_nc_antiparallel_check(s.C0) < 1e-10);
    const auto Ct = evolve_propagator(s.blocks, s.C0, 1.0);
    CHECK(nk_nc_antiparallel_check(Ct) < 1e-8);

    // degenerate blocks (n_C = 0) are excluded rather than fatal
    auto C = s.C0;
    C.blocks[0] = 0.5 * Matrix2::Identity();
    CHECK(nk_nc_antiparallel_check(C) < 1e-8);
}
