#include "doctest.h"

#include "dmtopo/phasemap.hpp"

using namespace dmtopo;

namespace {
SweepMetadata fast_meta() {
    SweepMetadata meta;
    meta.n_k = 128;
    meta.n_samples = 400;
    return meta;
}
}  // namespace

TEST_CASE("classify_point reproduces the flat-band exemplars") {
    const InitialStateSpec spec{1.0, 2.0};
    const auto r1 = classify_point(0.6, 0.0, 1.0, spec, 20.0, 128, 400);
    CHECK(r1.region == Region::I);
    CHECK(r1.transition_behavior == TransitionBehavior::AtLeastOnce);

    const auto r2 = classify_point(1.3, 0.0, 1.0, spec, 20.0, 128, 400);
    CHECK(r2.region == Region::III);
    CHECK(r2.transition_behavior == TransitionBehavior::Repeated);

    const auto r3 = classify_point(2.0, 0.0, 1.0, spec, 20.0, 128, 400);
    CHECK(r3.region == Region::IV);
    CHECK(r3.transition_behavior == TransitionBehavior::None);
}

TEST_CASE("sweep covers the requested grid and reference points") {
    auto meta = fast_meta();
    const auto result = sweep(0.2, 2.5, 3, 0.5, 0.5, 2, meta);
    REQUIRE(result.u_values.size() == 3);
    REQUIRE(result.points.size() == 6);
    CHECK(result.u_values[0] == doctest::Approx(0.2));
    CHECK(result.u_values[1] == doctest::Approx(1.35));
    CHECK(result.u_values[2] == doctest::Approx(2.5));
    // u = 0.2 and u = 2.5 at w = 0.5 sit in regions I and III/IV
    CHECK(result.points.front().label.pt_part == PTGlobalLabel::FullyUnbroken);
    CHECK(result.points.back().label.pt_part == PTGlobalLabel::FullyBroken);
    CHECK_THROWS_AS((void)sweep(0, 1, 1, 0, 1, 2, meta), InvalidParameter);
}

TEST_CASE("region I sub-rectangle is uniformly at-least-once") {
    auto meta = fast_meta();
    for (double u : {0.1, 0.3, 0.5}) {
        for (double w : {0.0, 0.2, 0.4}) {
            if (u + w >= 1.0 - 1e-6) continue;
            const auto pt = scan_point(u, w, meta);
            CHECK(pt.label.region == Region::I);
            CHECK(pt.transition_times.size() >= 1);
        }
    }
}

TEST_CASE("flat-band PT boundary sits at u = lambda") {
    auto meta = fast_meta();
    PTGlobalLabel prev = PTGlobalLabel::FullyUnbroken;
    for (double u : {0.5, 0.9, 0.99, 1.01, 1.1, 2.0}) {
        const auto pt = scan_point(u, 0.0, meta);
        if (u < 1.0) CHECK(pt.label.pt_part == PTGlobalLabel::FullyUnbroken);
        if (u > 1.0) CHECK(pt.label.pt_part == PTGlobalLabel::FullyBroken);
        // monotone: never returns to unbroken as u grows
        if (prev == PTGlobalLabel::FullyBroken)
            CHECK(pt.label.pt_part == PTGlobalLabel::FullyBroken);
        prev = pt.label.pt_part;
    }
}

TEST_CASE("find_uc brackets and converges") {
    auto meta = fast_meta();
    const InitialStateSpec spec{1.0, 2.0};
    const double uc = find_uc(1.0, spec, 0.0, 1.0, 2.0, 0.005, meta);
    CHECK(uc > 1.45);
    CHECK(uc < 1.60);
    // reproducible per (a, b)
    CHECK(find_uc(1.0, spec, 0.0, 1.0, 2.0, 0.005, meta) == uc);

    CHECK_THROWS_AS((void)find_uc(1.0, InitialStateSpec{3.0, 2.0}, 0.0, 1.0, 2.0, 0.005, meta),
                    NoBracket);
    CHECK_THROWS_AS((void)find_uc(1.0, spec, 0.0, 1.8, 2.0, 0.005, meta), NoBracket);
}
