#include "doctest.h"

#include <cmath>

#include "anrot/continued_fraction.hpp"
#include "anrot/errors.hpp"
#include "anrot/model.hpp"
#include "anrot/num.hpp"
#include "anrot/prng.hpp"
#include "anrot/rotor.hpp"
#include "anrot/velocity_circle.hpp"

using namespace anrot;

namespace {

PhysicalParams dr(double R, double e1, double e2) {
    return {SystemMode::DoubleRotor, R, e1, e2};
}

double gamma_expected(double e1, double e2) {
    return std::acos(1.0 / std::sqrt((1.0 + 1.0 / e1) * (1.0 + 1.0 / e2))) / kPi;
}

}  // namespace

TEST_SUITE("velocity_circle") {

TEST_CASE("symmetric configuration: unit circle through the origin, gamma = 1/3") {
    const PhysicalParams p = dr(0.5, 1.0, 1.0);
    const Integrals ints{0.0, 1.0, 8.0, {}, {}};
    const VelocityCircle c = build_circle(p, ints);
    CHECK(norm(c.center) <= 1e-15);
    CHECK(c.radius == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.gamma_norm == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("gamma matches the closed form for random parameters") {
    SplitMix64 rng(0x5eed0030);
    for (int i = 0; i < 100; ++i) {
        const double e1 = rng.uniform(0.2, 5.0), e2 = rng.uniform(0.2, 5.0);
        const PhysicalParams p = dr(0.5, e1, e2);
        const Integrals ints{rng.uniform(-0.5, 0.5), 1.0, 50.0, {}, {}};
        const VelocityCircle c = build_circle(p, ints);
        CHECK(std::fabs(std::cos(kPi * c.gamma_norm) -
                        1.0 / std::sqrt((1.0 + 1.0 / e1) * (1.0 + 1.0 / e2))) <= 1e-12);
    }
}

TEST_CASE("gamma does not depend on the integrals of motion") {
    const PhysicalParams p = dr(0.5, 1.3, 2.7);
    SplitMix64 rng(0x5eed0031);
    const double g0 = build_circle(p, {0.0, 1.0, 20.0, {}, {}}).gamma_norm;
    for (int i = 0; i < 10; ++i) {
        const double E = rng.uniform(0.5, 4.0);
        const double N = rng.uniform(-0.8, 0.8) * std::sqrt(E);
        const double g = build_circle(p, {N, E, 20.0 * E, {}, {}}).gamma_norm;
        CHECK(std::fabs(g - g0) <= 1e-12);
    }
}

TEST_CASE("empty circle throws") {
    CHECK_THROWS_AS(build_circle(dr(0.5, 1.0, 1.0), {3.0, 1.0, 8.0, {}, {}}), EmptyCircleError);
}

TEST_CASE("anchor is fixed by the outer collision") {
    SplitMix64 rng(0x5eed0032);
    for (int i = 0; i < 50; ++i) {
        const PhysicalParams p = dr(0.5, rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0));
        const Integrals ints{rng.uniform(-0.5, 0.5), 1.0, 30.0, {}, {}};
        const VelocityCircle c = build_circle(p, ints);
        const RescaledVelocity anchor = velocity_of_s(c, p, ints, 0.0);
        const RescaledVelocity image = outer_collision_double(anchor, p);
        CHECK(std::fabs(image.x - anchor.x) <= 1e-12);
        CHECK(std::fabs(image.y - anchor.y) <= 1e-12);
        CHECK(std::fabs(image.z - anchor.z) <= 1e-12);
    }
}

TEST_CASE("s <-> velocity round trip") {
    const PhysicalParams p = dr(0.5, 1.7, 0.6);
    const Integrals ints{0.3, 1.0, 25.0, {}, {}};
    const VelocityCircle c = build_circle(p, ints);
    SplitMix64 rng(0x5eed0033);
    double max_err = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double s = rng.uniform01();
        const double back = s_of_velocity(velocity_of_s(c, p, ints, s), c);
        max_err = std::max(max_err, circ_dist(back, s));
    }
    CHECK(max_err <= 1e-12);
}

TEST_CASE("off-circle velocities are rejected") {
    const PhysicalParams p = dr(0.5, 1.0, 1.0);
    const Integrals ints{0.0, 1.0, 8.0, {}, {}};
    const VelocityCircle c = build_circle(p, ints);
    CHECK_THROWS_AS(s_of_velocity({0.5, 0.5, 0.5, 1.0}, c), OffCircleError);
}

TEST_CASE("collision maps are represented by the circle reflections") {
    // outer: s -> -s; inner: s -> -s - gamma
    SplitMix64 rng(0x5eed0034);
    for (int trial = 0; trial < 10; ++trial) {
        const PhysicalParams p = dr(0.5, rng.uniform(0.4, 3.0), rng.uniform(0.4, 3.0));
        const Integrals ints{rng.uniform(-0.4, 0.4), 1.0, 40.0, {}, {}};
        const VelocityCircle c = build_circle(p, ints);
        for (int i = 0; i < 1000; ++i) {
            const double s = rng.uniform01();
            const RescaledVelocity v = velocity_of_s(c, p, ints, s);
            const double s_out = s_of_velocity(outer_collision_double(v, p), c);
            CHECK(circ_dist(s_out, mod1(-s)) <= 1e-10);
            const double s_in = s_of_velocity(inner_collision_double(v, p), c);
            CHECK(circ_dist(s_in, mod1(-s - c.gamma_norm)) <= 1e-10);
        }
    }
}

TEST_CASE("miss set: empty at high full energy, populated near the shell floor") {
    const PhysicalParams p = dr(0.5, 1.0, 1.0);
    const VelocityCircle c = build_circle(p, {0.0, 1.0, 8.0, {}, {}});
    CHECK(compute_U(c, p, {0.0, 1.0, 8.0, {}, {}}).empty());
    CHECK(u_set_is_empty(c, p, {0.0, 1.0, 8.0, {}, {}}));

    const Integrals low{0.0, 1.0, 1.01, {}, {}};
    const ArcSet u = compute_U(c, p, low);
    CHECK_FALSE(u.empty());
    CHECK_FALSE(u_set_is_empty(c, p, low));

    // brute-force scan of the defining inequality over 10^6 grid points
    const double R2 = 0.25;
    long mismatches = 0;
    for (int i = 0; i < 1000000; ++i) {
        const double s = (i + 0.5) / 1000000.0;
        const Vec3 q = point_at(c, s);
        const double w2 = 1.01 - q.x * q.x / R2 - q.y * q.y - q.z * q.z;
        const bool inside = q.z * q.z * (1.0 - R2) > R2 * w2;
        if (inside != u.contains(s) && u.boundary_distance(s) > 1e-9) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("miss set is invariant under the inner reflection") {
    const PhysicalParams p = dr(0.5, 1.0, 2.0);
    const Integrals ints{0.0, 1.0, 3.6, {}, {}};
    const VelocityCircle c = build_circle(p, ints);
    const ArcSet u = compute_U(c, p, ints);
    REQUIRE_FALSE(u.empty());
    const ArcSet refl = u.reflected(c.gamma_norm);
    REQUIRE(refl.count() == u.count());
    // endpoint-match the reflected arcs against the originals
    for (const Arc& a : refl.arcs()) {
        double best = 1.0;
        for (const Arc& b : u.arcs())
            best = std::min(best, std::max(circ_dist(a.lo, b.lo), std::fabs(a.len - b.len)));
        CHECK(best <= 1e-10);
    }
}

TEST_CASE("base map branches and the double-step rotation") {
    const PhysicalParams p = dr(0.5, 1.0, 1.0);
    const Integrals ints{0.0, 1.0, 8.0, {}, {}};
    const VelocityCircle c = build_circle(p, ints);
    const ArcSet u;  // empty

    // (0, O) -> (1 - gamma, I)
    const BaseState b1 = base_step({0.0, Sheet::O}, c, u);
    CHECK(b1.sheet == Sheet::I);
    CHECK(b1.s == doctest::Approx(1.0 - c.gamma_norm).epsilon(1e-12));

    // (s, I) -> (-s, O)
    const BaseState b2 = base_step({0.2, Sheet::I}, c, u);
    CHECK(b2.sheet == Sheet::O);
    CHECK(b2.s == doctest::Approx(0.8).epsilon(1e-12));

    // double step on O is a rotation by gamma
    SplitMix64 rng(0x5eed0035);
    for (int i = 0; i < 100; ++i) {
        const double s = rng.uniform01();
        const BaseState two = base_step(base_step({s, Sheet::O}, c, u), c, u);
        CHECK(two.sheet == Sheet::O);
        CHECK(circ_dist(two.s, mod1(s + c.gamma_norm)) <= 1e-13);
    }
}

TEST_CASE("sheet-I states inside the miss set are invalid") {
    const PhysicalParams p = dr(0.5, 1.0, 2.0);
    const Integrals ints{0.0, 1.0, 3.6, {}, {}};
    const VelocityCircle c = build_circle(p, ints);
    const ArcSet u = compute_U(c, p, ints);
    REQUIRE_FALSE(u.empty());
    const double inside = mod1(u.arcs()[0].lo + 0.5 * u.arcs()[0].len);
    CHECK_THROWS_AS(base_step({inside, Sheet::I}, c, u), InvalidStateError);
}

TEST_CASE("base map is a bijection: step then inverse is the identity") {
    const PhysicalParams p = dr(0.5, 1.0, 2.0);
    const Integrals ints{0.0, 1.0, 3.6, {}, {}};
    const VelocityCircle c = build_circle(p, ints);
    const ArcSet u = compute_U(c, p, ints);
    SplitMix64 rng(0x5eed0036);
    for (int i = 0; i < 10000; ++i) {
        BaseState b{rng.uniform01(), rng.uniform01() < 0.5 ? Sheet::I : Sheet::O};
        if (b.sheet == Sheet::I && u.contains(b.s)) b.sheet = Sheet::O;
        const BaseState fwd = base_step(b, c, u);
        const BaseState back = base_step_inverse(fwd, c, u);
        CHECK(back.sheet == b.sheet);
        CHECK(circ_dist(back.s, b.s) <= 1e-13);
    }
}

TEST_CASE("classification: rational and irrational evidence") {
    const NumberClassification third = classify_gamma(dr(0.5, 1.0, 1.0), 40);
    CHECK(third.kind == NumberKind::Rational);
    CHECK(third.p == 1);
    CHECK(third.q == 3);

    // eta1 = eta2 = 1 + sqrt(2): cos(pi gamma) = sqrt(2)/2, gamma = 1/4
    const double es = 1.0 + std::sqrt(2.0);
    const NumberClassification quarter = classify_gamma(dr(0.5, es, es), 40);
    CHECK(quarter.kind == NumberKind::Rational);
    CHECK(quarter.p == 1);
    CHECK(quarter.q == 4);

    const NumberClassification irr = classify_gamma(dr(0.5, 1.0, 2.0), 40);
    CHECK(irr.kind == NumberKind::DiophantineLike);
    CHECK(irr.value == doctest::Approx(0.3040867239846964).epsilon(1e-12));
    CHECK(irr.convergent_error > 1e-13);
}

TEST_CASE("classification handles a half rotation") {
    // gamma = 1/2 exactly requires cos(pi gamma) = 0, reached only in the
    // eta -> 0 limit; classify the number directly instead
    const NumberClassification half = classify_number(0.5, 40);
    CHECK(half.kind == NumberKind::Rational);
    CHECK(half.p == 1);
    CHECK(half.q == 2);
}

}  // TEST_SUITE
