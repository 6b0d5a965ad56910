#include "doctest.h"

#include <cmath>

#include "anrot/errors.hpp"
#include "anrot/geometry.hpp"
#include "anrot/num.hpp"
#include "anrot/prng.hpp"
#include "anrot/vec.hpp"

using namespace anrot;

namespace {

// Independent planar oracle: launch a ray from the outer circle at angle
// beta to the inward normal, intersect the inner circle directly, and
// measure the swept central angle and chord length.
struct RayTrace {
    double central_angle;
    double chord;
};

RayTrace trace_to_inner(double beta, double R) {
    const Vec2 p{1.0, 0.0};
    // inward normal is -p; rotate it by beta toward the counterclockwise tangent
    const Vec2 dir{-std::cos(beta), std::sin(beta)};
    const double b = dot(p, dir);
    const double c = norm_sq(p) - R * R;
    const double disc = b * b - c;  // |dir| = 1
    REQUIRE(disc >= -1e-15);
    const double t = -b - std::sqrt(std::max(0.0, disc));
    const Vec2 hit = p + t * dir;
    return {std::atan2(hit.y, hit.x), norm(hit - p)};
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("radial chord has no deflection") {
    CHECK(beta_hat(0.0, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(beta_hat(0.0, 0.9) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("grazing chord deflects by arccos(R)") {
    // R = 0.5, beta = pi/6: arcsin(1) - pi/6 = pi/3
    CHECK(beta_hat(kPi / 6.0, 0.5) == doctest::Approx(kPi / 3.0).epsilon(1e-12));
    CHECK(kPi / 3.0 == doctest::Approx(std::acos(0.5)).epsilon(1e-15));
}

TEST_CASE("beta_hat is odd") {
    SplitMix64 rng(0x5eed0020);
    for (int i = 0; i < 1000; ++i) {
        const double R = rng.uniform(0.2, 0.9);
        const double beta = rng.uniform(0.0, std::asin(R));
        CHECK(beta_hat(-beta, R) == doctest::Approx(-beta_hat(beta, R)).epsilon(1e-14));
    }
}

TEST_CASE("beta_hat throws past the reachability bound") {
    CHECK_THROWS_AS(beta_hat(kPi / 4.0, 0.5), UnreachableError);  // sin = 0.707 > 0.5
    CHECK_THROWS_AS(chord_length(kPi / 4.0, 0.5), UnreachableError);
}

TEST_CASE("near-grazing radicand is clamped, no NaN") {
    const double R = 0.5;
    const double beta = std::asin(R) + 1e-9;  // sin^2 - R^2 within the clamp band
    CHECK(std::isfinite(beta_hat(beta, R)));
    CHECK(std::isfinite(chord_length(beta, R)));
}

TEST_CASE("chord length: radial gap and grazing value") {
    CHECK(chord_length(0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    // grazing: cos(pi/6) - 0 = sqrt(3)/2
    CHECK(chord_length(kPi / 6.0, 0.5) ==
          doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("chord length is even in beta") {
    SplitMix64 rng(0x5eed0021);
    for (int i = 0; i < 1000; ++i) {
        const double R = rng.uniform(0.2, 0.9);
        const double beta = rng.uniform(0.0, std::asin(R) * 0.999);
        CHECK(chord_length(-beta, R) == doctest::Approx(chord_length(beta, R)).epsilon(1e-14));
    }
}

TEST_CASE("beta_hat matches the planar ray-trace oracle") {
    SplitMix64 rng(0x5eed0022);
    for (int i = 0; i < 1000; ++i) {
        const double R = rng.uniform(0.2, 0.9);
        const double beta = rng.uniform(-std::asin(R) * 0.999, std::asin(R) * 0.999);
        const RayTrace tr = trace_to_inner(beta, R);
        CHECK(std::fabs(tr.central_angle - beta_hat(beta, R)) <= 1e-10);
        CHECK(std::fabs(tr.chord - chord_length(beta, R)) <= 1e-10);
    }
}

TEST_CASE("beta_hat is strictly increasing on the reachable interval") {
    const double R = 0.5;
    const double lim = std::asin(R) * 0.9999;
    double prev = beta_hat(-lim, R);
    for (int i = 1; i <= 10000; ++i) {
        const double beta = -lim + 2.0 * lim * i / 10000.0;
        const double cur = beta_hat(beta, R);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("fiber advance: composite values and bound") {
    CHECK(fiber_advance(0.0, 0.0, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(fiber_advance(kPi / 6.0, kPi / 6.0, 0.5) ==
          doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
    SplitMix64 rng(0x5eed0023);
    for (int i = 0; i < 1000; ++i) {
        const double R = rng.uniform(0.2, 0.9);
        const double cap = std::asin(R) * 0.999;
        const double adv = fiber_advance(rng.uniform(-cap, cap), rng.uniform(-cap, cap), R);
        CHECK(std::fabs(adv) <= 2.0 * std::acos(R) + 1e-12);
    }
}

TEST_CASE("miss advance: diameter, right angle, grazing limit") {
    CHECK(miss_advance(0.0) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(miss_advance(kPi / 4.0) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    CHECK(miss_advance(kPi / 2.0 - 1e-9) == doctest::Approx(2e-9).epsilon(1e-3));
}

}  // TEST_SUITE
