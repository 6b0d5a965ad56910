#include "doctest.h"

#include <cmath>
#include <vector>

#include "anrot/errors.hpp"
#include "anrot/num.hpp"
#include "anrot/oracle.hpp"
#include "anrot/prng.hpp"
#include "anrot/skew.hpp"

using namespace anrot;

TEST_SUITE("oracle") {

TEST_CASE("wall hits: radial shot, grazing departure, exact tangency") {
    // radial shot from the outer wall hits the inner circle halfway
    const WallHit h = next_wall_hit({1.0, 0.0}, {-1.0, 0.0}, 0.5);
    CHECK(h.wall == Wall::Inner);
    CHECK(h.dt == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(h.point.x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::fabs(h.point.y) <= 1e-15);

    // nearly tangential start at the outer wall: the departing root is
    // discarded and the short chord back to the outer wall is found
    const double eps = 1e-6;
    const Vec2 v = normalized({-eps, 1.0});
    const WallHit g = next_wall_hit({1.0, 0.0}, v, 0.5);
    CHECK(g.wall == Wall::Outer);
    CHECK(g.dt == doctest::Approx(2.0 * eps).epsilon(1e-3));

    // impact parameter exactly R: tangency counts as a miss
    const double R = 0.5;
    const Vec2 tangent_dir{-std::sqrt(1.0 - R * R), R};
    const WallHit t = next_wall_hit({1.0, 0.0}, tangent_dir, R);
    CHECK(t.wall == Wall::Outer);

    CHECK_THROWS_AS(next_wall_hit({0.7, 0.0}, {0.0, 0.0}, 0.5), StuckError);
}

TEST_CASE("single-rotor runs alternate walls strictly") {
    PhysicalParams p{SystemMode::SingleRotor, 0.5, 1.3, {}};
    SplitMix64 rng(0x5eed0070);
    for (int trial = 0; trial < 20; ++trial) {
        SingleRotorState st = make_single_rotor_state(rng.uniform(-2, 2), rng.uniform(-2, 2),
                                                      rng.uniform(0.5, 3.0), p);
        CartesianState cs = make_single_rotor_initial(st, p, rng.uniform(0.0, kTwoPi));
        std::vector<Wall> walls;
        run(cs, p, 100, [&](const CollisionEvent& e, const CartesianState&) { walls.push_back(e.wall); });
        REQUIRE(walls.size() == 100);
        CHECK(walls[0] == Wall::Outer);  // started at the inner wall
        for (std::size_t i = 1; i < walls.size(); ++i) CHECK(walls[i] != walls[i - 1]);
    }
}

TEST_CASE("energy and momentum conservation over a short double-rotor run") {
    PhysicalParams p{SystemMode::DoubleRotor, 0.5, 1.0, 2.0};
    const Integrals ints{0.2, 1.0, 8.0, {}, {}};
    const VelocityCircle c = build_circle(p, ints);
    CartesianState cs = make_double_rotor_initial(c, p, ints, 0.37, 0.0);
    const std::vector<double> q0 = conserved_quantities(cs, p);
    const CartesianState fin = run(cs, p, 10000, {});
    const std::vector<double> q1 = conserved_quantities(fin, p);
    double worst = 0.0;
    for (std::size_t i = 0; i < q0.size(); ++i)
        worst = std::max(worst, std::fabs(q1[i] - q0[i]) / std::max(1.0, std::fabs(q0[i])));
    CHECK(worst <= 1e-12);
}

TEST_CASE("double-rotor states in the miss set bounce outer-outer") {
    PhysicalParams p{SystemMode::DoubleRotor, 0.5, 1.0, 2.0};
    const Integrals ints{0.0, 1.0, 3.6, {}, {}};
    const VelocityCircle c = build_circle(p, ints);
    const ArcSet u = compute_U(c, p, ints);
    REQUIRE_FALSE(u.empty());
    const double s_in = mod1(u.arcs()[0].lo + 0.5 * u.arcs()[0].len);
    CartesianState cs = make_double_rotor_initial(c, p, ints, s_in, 0.0);
    std::vector<Wall> walls;
    run(cs, p, 2, [&](const CollisionEvent& e, const CartesianState&) { walls.push_back(e.wall); });
    CHECK(walls[0] == Wall::Outer);  // consecutive outer bounces observed
}

TEST_CASE("outer-section extraction matches the base rotation") {
    PhysicalParams p{SystemMode::DoubleRotor, 0.5, 1.0, 2.0};
    const Integrals ints{0.0, 1.0, 8.0, {}, {}};
    const VelocityCircle c = build_circle(p, ints);
    const double s0 = 0.123;
    CartesianState cs = make_double_rotor_initial(c, p, ints, s0, 0.0);
    std::vector<CollisionEvent> events;
    run(cs, p, 400, [&](const CollisionEvent& e, const CartesianState&) { events.push_back(e); });
    const auto section = extract_outer_section(events, c, p, ints);
    REQUIRE(section.size() >= 100);
    for (std::size_t k = 0; k < 100; ++k) {
        const double expect = mod1(s0 + (k + 1) * c.gamma_norm);
        CHECK(circ_dist(section[k].s, expect) <= 1e-10);
    }
}

TEST_CASE("reversibility: velocity negation retraces the run") {
    PhysicalParams p{SystemMode::DoubleRotor, 0.5, 1.0, 2.0};
    const Integrals ints{0.2, 1.0, 8.0, {}, {}};
    const VelocityCircle c = build_circle(p, ints);
    CartesianState start = make_double_rotor_initial(c, p, ints, 0.37, 0.0);
    // move off the wall so the reversed first leg is unambiguous
    const WallHit h0 = next_wall_hit(start.particles[0].pos, start.particles[0].vel, p.R);
    start.particles[0].pos = start.particles[0].pos + (0.5 * h0.dt) * start.particles[0].vel;

    double first_leg = 0.0;
    CartesianState fwd = start;
    std::vector<double> times;
    fwd = run(fwd, p, 1000, [&](const CollisionEvent& e, const CartesianState&) { times.push_back(e.time); });
    first_leg = times.front();

    CartesianState back = negate_velocities(fwd);
    back = run(back, p, 1000, [](const CollisionEvent&, const CartesianState&) {});
    // drift back to the starting position
    for (int i = 0; i < back.n_particles; ++i)
        back.particles[i].pos = back.particles[i].pos + first_leg * back.particles[i].vel;

    CHECK(norm(back.particles[0].pos - start.particles[0].pos) <= 1e-8);
    CHECK(norm(back.particles[0].vel + start.particles[0].vel) <= 1e-8);
    CHECK(std::fabs(back.omega_inner + start.omega_inner) <= 1e-8);
    CHECK(std::fabs(back.omega_outer + start.omega_outer) <= 1e-8);
}

TEST_CASE("two-particle initial condition reproduces (s0, t0) and the reduced map") {
    const TwoParticleBase b = build_two_particle_base(0.4, 1.7, 0.2, 1.0, 2.3, 3.1);
    PhysicalParams p{SystemMode::TwoParticle, 0.4, 1.7, {}};
    const double s0 = 0.21, t0 = 0.63;
    const TwoParticleInitial init = make_two_particle_initial(b, s0, t0, 0.0, 2.0);

    std::vector<CollisionEvent> events;
    run(init.state, p, 4000, [&](const CollisionEvent& e, const CartesianState&) { events.push_back(e); });
    const auto section = extract_v_section(events, b, init.last_u_time);
    REQUIRE(section.size() >= 500);

    TwoParticleState st{s0, t0};
    double worst_s = 0.0, worst_t = 0.0;
    for (std::size_t k = 0; k < 500; ++k) {
        auto [next, branch] = two_step(st, b);
        (void)branch;
        worst_s = std::max(worst_s, circ_dist(section[k].s, next.s));
        worst_t = std::max(worst_t, circ_dist(section[k].t, next.t));
        st = next;
    }
    CHECK(worst_s <= 1e-8);
    CHECK(worst_t <= 1e-8);

    // branch parity against u-collision counts
    const auto parity = u_parity_between_v(events);
    TwoParticleState rt{s0, t0};
    // align: parity[k] covers the window ending at section[k+1]
    auto [first, fb] = two_step(rt, b);
    (void)fb;
    rt = first;
    for (std::size_t k = 0; k + 1 < 400; ++k) {
        auto [next, branch] = two_step(rt, b);
        CHECK((branch == Branch::Odd ? 1 : 0) == parity[k]);
        rt = next;
    }
}

TEST_CASE("two-particle conservation across a long run") {
    const TwoParticleBase b = build_two_particle_base(0.5, 1.0, 0.3, 1.0, 2.0, 2.7);
    PhysicalParams p{SystemMode::TwoParticle, 0.5, 1.0, {}};
    const TwoParticleInitial init = make_two_particle_initial(b, 0.4, 0.5, 0.3, 1.9);
    const std::vector<double> q0 = conserved_quantities(init.state, p);
    const CartesianState fin = run(init.state, p, 20000, {});
    const std::vector<double> q1 = conserved_quantities(fin, p);
    for (std::size_t i = 0; i < q0.size(); ++i)
        CHECK(std::fabs(q1[i] - q0[i]) <= 1e-11 * std::max(1.0, std::fabs(q0[i])));
}

TEST_CASE("containment holds at every event") {
    PhysicalParams p{SystemMode::DoubleRotor, 0.5, 0.7, 1.9};
    const Integrals ints{0.1, 1.0, 9.0, {}, {}};
    const VelocityCircle c = build_circle(p, ints);
    CartesianState cs = make_double_rotor_initial(c, p, ints, 0.9, 0.25);
    run(cs, p, 5000, [&](const CollisionEvent& e, const CartesianState&) {
        const double r = norm(e.point);
        CHECK(r >= p.R - 1e-12);
        CHECK(r <= 1.0 + 1e-12);
    });
}

}  // TEST_SUITE
