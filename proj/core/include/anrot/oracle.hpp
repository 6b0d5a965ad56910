#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "anrot/model.hpp"
#include "anrot/single_rotor.hpp"
#include "anrot/two_particle.hpp"
#include "anrot/vec.hpp"
#include "anrot/velocity_circle.hpp"

namespace anrot {

// Event-driven simulation of one or two point particles in the annulus with
// exact free flight: collision times are roots of quadratics, no integrator.
// This is the brute-force ground truth the reduced maps are checked against.

struct FreeParticle {
    Vec2 pos;
    Vec2 vel;
};

struct CartesianState {
    std::array<FreeParticle, 2> particles{};
    int n_particles = 1;
    double omega_inner = 0.0;
    double omega_outer = 0.0;  // used in double_rotor mode only
    double clock = 0.0;
};

enum class Wall : std::uint8_t { Inner, Outer };

struct WallHit {
    Wall wall;
    double dt;
    Vec2 point;
};

struct CollisionEvent {
    std::int64_t index = 0;
    double time = 0.0;
    int particle = 0;
    Wall wall = Wall::Outer;
    Vec2 point;  // impact position, reprojected onto the wall circle
    Vec2 vel_pre, vel_post;
    double omega_inner_pre = 0.0, omega_inner_post = 0.0;
    double omega_outer_pre = 0.0, omega_outer_post = 0.0;
};

// Earliest wall crossing of the ray pos + t*vel, t > 1e-13 (the departing
// root is discarded). Exact tangency of the inner circle (discriminant <= 0)
// counts as a miss, matching the strict inequality defining the miss set.
// StuckError on zero velocity or when no wall is reached.
WallHit next_wall_hit(const Vec2& pos, const Vec2& vel, double R);

// The sink sees each event plus the full post-event state snapshot (every
// particle advanced to the event time).
using EventSink = std::function<void(const CollisionEvent&, const CartesianState&)>;

// Processes n_events collisions in absolute-time order (two-particle events
// share one queue; the rotor state is read at processing time). Impact
// points are reprojected onto the exact circle after each event.
// NumericalDriftError if a particle leaves the closed annulus by more
// than 1e-9.
CartesianState run(CartesianState state, const PhysicalParams& p, std::int64_t n_events,
                   const EventSink& sink = {});

// velocity negation for time-reversal checks (rotors included)
CartesianState negate_velocities(CartesianState state);

// ---- initial-condition builders ------------------------------------------

// Single rotor: particle at polar angle psi on the inner circle, outgoing.
CartesianState make_single_rotor_initial(const SingleRotorState& st, const PhysicalParams& p,
                                         double psi);

// Double rotor: particle at outer polar angle phi0 (normalized [0,1)), just
// after an outer bounce, velocities read off the circle state s0.
CartesianState make_double_rotor_initial(const VelocityCircle& c, const PhysicalParams& p,
                                         const Integrals& ints, double s0, double phi0);

// Two particles: particle 1 at its inner impact (polar angle psi1) just
// after a v-collision with base state s0; particle 2 placed mid-flight so
// its last collision (at polar angle psi2) happened t0*tau2(s0) ago.
struct TwoParticleInitial {
    CartesianState state;
    double last_u_time = 0.0;  // < 0, time of particle 2's last inner collision
};
TwoParticleInitial make_two_particle_initial(const TwoParticleBase& b, double s0, double t0,
                                             double psi1, double psi2);

// ---- section extraction ---------------------------------------------------

struct OuterSample {
    double s = 0.0;    // base coordinate of the post-collision state
    double phi = 0.0;  // impact arclength, normalized [0,1)
    double time = 0.0;
};

// (s, phi) at every outer impact of a double-rotor event log
std::vector<OuterSample> extract_outer_section(std::span<const CollisionEvent> events,
                                               const VelocityCircle& c, const PhysicalParams& p,
                                               const Integrals& ints);

struct VSample {
    double s = 0.0;
    double t = 0.0;  // elapsed fraction of tau2(s) since the last u-collision
    double time = 0.0;
};

// (s, t) at every inner collision of particle 0 in a two-particle log.
// last_u_before_start seeds the u-collision clock for v-events that precede
// the first logged u-event.
std::vector<VSample> extract_v_section(std::span<const CollisionEvent> events,
                                       const TwoParticleBase& b, double last_u_before_start);

// u-collision parity between consecutive v-collisions (one entry per
// v-collision after the first logged one)
std::vector<int> u_parity_between_v(std::span<const CollisionEvent> events);

// ---- conserved quantities (frame-free) -------------------------------------

// Values of every conserved quantity of the mode, computable at any instant:
// tangential components are recovered from the angular momentum of the ray,
// which is constant along free flight.
std::vector<double> conserved_quantities(const CartesianState& state, const PhysicalParams& p);
std::vector<std::string> conserved_names(const PhysicalParams& p);

}  // namespace anrot
