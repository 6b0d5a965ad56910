#include "anrot/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "anrot/errors.hpp"
#include "anrot/num.hpp"
#include "anrot/rotor.hpp"

namespace anrot {

namespace {

constexpr double kMinRoot = 1e-13;  // discards the departing-wall root

// smallest admissible root of |pos + t vel|^2 = r^2; NaN if none
double inner_crossing(const Vec2& pos, const Vec2& vel, double R) {
    const double a = norm_sq(vel);
    const double b = dot(pos, vel);
    const double c = norm_sq(pos) - R * R;
    const double disc = b * b - a * c;
    if (!(disc > 0.0)) return std::numeric_limits<double>::quiet_NaN();  // tangency is a miss
    const double sd = std::sqrt(disc);
    // entering root first; fall back to the exiting root when starting on
    // the inner wall itself
    const double t1 = (-b - sd) / a;
    if (t1 > kMinRoot) return t1;
    const double t2 = (-b + sd) / a;
    if (t2 > kMinRoot && c < -1e-15) return t2;  // strictly inside: must leave through it
    return std::numeric_limits<double>::quiet_NaN();
}

double outer_crossing(const Vec2& pos, const Vec2& vel) {
    const double a = norm_sq(vel);
    const double b = dot(pos, vel);
    const double c = norm_sq(pos) - 1.0;
    const double disc = b * b - a * c;
    if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double t = (-b + std::sqrt(disc)) / a;
    return t > kMinRoot ? t : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

WallHit next_wall_hit(const Vec2& pos, const Vec2& vel, double R) {
    if (norm_sq(vel) == 0.0) throw StuckError("particle has zero velocity");
    const double ti = inner_crossing(pos, vel, R);
    const double to = outer_crossing(pos, vel);
    const bool has_i = std::isfinite(ti);
    const bool has_o = std::isfinite(to);
    if (!has_i && !has_o) throw StuckError("no wall crossing found");
    if (has_i && (!has_o || ti < to)) return {Wall::Inner, ti, pos + ti * vel};
    return {Wall::Outer, to, pos + to * vel};
}

namespace {

struct PendingHit {
    WallHit hit;
    double abs_time;
};

PendingHit pending(const FreeParticle& fp, double now, double R) {
    WallHit h = next_wall_hit(fp.pos, fp.vel, R);
    return {h, now + h.dt};
}

}  // namespace

CartesianState run(CartesianState state, const PhysicalParams& p, std::int64_t n_events,
                   const EventSink& sink) {
    const bool outer_rotates = (p.mode == SystemMode::DoubleRotor);
    std::array<PendingHit, 2> next{};
    for (int i = 0; i < state.n_particles; ++i)
        next[i] = pending(state.particles[i], state.clock, p.R);

    for (std::int64_t ev = 0; ev < n_events; ++ev) {
        int who = 0;
        if (state.n_particles == 2 && next[1].abs_time < next[0].abs_time) who = 1;
        const double t_event = next[who].abs_time;
        const double dt = t_event - state.clock;

        // advance every particle to the event time; free flight is exact
        for (int i = 0; i < state.n_particles; ++i)
            state.particles[i].pos = state.particles[i].pos + dt * state.particles[i].vel;
        state.clock = t_event;

        FreeParticle& fp = state.particles[who];
        const Wall wall = next[who].hit.wall;
        const double r = (wall == Wall::Inner) ? p.R : 1.0;
        // the solved impact point is sharper than the incremental advance
        fp.pos = next[who].hit.point;
        // reproject onto the exact circle to stop radial drift
        const double len = norm(fp.pos);
        if (len < p.R - 1e-9 || len > 1.0 + 1e-9)
            throw NumericalDriftError("particle left the annulus: |pos| = " + std::to_string(len));
        fp.pos = (r / len) * fp.pos;

        CollisionEvent e;
        e.index = ev;
        e.time = t_event;
        e.particle = who;
        e.wall = wall;
        e.point = fp.pos;
        e.vel_pre = fp.vel;
        e.omega_inner_pre = state.omega_inner;
        e.omega_outer_pre = state.omega_outer;

        const Vec2 n = (1.0 / r) * fp.pos;
        const Vec2 t = perp(n);
        const double vn = dot(fp.vel, n);
        const double vt = dot(fp.vel, t);
        if (wall == Wall::Inner) {
            const RotorContact out =
                rotor_reflect({vn, vt, p.R * state.omega_inner, p.eta1, p.R});
            state.omega_inner = out.r_omega / p.R;
            fp.vel = out.vt * t + (-vn) * n;
        } else if (outer_rotates) {
            const RotorContact out = rotor_reflect({vn, vt, state.omega_outer, *p.eta2, 1.0});
            state.omega_outer = out.r_omega;
            fp.vel = out.vt * t + (-vn) * n;
        } else {
            fp.vel = fp.vel - (2.0 * vn) * n;  // elastic
        }

        e.vel_post = fp.vel;
        e.omega_inner_post = state.omega_inner;
        e.omega_outer_post = state.omega_outer;
        if (sink) sink(e, state);

        next[who] = pending(fp, state.clock, p.R);
        // the other particle's flight is unaffected; its pending hit stands
    }
    return state;
}

CartesianState negate_velocities(CartesianState state) {
    for (int i = 0; i < state.n_particles; ++i) state.particles[i].vel = -state.particles[i].vel;
    state.omega_inner = -state.omega_inner;
    state.omega_outer = -state.omega_outer;
    return state;
}

// ---- initial conditions -----------------------------------------------------

CartesianState make_single_rotor_initial(const SingleRotorState& st, const PhysicalParams& p,
                                         double psi) {
    CartesianState cs;
    cs.n_particles = 1;
    cs.omega_inner = st.omega;
    const Vec2 n{std::cos(psi), std::sin(psi)};
    const Vec2 t = perp(n);
    cs.particles[0].pos = p.R * n;
    // outgoing from the inner wall
    cs.particles[0].vel = st.vt * t + std::fabs(st.vn) * n;
    return cs;
}

CartesianState make_double_rotor_initial(const VelocityCircle& c, const PhysicalParams& p,
                                         const Integrals& ints, double s0, double phi0) {
    const RescaledVelocity rv = velocity_of_s(c, p, ints, s0);
    const PhysicalVelocity pv = unrescale(rv, p);
    CartesianState cs;
    cs.n_particles = 1;
    cs.omega_inner = pv.omega1;
    cs.omega_outer = pv.omega2;
    const double ang = kTwoPi * phi0;
    const Vec2 n{std::cos(ang), std::sin(ang)};
    const Vec2 t = perp(n);
    cs.particles[0].pos = n;  // on the outer wall
    // just after an outer bounce: moving inward
    cs.particles[0].vel = pv.vt * t - pv.vn * n;
    return cs;
}

TwoParticleInitial make_two_particle_initial(const TwoParticleBase& b, double s0, double t0,
                                             double psi1, double psi2) {
    TwoParticleInitial out;
    CartesianState& cs = out.state;
    cs.n_particles = 2;
    const double se = std::sqrt(b.eta);
    cs.omega_inner = q_of(b, s0) / (se * b.R);

    {  // particle 1: at its inner impact, outgoing, post-collision state s0
        const Vec2 n{std::cos(psi1), std::sin(psi1)};
        const Vec2 t = perp(n);
        cs.particles[0].pos = b.R * n;
        cs.particles[0].vel = v_of(b, s0) * t + b.vn * n;
    }
    {  // particle 2: left its inner impact t0*tau2(s0) ago
        const double tau2 = return_time_inner(u_of(b, s0), b.un, b.R);
        const double elapsed = t0 * tau2;
        out.last_u_time = -elapsed;
        const Vec2 n{std::cos(psi2), std::sin(psi2)};
        const Vec2 t = perp(n);
        Vec2 pos = b.R * n;
        Vec2 vel = u_of(b, s0) * t + b.un * n;
        // flow forward through at most one outer bounce (elapsed < tau2)
        double remaining = elapsed;
        const WallHit leg = next_wall_hit(pos, vel, b.R);
        if (remaining <= leg.dt) {
            pos = pos + remaining * vel;
        } else {
            pos = leg.point;
            const Vec2 nn = pos;  // |pos| = 1 at the outer wall
            vel = vel - (2.0 * dot(vel, nn)) * nn;
            remaining -= leg.dt;
            pos = pos + remaining * vel;
        }
        cs.particles[1].pos = pos;
        cs.particles[1].vel = vel;
    }
    return out;
}

// ---- extraction -------------------------------------------------------------

std::vector<OuterSample> extract_outer_section(std::span<const CollisionEvent> events,
                                               const VelocityCircle& c, const PhysicalParams& p,
                                               const Integrals& ints) {
    (void)ints;
    std::vector<OuterSample> out;
    for (const CollisionEvent& e : events) {
        if (e.wall != Wall::Outer) continue;
        const Vec2 n = e.point;  // unit at the outer wall
        const Vec2 t = perp(n);
        const double vt = dot(e.vel_post, t);
        const double vn = std::fabs(dot(e.vel_post, n));
        const RescaledVelocity rv = rescale(vt, e.omega_inner_post, e.omega_outer_post, vn, p);
        OuterSample s;
        s.s = s_of_velocity(rv, c);
        s.phi = mod1(std::atan2(e.point.y, e.point.x) / kTwoPi);
        s.time = e.time;
        out.push_back(s);
    }
    return out;
}

std::vector<VSample> extract_v_section(std::span<const CollisionEvent> events,
                                       const TwoParticleBase& b, double last_u_before_start) {
    std::vector<VSample> out;
    double last_u = last_u_before_start;
    const double se = std::sqrt(b.eta);
    for (const CollisionEvent& e : events) {
        if (e.wall != Wall::Inner) continue;
        if (e.particle == 1) {
            last_u = e.time;
            continue;
        }
        // post-collision base point from (v, u, q); u is read from the ray
        // angular momentum of particle 2, constant along its flight
        const Vec2 n = (1.0 / b.R) * e.point;
        const Vec2 t = perp(n);
        const double v = dot(e.vel_post, t);
        // u requires particle 2's state; its tangential component at the
        // inner wall equals cross(pos, vel)/R along the whole flight, but
        // pos/vel of the other particle are not part of the event record, so
        // q and the circle equations pin it down instead:
        const double q = se * b.R * e.omega_inner_post;
        // on the circle: u = N - v - sqrt(eta) q
        const double u = b.N - v - se * q;
        VSample smp;
        smp.s = s_of_point(b.circle, {v, u, q});
        const double tau2 = return_time_inner(u, b.un, b.R);
        smp.t = (e.time - last_u) / tau2;
        smp.time = e.time;
        out.push_back(smp);
    }
    return out;
}

std::vector<int> u_parity_between_v(std::span<const CollisionEvent> events) {
    std::vector<int> out;
    int count = 0;
    bool seen_v = false;
    for (const CollisionEvent& e : events) {
        if (e.wall != Wall::Inner) continue;
        if (e.particle == 1) {
            ++count;
            continue;
        }
        if (seen_v) out.push_back(count % 2);
        seen_v = true;
        count = 0;
    }
    return out;
}

// ---- conserved quantities ---------------------------------------------------

namespace {

// signed tangential component at radius r of the ray through (pos, vel)
double ray_tangential(const FreeParticle& fp, double r) {
    return cross(fp.pos, fp.vel) / r;
}

}  // namespace

std::vector<double> conserved_quantities(const CartesianState& st, const PhysicalParams& p) {
    std::vector<double> q;
    switch (p.mode) {
        case SystemMode::SingleRotor: {
            const double vt_in = ray_tangential(st.particles[0], p.R);
            const double speed2 = norm_sq(st.particles[0].vel);
            q.push_back(vt_in + p.eta1 * p.R * st.omega_inner);                       // N
            q.push_back(vt_in * vt_in + p.eta1 * p.R * p.R * st.omega_inner * st.omega_inner);  // E
            q.push_back(std::sqrt(std::max(0.0, speed2 - vt_in * vt_in)));            // |vn|
            break;
        }
        case SystemMode::DoubleRotor: {
            const double vt_out = ray_tangential(st.particles[0], 1.0);
            const double speed2 = norm_sq(st.particles[0].vel);
            const double r2w1 = p.R * p.R * st.omega_inner;
            q.push_back(vt_out + p.eta1 * r2w1 + *p.eta2 * st.omega_outer);  // N
            q.push_back(vt_out * vt_out + p.eta1 * r2w1 * r2w1 +
                        *p.eta2 * st.omega_outer * st.omega_outer);  // E
            q.push_back(speed2 + p.eta1 * p.R * p.R * st.omega_inner * st.omega_inner +
                        *p.eta2 * st.omega_outer * st.omega_outer);  // F
            break;
        }
        case SystemMode::TwoParticle: {
            const double v = ray_tangential(st.particles[0], p.R);
            const double u = ray_tangential(st.particles[1], p.R);
            const double qq = std::sqrt(p.eta1) * p.R * st.omega_inner;
            q.push_back(v + u + std::sqrt(p.eta1) * qq);      // N
            q.push_back(v * v + u * u + qq * qq);             // E
            q.push_back(std::sqrt(std::max(0.0, norm_sq(st.particles[0].vel) - v * v)));  // vn
            q.push_back(std::sqrt(std::max(0.0, norm_sq(st.particles[1].vel) - u * u)));  // un
            break;
        }
    }
    return q;
}

std::vector<std::string> conserved_names(const PhysicalParams& p) {
    switch (p.mode) {
        case SystemMode::SingleRotor: return {"N", "E", "vn"};
        case SystemMode::DoubleRotor: return {"N", "E", "F"};
        case SystemMode::TwoParticle: return {"N", "E", "vn", "un"};
    }
    return {};
}

}  // namespace anrot
