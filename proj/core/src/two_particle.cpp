#include "anrot/two_particle.hpp"

#include <cmath>
#include <string>

#include "anrot/continued_fraction.hpp"
#include "anrot/errors.hpp"
#include "anrot/geometry.hpp"
#include "anrot/log.hpp"
#include "anrot/num.hpp"
#include "anrot/prng.hpp"

namespace anrot {

TwoParticleBase build_two_particle_base(double R, double eta, double N, double E, double vn,
                                        double un) {
    if (!(R > 0.0 && R < 1.0)) throw OutOfRangeError("R must lie in (0,1)");
    if (!(eta > 0.0)) throw OutOfRangeError("eta must be positive");
    if (vn == 0.0 || un == 0.0) throw OutOfRangeError("normal components must be nonzero");
    const double se = std::sqrt(eta);
    TwoParticleBase b;
    b.circle = build_reflection_circle({1.0, 1.0, se}, N, E,
                                       {se, 0.0, -1.0},   // sqrt(eta) v - q = 0
                                       {0.0, se, -1.0});  // sqrt(eta) u - q = 0
    b.gamma_norm = b.circle.gamma_norm;
    b.vn = std::fabs(vn);
    b.un = std::fabs(un);
    b.eta = eta;
    b.R = R;
    b.N = N;
    b.E = E;
    // cross-check against the closed form cos(pi gamma) = 1/(1+eta)
    const double expect = std::acos(1.0 / (1.0 + eta)) / kPi;
    if (std::fabs(b.gamma_norm - expect) > 1e-10)
        throw InvalidStateError("measured gamma deviates from the closed form");
    return b;
}

double v_of(const TwoParticleBase& b, double s) { return point_at(b.circle, s).x; }
double u_of(const TwoParticleBase& b, double s) { return point_at(b.circle, s).y; }
double q_of(const TwoParticleBase& b, double s) { return point_at(b.circle, s).z; }

double return_time(double tangential, double normal, double R) {
    const double speed = std::hypot(tangential, normal);
    if (speed == 0.0) throw StuckError("zero velocity");
    const double beta = std::atan2(tangential, std::fabs(normal));
    return 2.0 * chord_length(beta, R) / speed;
}

double return_time_inner(double tangential_inner, double normal_inner, double R) {
    const double speed = std::hypot(tangential_inner, normal_inner);
    if (speed == 0.0) throw StuckError("zero velocity");
    const double beta = outer_angle_from_inner(tangential_inner, normal_inner, R);
    return 2.0 * chord_length(beta, R) / speed;
}

Timing timing(double s, const TwoParticleBase& b) {
    Timing t;
    const double s2 = mod1(-s - b.gamma_norm);
    t.tau1 = return_time_inner(v_of(b, s), b.vn, b.R);
    t.tau2 = return_time_inner(u_of(b, s), b.un, b.R);
    t.tau3 = return_time_inner(u_of(b, s2), b.un, b.R);
    const double pair = t.tau2 + t.tau3;
    t.lambda_hat = t.tau2 / pair;
    const double ratio = t.tau1 / pair;
    t.t_hat = ratio - std::floor(ratio);
    if (t.t_hat >= 1.0) t.t_hat = 0.0;
    return t;
}

std::pair<TwoParticleState, Branch> two_step(const TwoParticleState& st,
                                             const TwoParticleBase& b) {
    const Timing tm = timing(st.s, b);
    const double xi = mod1(st.t * tm.lambda_hat + tm.t_hat);
    Branch branch;
    if (std::fabs(xi - tm.lambda_hat) <= 1e-12) {
        warn("two-particle branch condition on the boundary (s = " + std::to_string(st.s) +
             "), routed odd");
        branch = Branch::Odd;
    } else {
        branch = (xi < tm.lambda_hat) ? Branch::Even : Branch::Odd;
    }
    TwoParticleState out;
    if (branch == Branch::Even) {
        out.s = mod1(-st.s);
        out.t = mod1(st.t + tm.t_hat / tm.lambda_hat);
    } else {
        out.s = mod1(st.s + b.gamma_norm);
        out.t = mod1((tm.tau2 / tm.tau3) * st.t + tm.t_hat / (1.0 - tm.lambda_hat));
    }
    return {out, branch};
}

int n_epsilon(double eps) {
    if (!(eps > 0.0 && eps < 0.125))
        throw OutOfRangeError("eps must lie in (0, 1/8)");
    const double a = std::log(2.0 - 2.0 * eps) / std::log1p(3.0 * eps);
    const double c = std::log(8.0 * eps) / std::log1p(-3.0 * eps);
    return static_cast<int>(std::floor(std::min(a, c))) - 2;
}

namespace {

// distance of x from 0 on the circle
double circ_abs(double x) {
    const double m = mod1(x);
    return std::min(m, 1.0 - m);
}

std::string check_bounds(const TwoParticleBase& b, double eps) {
    constexpr int kGrid = 1 << 14;
    const double margin = 0.9 * eps;
    for (int i = 0; i < kGrid; ++i) {
        const double s = static_cast<double>(i) / kGrid;
        const Timing tm = timing(s, b);
        if (std::fabs(tm.t_hat - 0.5) >= margin)
            return "t_hat outside (1/2-eps, 1/2+eps) at s = " + std::to_string(s);
        if (std::fabs(tm.lambda_hat - 0.5) >= margin)
            return "lambda_hat outside (1/2-eps, 1/2+eps) at s = " + std::to_string(s);
        if (std::fabs(tm.tau2 / tm.tau3 - 1.0) >= margin)
            return "tau2/tau3 outside (1-eps, 1+eps) at s = " + std::to_string(s);
        if (circ_abs(tm.t_hat / (1.0 - tm.lambda_hat)) >= margin)
            return "t_hat/(1-lambda_hat) not within eps of 0 (mod 1) at s = " + std::to_string(s);
    }
    return {};
}

}  // namespace

double find_normal_speed(double eps, double R, double eta, double N, double E) {
    n_epsilon(eps);  // domain check
    std::string last_failure;
    for (double k = std::max(8.0, 8.0 * std::sqrt(E)); k <= 0x1p40; k *= 2.0) {
        const TwoParticleBase b = build_two_particle_base(R, eta, N, E, k, k);
        last_failure = check_bounds(b, eps);
        if (last_failure.empty()) return k;
    }
    throw PreconditionUnmetError("no normal speed satisfies the persistence bounds: " +
                                 last_failure);
}

PersistenceReport persistence_experiment(double eps, double R, double eta, double N, double E,
                                         int n_samples, std::uint64_t seed) {
    PersistenceReport rep;
    rep.eps = eps;
    rep.n_eps = n_epsilon(eps);
    rep.k_prime = find_normal_speed(eps, R, eta, N, E);
    rep.base = build_two_particle_base(R, eta, N, E, rep.k_prime, rep.k_prime);

    SplitMix64 rng(seed);
    rep.samples.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        PersistenceSample sm;
        sm.s0 = rng.uniform01();
        sm.t0 = 0.5 + rng.uniform(-eps, eps);
        rep.samples.push_back(sm);
    }

    for (PersistenceSample& sm : rep.samples) {
        sm.excluded = std::fabs(sm.t0 - 0.5) >= eps;
        TwoParticleState st{sm.s0, sm.t0};
        for (int k = 0; k < rep.n_eps; ++k) {
            // geometric bracket of Lemma-type bounds around t_k
            const double lo = 0.5 * std::pow(1.0 - 3.0 * eps, k + 1);
            const double hi = 0.5 * std::pow(1.0 + 3.0 * eps, k + 1);
            if (!(st.t > lo && st.t < hi)) sm.bounds_ok = false;
            if (circ_dist(st.s, mod1(sm.s0 + k * rep.base.gamma_norm)) > 1e-10)
                sm.s_track_ok = false;
            auto [next, branch] = two_step(st, rep.base);
            if (branch != Branch::Odd) {
                sm.first_even_step = k;
                break;
            }
            st = next;
            sm.survived_steps = k + 1;
        }
        if (!sm.excluded &&
            (sm.first_even_step || !sm.bounds_ok || !sm.s_track_ok ||
             sm.survived_steps < rep.n_eps))
            rep.all_ok = false;
    }
    return rep;
}

}  // namespace anrot
