#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anrot/model.hpp"
#include "anrot/velocity_circle.hpp"

namespace anrot {

// Two particles of equal mass, inner rotor only. Velocity coordinates
// (v, u, q) with q = sqrt(eta) R omega live on the circle
// v^2+u^2+q^2 = E, v+u+sqrt(eta) q = N; v-collisions reflect across
// sqrt(eta) v - q = 0 (s -> -s, the anchor), u-collisions across
// sqrt(eta) u - q = 0 (s -> -s-gamma), with cos(pi gamma) = 1/(1+eta).
struct TwoParticleBase {
    VelocityCircle circle;
    double gamma_norm = 0.0;
    double vn = 0.0;  // fixed inner-normal component of particle 1
    double un = 0.0;  // fixed inner-normal component of particle 2
    double eta = 1.0;
    double R = 0.5;
    double N = 0.0;
    double E = 1.0;
};

TwoParticleBase build_two_particle_base(double R, double eta, double N, double E, double vn,
                                        double un);

// coordinate functions on the circle
double v_of(const TwoParticleBase& b, double s);
double u_of(const TwoParticleBase& b, double s);
double q_of(const TwoParticleBase& b, double s);

// Inner-return period of a particle from its outer-frame velocity split:
// twice the outer-to-inner chord over the speed. UnreachableError when the
// chord misses the inner scatterer.
double return_time(double tangential, double normal, double R);
// same from the inner-scatterer split (always reachable)
double return_time_inner(double tangential_inner, double normal_inner, double R);

struct Timing {
    double tau1 = 0.0;  // particle-1 return period at state s
    double tau2 = 0.0;  // particle-2 period in its current phase, tau(u(s))
    double tau3 = 0.0;  // particle-2 period in the flipped phase, tau(u(s2))
    double lambda_hat = 0.0;  // tau2 / (tau2 + tau3)
    double t_hat = 0.0;       // frac(tau1 / (tau2 + tau3))
};

Timing timing(double s, const TwoParticleBase& b);

// Poincare state at v-collisions: s on the circle, t in [0,1) the phase of
// the second particle (elapsed fraction t * tau2(s) since its last
// collision).
struct TwoParticleState {
    double s = 0.0;
    double t = 0.0;
};

// parity of u-collisions between consecutive v-collisions
enum class Branch : std::uint8_t { Even, Odd };

// The reduced two-dimensional map, with xi = t*lambda_hat + t_hat (mod 1):
//   even (xi < lambda_hat): (s, t) -> (-s, t + t_hat/lambda_hat)
//   odd  (xi > lambda_hat): (s, t) -> (s+gamma, (tau2/tau3) t + t_hat/(1-lambda_hat))
// t-arithmetic is mod 1. A tie |xi - lambda_hat| <= 1e-12 routes Odd with a
// warning (measure-zero boundary).
std::pair<TwoParticleState, Branch> two_step(const TwoParticleState& st,
                                             const TwoParticleBase& b);

// Guaranteed odd-branch run length:
//   N_eps = floor(min(log(2-2e)/log(1+3e), log(8e)/log(1-3e))) - 2,
// defined for 0 < eps < 1/8 (OutOfRangeError otherwise).
int n_epsilon(double eps);

// Doubles the common normal speed K' until the four bound conditions
//   t_hat, lambda_hat in (1/2-e, 1/2+e), tau2/tau3 in (1-e, 1+e),
//   dist(t_hat/(1-lambda_hat), 0 mod 1) < e
// hold with a 10% margin on a 2^14-point s-grid. PreconditionUnmetError
// (naming the failing bound) if no K' below the cap works.
double find_normal_speed(double eps, double R, double eta, double N, double E);

struct PersistenceSample {
    double s0 = 0.0;
    double t0 = 0.0;
    int survived_steps = 0;        // odd steps taken before leaving (capped at n_eps)
    bool bounds_ok = true;         // t_k inside the geometric bracket throughout
    bool s_track_ok = true;        // s_k = s0 + k gamma to 1e-10 throughout
    std::optional<int> first_even_step;
    bool excluded = false;  // initial condition outside |t0 - 1/2| < eps
};

struct PersistenceReport {
    double eps = 0.0;
    int n_eps = 0;
    double k_prime = 0.0;  // discovered common normal speed
    TwoParticleBase base;
    std::vector<PersistenceSample> samples;
    bool all_ok = true;  // every non-excluded sample survived with bounds intact
};

// Samples n_samples initial conditions (s0 uniform, |t0-1/2| < eps) with the
// seeded generator, iterates the reduced map n_epsilon(eps) steps each, and
// checks odd-branch persistence, the rotation track of s, and the geometric
// bracket (1/2)(1 -+ 3 eps)^(k+1) around t_k.
PersistenceReport persistence_experiment(double eps, double R, double eta, double N, double E,
                                         int n_samples, std::uint64_t seed);

}  // namespace anrot
