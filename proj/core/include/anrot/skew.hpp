#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "anrot/arcs.hpp"
#include "anrot/model.hpp"
#include "anrot/velocity_circle.hpp"

namespace anrot {

// State of the skew product F(s, phi) = (T_O s, phi + alpha(s)) over the
// first-return base map, with the physical flight time accumulated as a
// suspension clock.
struct SkewState {
    double s = 0.0;
    double phi = 0.0;  // fiber coordinate in [0,1)
    std::int64_t winding = 0;
    double clock = 0.0;
};

// Fiber advance per outer-to-outer return, in normalized [0,1) units:
// miss branch pi - 2 beta(s) for s in U, otherwise the two chord deflections
// around the inner bounce, beta_hat(s) + beta_hat(s2) with s2 = -s - gamma.
double alpha_of_s(double s, const VelocityCircle& c, const ArcSet& U, const PhysicalParams& p,
                  const Integrals& ints);

// Physical first-return time to the outer wall: d(s)/|v(s)| + d(s2)/|v(s2)|
// in the alternating branch, 2 cos(beta)/|v| on the miss branch.
double tau_of_s(double s, const VelocityCircle& c, const ArcSet& U, const PhysicalParams& p,
                const Integrals& ints);

// One outer-to-outer return. Orbit points landing within 1e-12 of the miss
// set boundary are nudged by +1e-12 with a warning.
SkewState skew_step(const SkewState& st, const VelocityCircle& c, const ArcSet& U,
                    const PhysicalParams& p, const Integrals& ints);

// First k >= 1 with base_step^k(b) matching b to 1e-11 in s on the same
// sheet; nullopt if none within max_steps.
std::optional<long> detect_period(const BaseState& b, const VelocityCircle& c, const ArcSet& U,
                                  long max_steps);

struct MeanAlphaResult {
    double value = 0.0;            // quadrature of alpha over the circle
    double richardson_error = 0.0;  // |quadrature(n) - quadrature(2n)|
    double symmetry_error = 0.0;    // |mean - 2 * mean of beta_hat term|
};

// Quadrature mean of alpha on a uniform n_quad grid, alternating case only
// (NonAlternatingError otherwise). Also checks the reflection symmetry
// identity used to reduce the integral to 2 * integral of beta_hat.
MeanAlphaResult mean_alpha(const VelocityCircle& c, const ArcSet& U, const PhysicalParams& p,
                           const Integrals& ints, int n_quad);

// Mean alpha across a grid of full energies at fixed (N, E), in the regime
// where the tangential component z(s) stays positive on the whole circle
// (ConventionViolatedError otherwise) and U is empty for every F.
std::vector<std::pair<double, double>> alpha_monotonicity_scan(const PhysicalParams& p, double N,
                                                               double E,
                                                               std::span<const double> F_grid);

struct RationalDependence {
    int p = 0;
    int q = 0;
    double residual = 0.0;  // |p*alpha + q*gamma - nearest integer|
};

struct OrbitDiagnostics {
    double rotation_estimate = 0.0;  // mean fiber increment per step
    double discrepancy = 1.0;        // grid-anchored star discrepancy on the torus
    double chi_square = 0.0;         // bin-count uniformity statistic
    std::optional<long> period;
    std::optional<RationalDependence> dependence;  // set when a small relation was found
};

// Uniformity diagnostics of an (s, phi) orbit: anchored-box star-discrepancy
// estimate at 1024x1024 prefix resolution, a chi-square statistic over
// bins x bins cells, torus-period scan, and, when (gamma, mean alpha) are
// supplied, a scan for small integer relations p*alpha + q*gamma in Z
// (|p|,|q| <= 50, tolerance 1e-9) flagging non-ergodic evidence.
OrbitDiagnostics equidistribution_test(std::span<const SkewState> orbit, int bins,
                                       std::optional<std::pair<double, double>> gamma_and_alpha =
                                           std::nullopt);

// Time-weighted average of an observable along the suspension, weights
// tau(s_k) read from consecutive clock values.
double suspension_average(std::span<const SkewState> orbit, double (*f)(double s, double phi));

}  // namespace anrot
