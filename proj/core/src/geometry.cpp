#include "anrot/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "anrot/errors.hpp"
#include "anrot/num.hpp"

namespace anrot {

namespace {

// sin(beta)/R clamped into [-1,1]; beyond the 1e-14 grazing band it is a
// genuine miss
double reach_ratio(double beta, double R) {
    const double sb = std::sin(beta);
    const double excess = sb * sb - R * R;
    if (excess > 1e-14)
        throw UnreachableError("trajectory misses the inner scatterer (|sin beta| > R)");
    return std::clamp(sb / R, -1.0, 1.0);
}

}  // namespace

double beta_hat(double beta, double R) {
    return std::asin(reach_ratio(beta, R)) - beta;
}

double chord_length(double beta, double R) {
    const double sb = std::sin(beta);
    double radicand = R * R - sb * sb;
    if (radicand < 0.0) {
        if (radicand < -1e-14)
            throw UnreachableError("trajectory misses the inner scatterer (|sin beta| > R)");
        radicand = 0.0;
    }
    return std::cos(beta) - std::sqrt(radicand);
}

double fiber_advance(double beta_in, double beta_out, double R) {
    return wrap_pi(beta_hat(beta_in, R) + beta_hat(beta_out, R));
}

double miss_advance(double beta_out) {
    double a = std::fmod(kPi - 2.0 * beta_out, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

double outer_angle_from_inner(double tangential_inner, double normal_inner, double R) {
    const double speed = std::hypot(tangential_inner, normal_inner);
    if (speed == 0.0) throw StuckError("zero velocity has no chord direction");
    return std::asin(std::clamp(R * tangential_inner / speed, -1.0, 1.0));
}

}  // namespace anrot
