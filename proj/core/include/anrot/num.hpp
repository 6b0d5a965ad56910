#pragma once

#include <cmath>
#include <numbers>

namespace anrot {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// reduce to [0,1); the guard catches values that round up to exactly 1.0
inline double mod1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;
    if (r < 0.0) r += 1.0;
    return r;
}

// circular distance on [0,1)
inline double circ_dist(double a, double b) {
    double d = mod1(a - b);
    return d > 0.5 ? 1.0 - d : d;
}

// reduce an angle in radians to (-pi, pi]
inline double wrap_pi(double a) {
    double r = std::remainder(a, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    return r;
}

inline double sq(double x) { return x * x; }

}  // namespace anrot
