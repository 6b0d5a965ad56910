#pragma once

namespace anrot {

// Chord geometry of the annulus (outer radius 1, inner radius R). Angles are
// measured between the velocity and the normal at the OUTER circle, signed
// positive in the counterclockwise tangential direction.

struct ChordAngles {
    double beta = 0.0;      // angle at the outer circle
    double beta_hat = 0.0;  // central-angle advance of the outer-to-inner chord
};

// Central angle swept between the outer launch point and the inner impact:
//   beta_hat = arcsin(sin(beta)/R) - beta.
// Odd in beta, |beta_hat| <= arccos(R). Requires |sin beta| <= R; a radicand
// defect below 1e-14 is clamped, anything larger throws UnreachableError.
double beta_hat(double beta, double R);

// Length of the chord from the outer circle to the inner one:
//   d(beta) = cos(beta) - sqrt(R^2 - sin^2 beta), strictly positive.
double chord_length(double beta, double R);

// Fiber advance of one inner bounce seen from the outer circle: the sum of
// the in-leg and out-leg deflections, reduced to (-pi, pi].
double fiber_advance(double beta_in, double beta_out, double R);

// Arclength advance of an outer-to-outer chord that misses the inner
// scatterer: pi - 2 beta, reduced to [0, 2 pi).
double miss_advance(double beta_out);

// Outer-frame angle of a ray given its splitting at the inner scatterer.
// sin(beta_outer) = R * tangential / speed, always within [-R, R].
double outer_angle_from_inner(double tangential_inner, double normal_inner, double R);

}  // namespace anrot
