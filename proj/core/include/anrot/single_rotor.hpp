#pragma once

#include <cstdint>

#include "anrot/model.hpp"

namespace anrot {

// One particle, inner rotor only. The stored vt/vn are the velocity split at
// the inner scatterer; |vn| is an integral of motion, the (vt, omega) pair
// runs through a period-2 cycle, and the outer impact positions follow a
// rigid circle rotation.
enum class Phase : std::uint8_t { Inner, Outer };  // wall of the next collision

struct SingleRotorState {
    double vt = 0.0;     // tangential component at the inner scatterer
    double omega = 0.0;  // inner rotor angular velocity
    double vn = 0.0;     // fixed normal component (magnitude)
    double phi = 0.0;    // latest outer impact arclength, radians in [0, 2 pi)
    std::int64_t winding = 0;
    Phase phase = Phase::Inner;
};

// state just after an inner collision (next collision is the outer wall)
SingleRotorState make_single_rotor_state(double vt, double omega, double vn,
                                         const PhysicalParams& p);
// Construction from the outer-wall velocity split. Throws UnreachableError
// when the trajectory never reaches the inner scatterer
// (vt_outer^2 / vn_outer^2 > R^2 / (1 - R^2)); such orbits reduce to the
// plain circle billiard and are rejected with a diagnostic.
SingleRotorState make_single_rotor_state_from_outer(double vt_outer, double vn_outer,
                                                    double omega, const PhysicalParams& p);

// Advances one collision. Inner phase applies the rotor law to (vt, omega);
// outer phase flips the normal, keeps (vt, omega), and advances phi by the
// two chord deflections around the previous inner bounce.
SingleRotorState single_step(const SingleRotorState& st, const PhysicalParams& p);

// Constant rotation angle of the outer impact sequence, in radians: the sum
// of the chord deflections of the pre- and post-collision legs of the inner
// bounce.
double fiber_rotation_angle(const SingleRotorState& st, const PhysicalParams& p);

// integrals of the cycle: N = vt + eta R omega, E = vt^2 + eta R^2 omega^2
double single_rotor_momentum(const SingleRotorState& st, const PhysicalParams& p);
double single_rotor_energy(const SingleRotorState& st, const PhysicalParams& p);

}  // namespace anrot
