#pragma once

#include "anrot/model.hpp"

namespace anrot {

// Contact data for one particle-scatterer collision. vn/vt are the normal
// and tangential velocity components at the circle of collision, r_omega is
// the signed rim speed r*omega of the scatterer, eta its rescaled moment of
// inertia.
struct RotorContact {
    double vn = 0.0;
    double vt = 0.0;
    double r_omega = 0.0;
    double eta = 1.0;
    double r = 1.0;
};

// The rotor interaction law:
//   vn' = -vn
//   vt' = vt - 2 eta/(1+eta) (vt - r omega)
//   r omega' = r omega + 2/(1+eta) (vt - r omega)
// It conserves vt + eta*r*omega and vt^2 + eta*(r omega)^2, and is an
// involution on the (vt, r omega) pair.
RotorContact rotor_reflect(const RotorContact& c);

// true iff applying rotor_reflect twice returns the input, per component
// within tol
bool rotor_reflect_involution_check(const RotorContact& c, double tol = 1e-14);

// Double-rotor specializations on the rescaled coordinates. Each updates the
// interacting pair, leaves the spectator coordinate untouched, and recomputes
// w from the full-energy shell with the positive sign convention.
// inner: trajectory must actually reach the inner scatterer
//        (z^2 (1-R^2) <= R^2 w^2), otherwise UnreachableError.
RescaledVelocity inner_collision_double(const RescaledVelocity& v, const PhysicalParams& p);
RescaledVelocity outer_collision_double(const RescaledVelocity& v, const PhysicalParams& p);

}  // namespace anrot
