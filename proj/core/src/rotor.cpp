#include "anrot/rotor.hpp"

#include <cmath>

#include "anrot/errors.hpp"

namespace anrot {

RotorContact rotor_reflect(const RotorContact& c) {
    const double delta = c.vt - c.r_omega;
    RotorContact out = c;
    out.vn = -c.vn;
    out.vt = c.vt - (2.0 * c.eta / (1.0 + c.eta)) * delta;
    out.r_omega = c.r_omega + (2.0 / (1.0 + c.eta)) * delta;
    return out;
}

bool rotor_reflect_involution_check(const RotorContact& c, double tol) {
    const RotorContact back = rotor_reflect(rotor_reflect(c));
    return std::fabs(back.vn - c.vn) <= tol && std::fabs(back.vt - c.vt) <= tol &&
           std::fabs(back.r_omega - c.r_omega) <= tol;
}

namespace {

double recompute_w(const RescaledVelocity& v, const PhysicalParams& p, double full_energy) {
    double w2 = full_energy - v.x * v.x / (p.R * p.R) - v.y * v.y - v.z * v.z;
    if (w2 < 0.0) {
        if (w2 < -1e-12 * full_energy)
            throw InvalidStateError("full-energy shell exceeded while recomputing v_n");
        w2 = 0.0;
    }
    return std::sqrt(w2);
}

}  // namespace

RescaledVelocity inner_collision_double(const RescaledVelocity& v, const PhysicalParams& p) {
    if (p.mode != SystemMode::DoubleRotor)
        throw InvalidStateError("inner_collision_double requires double_rotor mode");
    const double R2 = p.R * p.R;
    // reachability: z^2 (1-R^2) <= R^2 w^2 up to rounding
    const double lhs = v.z * v.z * (1.0 - R2);
    const double rhs = R2 * v.w * v.w;
    if (lhs > rhs * (1.0 + 1e-12) + 1e-300)
        throw UnreachableError("trajectory misses the inner scatterer");
    const double F = v.x * v.x / R2 + v.y * v.y + v.z * v.z + v.w * v.w;
    // (v_t, R^2 omega1) pair exchange; x = sqrt(eta1) R^2 omega1
    const double se1 = std::sqrt(p.eta1);
    const double r2o = v.x / se1;
    const double delta = v.z - r2o;
    RescaledVelocity out = v;
    out.z = v.z - (2.0 * p.eta1 / (1.0 + p.eta1)) * delta;
    out.x = se1 * (r2o + (2.0 / (1.0 + p.eta1)) * delta);
    out.w = recompute_w(out, p, F);
    return out;
}

RescaledVelocity outer_collision_double(const RescaledVelocity& v, const PhysicalParams& p) {
    if (p.mode != SystemMode::DoubleRotor || !p.eta2)
        throw InvalidStateError("outer_collision_double requires double_rotor mode");
    const double F = v.x * v.x / (p.R * p.R) + v.y * v.y + v.z * v.z + v.w * v.w;
    const double se2 = std::sqrt(*p.eta2);
    const double omega2 = v.y / se2;
    const double delta = v.z - omega2;
    RescaledVelocity out = v;
    out.z = v.z - (2.0 * *p.eta2 / (1.0 + *p.eta2)) * delta;
    out.y = se2 * (omega2 + (2.0 / (1.0 + *p.eta2)) * delta);
    out.w = recompute_w(out, p, F);
    return out;
}

}  // namespace anrot
