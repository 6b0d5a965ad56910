#include "anrot/single_rotor.hpp"

#include <cmath>

#include "anrot/errors.hpp"
#include "anrot/geometry.hpp"
#include "anrot/num.hpp"
#include "anrot/rotor.hpp"

namespace anrot {

namespace {

// inner rotor law on the (vt, omega) pair; an involution
void apply_inner_law(double& vt, double& omega, const PhysicalParams& p) {
    const RotorContact out =
        rotor_reflect({0.0, vt, p.R * omega, p.eta1, p.R});
    vt = out.vt;
    omega = out.r_omega / p.R;
}

double leg_beta_outer(double vt, double vn, const PhysicalParams& p) {
    return outer_angle_from_inner(vt, vn, p.R);
}

}  // namespace

SingleRotorState make_single_rotor_state(double vt, double omega, double vn,
                                         const PhysicalParams& p) {
    if (p.mode != SystemMode::SingleRotor)
        throw InvalidStateError("single-rotor state requires single_rotor mode");
    if (vn == 0.0) throw InvalidStateError("vn must be nonzero");
    SingleRotorState st;
    st.vt = vt;
    st.omega = omega;
    st.vn = std::fabs(vn);
    st.phase = Phase::Outer;
    return st;
}

SingleRotorState make_single_rotor_state_from_outer(double vt_outer, double vn_outer,
                                                    double omega, const PhysicalParams& p) {
    const double R2 = p.R * p.R;
    if (vt_outer * vt_outer * (1.0 - R2) > R2 * vn_outer * vn_outer)
        throw UnreachableError(
            "orbit never reaches the inner scatterer; this invariant set is the plain "
            "circle billiard");
    const double speed2 = vt_outer * vt_outer + vn_outer * vn_outer;
    const double vt_inner = vt_outer / p.R;
    const double vn_inner = std::sqrt(std::max(0.0, speed2 - vt_inner * vt_inner));
    SingleRotorState st;
    st.vt = vt_inner;
    st.omega = omega;
    st.vn = vn_inner;
    st.phase = Phase::Inner;
    return st;
}

SingleRotorState single_step(const SingleRotorState& st, const PhysicalParams& p) {
    SingleRotorState out = st;
    if (st.phase == Phase::Inner) {
        apply_inner_law(out.vt, out.omega, p);
        out.phase = Phase::Outer;
        return out;
    }
    // outer bounce: elastic, (vt, omega) unchanged in the inner split; the
    // impact position advances by the deflections of the legs around the
    // preceding inner collision, whose pre-collision pair is recovered by
    // the involution
    double vt_pre = st.vt, omega_pre = st.omega;
    apply_inner_law(vt_pre, omega_pre, p);
    const double advance = beta_hat(leg_beta_outer(vt_pre, st.vn, p), p.R) +
                           beta_hat(leg_beta_outer(st.vt, st.vn, p), p.R);
    double phi = st.phi + advance;
    std::int64_t winding = st.winding;
    while (phi >= kTwoPi) { phi -= kTwoPi; ++winding; }
    while (phi < 0.0) { phi += kTwoPi; --winding; }
    out.phi = phi;
    out.winding = winding;
    out.phase = Phase::Inner;
    return out;
}

double fiber_rotation_angle(const SingleRotorState& st, const PhysicalParams& p) {
    double vt_other = st.vt, omega_other = st.omega;
    apply_inner_law(vt_other, omega_other, p);
    return beta_hat(leg_beta_outer(st.vt, st.vn, p), p.R) +
           beta_hat(leg_beta_outer(vt_other, st.vn, p), p.R);
}

double single_rotor_momentum(const SingleRotorState& st, const PhysicalParams& p) {
    return st.vt + p.eta1 * p.R * st.omega;
}

double single_rotor_energy(const SingleRotorState& st, const PhysicalParams& p) {
    return st.vt * st.vt + p.eta1 * p.R * p.R * st.omega * st.omega;
}

}  // namespace anrot
