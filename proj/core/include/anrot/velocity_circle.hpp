#pragma once

#include <cstdint>

#include "anrot/arcs.hpp"
#include "anrot/model.hpp"
#include "anrot/vec.hpp"

namespace anrot {

// The velocity circle: intersection of the tangential-energy sphere
// |p|^2 = E with the momentum plane dot(plane_normal, p) = N. Collisions act
// on it as reflections across the two mirror lines (mirror plane cut with the
// momentum plane); s is the normalized arclength coordinate anchored at a
// fixed point of the anchor reflection, oriented so that the second
// reflection reads s -> -s - gamma with gamma in (0, 1/2].
struct VelocityCircle {
    Vec3 center;
    double radius = 0.0;
    Vec3 e1;  // unit, points from center to the anchor (s = 0)
    Vec3 e2;  // unit, completes the oriented in-plane basis
    Vec3 plane_normal;
    double plane_value = 0.0;  // N
    double energy = 0.0;       // E
    double gamma_norm = 0.0;   // measured from the constructed reflection pair
    Vec3 mirror_anchor;  // plane normal of the anchor reflection (s -> -s)
    Vec3 mirror_second;  // plane normal of the other reflection (s -> -s-gamma)
};

// Generic builder from plane/mirror data. Anchor tie-break between the two
// mirror-circle intersections: larger third coordinate, then larger second.
VelocityCircle build_reflection_circle(const Vec3& plane_normal, double N, double E,
                                       const Vec3& mirror_anchor, const Vec3& mirror_second);

// Double-rotor circle in (x, y, z): plane normal (sqrt(eta1), sqrt(eta2), 1),
// anchor mirror sqrt(eta2) z - y = 0 (outer), second sqrt(eta1) z - x = 0
// (inner). Throws EmptyCircleError when the sphere misses the plane.
VelocityCircle build_circle(const PhysicalParams& p, const Integrals& ints);

Vec3 point_at(const VelocityCircle& c, double s);
// inverse of point_at; OffCircleError when v is off the circle beyond
// rel_tol * sqrt(E)
double s_of_point(const VelocityCircle& c, const Vec3& v, double rel_tol = 1e-9);

// (x, y, z) from s plus w recovered from the full-energy shell (positive
// sign convention). Clamps w^2 rounding below zero; a genuinely negative
// shell value throws InvalidStateError.
RescaledVelocity velocity_of_s(const VelocityCircle& c, const PhysicalParams& p,
                               const Integrals& ints, double s);
double s_of_velocity(const RescaledVelocity& v, const VelocityCircle& c);

// The miss set U = { s : z^2(s) > R^2/(1-R^2) w^2(s) }: velocity states whose
// outgoing trajectory from the outer wall misses the inner scatterer. Located
// by a 2^16-point scan with bisection refinement of the endpoints to 1e-12.
ArcSet compute_U(const VelocityCircle& c, const PhysicalParams& p, const Integrals& ints);

// exact emptiness of U without arc extraction (sweep fast path):
// max_s (x^2+z^2) <= R^2 (F-E) / (1-R^2)
bool u_set_is_empty(const VelocityCircle& c, const PhysicalParams& p, const Integrals& ints);

// Sheets of the base phase space: I holds outgoing velocities just after an
// inner bounce, O just after an outer bounce.
enum class Sheet : std::uint8_t { I, O };

struct BaseState {
    double s = 0.0;
    Sheet sheet = Sheet::O;
};

// One step of the two-sheet base map:
//   (s, I) -> (-s, O)            [next bounce is outer]
//   (s, O) -> (-s-gamma, I)      for s not in U
//   (s, O) -> (-s, O)            for s in U
// A sheet-I state inside U is invalid.
BaseState base_step(const BaseState& b, const VelocityCircle& c, const ArcSet& U);
BaseState base_step_inverse(const BaseState& b, const VelocityCircle& c, const ArcSet& U);

}  // namespace anrot
