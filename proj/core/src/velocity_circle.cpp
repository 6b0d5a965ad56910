#include "anrot/velocity_circle.hpp"

#include <cmath>

#include "anrot/errors.hpp"
#include "anrot/log.hpp"
#include "anrot/num.hpp"

namespace anrot {

namespace {

// parameter (in [0, 0.5)) of one intersection of the mirror line with the
// circle, in the basis (e1, e2)
double mirror_axis_parameter(const VelocityCircle& c, const Vec3& mirror) {
    const double a = dot(mirror, c.e1);
    const double b = dot(mirror, c.e2);
    // dot(mirror, point(theta)) = r (a cos + b sin) since dot(mirror, center) = 0
    double theta = std::atan2(-a, b);
    double s = mod1(theta / kTwoPi);
    if (s >= 0.5) s -= 0.5;
    return s;
}

}  // namespace

VelocityCircle build_reflection_circle(const Vec3& plane_normal, double N, double E,
                                       const Vec3& mirror_anchor, const Vec3& mirror_second) {
    VelocityCircle c;
    c.plane_normal = plane_normal;
    c.plane_value = N;
    c.energy = E;
    c.mirror_anchor = mirror_anchor;
    c.mirror_second = mirror_second;

    const double n2 = norm_sq(plane_normal);
    c.center = (N / n2) * plane_normal;
    const double r2 = E - N * N / n2;
    if (r2 <= 0.0) throw EmptyCircleError("energy sphere and momentum plane do not intersect");
    c.radius = std::sqrt(r2);

    // provisional in-plane basis; plane normals here are never parallel to z-hat
    const Vec3 nh = normalized(plane_normal);
    const Vec3 u1 = normalized(cross(plane_normal, Vec3{0.0, 0.0, 1.0}));
    const Vec3 u2 = normalized(cross(nh, u1));
    c.e1 = u1;
    c.e2 = u2;

    // anchor: intersection of the anchor mirror with the circle, tie-break
    // larger z then larger y
    const double sa = mirror_axis_parameter(c, mirror_anchor);
    const Vec3 p1 = point_at(c, sa);
    const Vec3 p2 = point_at(c, sa + 0.5);
    Vec3 anchor = p1;
    if (p2.z > p1.z + 1e-14 || (std::fabs(p2.z - p1.z) <= 1e-14 && p2.y > p1.y)) anchor = p2;

    c.e1 = normalized(anchor - c.center);
    c.e2 = normalized(cross(nh, c.e1));

    // orient e2 so the second reflection reads s -> -s - gamma with
    // gamma in (0, 1/2]: its axis must sit at parameter (1 - gamma)/2
    double delta = mirror_axis_parameter(c, mirror_second);
    double gamma = mod1(-2.0 * delta);
    if (gamma > 0.5) {
        c.e2 = -c.e2;
        delta = (delta == 0.0) ? 0.0 : 0.5 - delta;
        gamma = mod1(-2.0 * delta);
    }
    if (gamma <= 0.0 || gamma > 0.5 + 1e-12)
        throw InvalidStateError("reflection pair degenerate: gamma outside (0, 1/2]");
    c.gamma_norm = gamma;
    return c;
}

VelocityCircle build_circle(const PhysicalParams& p, const Integrals& ints) {
    if (p.mode != SystemMode::DoubleRotor || !p.eta2)
        throw InvalidStateError("build_circle requires double_rotor mode");
    const double se1 = std::sqrt(p.eta1);
    const double se2 = std::sqrt(*p.eta2);
    VelocityCircle c = build_reflection_circle({se1, se2, 1.0}, ints.N, ints.E,
                                               {0.0, -1.0, se2},   // sqrt(eta2) z - y = 0
                                               {-1.0, 0.0, se1});  // sqrt(eta1) z - x = 0
    if (c.radius * c.radius < 1e-8 * ints.E)
        warn("velocity circle is near-degenerate (radius^2 = " +
             std::to_string(c.radius * c.radius) + ")");
    return c;
}

Vec3 point_at(const VelocityCircle& c, double s) {
    const double th = kTwoPi * s;
    return c.center + c.radius * (std::cos(th) * c.e1 + std::sin(th) * c.e2);
}

double s_of_point(const VelocityCircle& c, const Vec3& v, double rel_tol) {
    const double scale = std::sqrt(c.energy);
    const double plane_residual = std::fabs(dot(c.plane_normal, v) - c.plane_value) /
                                  norm(c.plane_normal);
    const Vec3 d = v - c.center;
    const double radial_residual = std::fabs(norm(d) - c.radius);
    if (plane_residual > rel_tol * scale || radial_residual > rel_tol * scale)
        throw OffCircleError("velocity does not satisfy the circle equations");
    return mod1(std::atan2(dot(d, c.e2), dot(d, c.e1)) / kTwoPi);
}

RescaledVelocity velocity_of_s(const VelocityCircle& c, const PhysicalParams& p,
                               const Integrals& ints, double s) {
    if (!ints.F) throw InvalidStateError("velocity_of_s requires the full energy F");
    const Vec3 q = point_at(c, s);
    double w2 = *ints.F - q.x * q.x / (p.R * p.R) - q.y * q.y - q.z * q.z;
    if (w2 < 0.0) {
        if (w2 < -1e-12 * *ints.F)
            throw InvalidStateError("velocity state lies outside the full-energy shell");
        w2 = 0.0;
    }
    return {q.x, q.y, q.z, std::sqrt(w2)};
}

double s_of_velocity(const RescaledVelocity& v, const VelocityCircle& c) {
    return s_of_point(c, {v.x, v.y, v.z});
}

namespace {

// sign function of the miss inequality: positive inside U
struct MissGauge {
    const VelocityCircle& c;
    double R2;
    double F;

    double operator()(double s) const {
        const Vec3 q = point_at(c, s);
        const double w2 = F - q.x * q.x / R2 - q.y * q.y - q.z * q.z;
        return (1.0 - R2) * q.z * q.z - R2 * w2;
    }
};

double bisect_boundary(const MissGauge& g, double lo, double hi, double g_lo) {
    // invariant: sign change between lo and hi (parameters may exceed 1)
    for (int i = 0; i < 60 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((g(mid) > 0.0) == (g_lo > 0.0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ArcSet compute_U(const VelocityCircle& c, const PhysicalParams& p, const Integrals& ints) {
    if (!ints.F) throw InvalidStateError("compute_U requires the full energy F");
    const MissGauge g{c, p.R * p.R, *ints.F};

    constexpr int kGrid = 1 << 16;
    std::vector<double> vals(kGrid);
    bool any_pos = false, any_neg = false;
    for (int i = 0; i < kGrid; ++i) {
        vals[i] = g(static_cast<double>(i) / kGrid);
        (vals[i] > 0.0 ? any_pos : any_neg) = true;
    }
    if (!any_pos) return ArcSet{};
    if (!any_neg) return ArcSet::whole_circle();

    // locate sign transitions circularly, refine each boundary, then pair
    // up-crossings with the following down-crossing
    std::vector<std::pair<double, bool>> bounds;  // (s, is_up_crossing)
    for (int i = 0; i < kGrid; ++i) {
        const int j = (i + 1) % kGrid;
        const bool pos_i = vals[i] > 0.0;
        const bool pos_j = vals[j] > 0.0;
        if (pos_i == pos_j) continue;
        const double lo = static_cast<double>(i) / kGrid;
        const double hi = static_cast<double>(i + 1) / kGrid;
        bounds.emplace_back(mod1(bisect_boundary(g, lo, hi, vals[i])), !pos_i);
    }
    // rotate so the list starts at an up-crossing
    std::size_t start = 0;
    while (start < bounds.size() && !bounds[start].second) ++start;
    if (bounds.size() % 2 != 0 || start == bounds.size())
        throw InvalidStateError("miss-set boundary crossings do not alternate");
    std::vector<Arc> arcs;
    for (std::size_t k = 0; k < bounds.size() / 2; ++k) {
        const auto& up = bounds[(start + 2 * k) % bounds.size()];
        const auto& down = bounds[(start + 2 * k + 1) % bounds.size()];
        if (!up.second || down.second)
            throw InvalidStateError("miss-set boundary crossings do not alternate");
        arcs.push_back({up.first, mod1(down.first - up.first)});
    }
    return ArcSet(std::move(arcs));
}

bool u_set_is_empty(const VelocityCircle& c, const PhysicalParams& p, const Integrals& ints) {
    if (!ints.F) throw InvalidStateError("u_set_is_empty requires the full energy F");
    // U = { x^2 + z^2 > R^2 (F - E) / (1 - R^2) }; the left side peaks at
    // E - min_s y^2(s), available in closed form from the y amplitude
    const double cy = c.center.y;
    const double rho_y = c.radius * std::hypot(c.e1.y, c.e2.y);
    const double min_abs_y = std::max(0.0, std::fabs(cy) - rho_y);
    const double peak = c.energy - min_abs_y * min_abs_y;
    const double threshold = p.R * p.R * (*ints.F - c.energy) / (1.0 - p.R * p.R);
    return peak <= threshold;
}

BaseState base_step(const BaseState& b, const VelocityCircle& c, const ArcSet& U) {
    if (b.sheet == Sheet::I) {
        if (U.contains(b.s))
            throw InvalidStateError("sheet-I state inside the miss set U");
        return {mod1(-b.s), Sheet::O};
    }
    if (U.contains(b.s)) return {mod1(-b.s), Sheet::O};
    return {mod1(-b.s - c.gamma_norm), Sheet::I};
}

BaseState base_step_inverse(const BaseState& b, const VelocityCircle& c, const ArcSet& U) {
    if (b.sheet == Sheet::O) {
        const double sp = mod1(-b.s);
        if (U.contains(sp)) return {sp, Sheet::O};
        return {sp, Sheet::I};
    }
    if (U.contains(b.s))
        throw InvalidStateError("sheet-I state inside the miss set U");
    return {mod1(-b.s - c.gamma_norm), Sheet::O};
}

}  // namespace anrot
