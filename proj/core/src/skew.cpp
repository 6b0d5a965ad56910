#include "anrot/skew.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "anrot/errors.hpp"
#include "anrot/geometry.hpp"
#include "anrot/log.hpp"
#include "anrot/num.hpp"

namespace anrot {

namespace {

struct LegData {
    double beta;   // outer-frame angle
    double speed;  // |v| = hypot(z, w)
};

LegData leg_at(double s, const VelocityCircle& c, const PhysicalParams& p,
               const Integrals& ints) {
    const RescaledVelocity v = velocity_of_s(c, p, ints, s);
    const double speed = std::hypot(v.z, v.w);
    if (speed <= 0.0) throw InvalidStateError("zero in-plane velocity on the circle");
    return {std::atan2(v.z, v.w), speed};
}

}  // namespace

double alpha_of_s(double s, const VelocityCircle& c, const ArcSet& U, const PhysicalParams& p,
                  const Integrals& ints) {
    if (U.contains(s)) {
        return miss_advance(leg_at(s, c, p, ints).beta) / kTwoPi;
    }
    const double s2 = mod1(-s - c.gamma_norm);
    const double b1 = leg_at(s, c, p, ints).beta;
    const double b2 = leg_at(s2, c, p, ints).beta;
    return fiber_advance(b1, b2, p.R) / kTwoPi;
}

double tau_of_s(double s, const VelocityCircle& c, const ArcSet& U, const PhysicalParams& p,
                const Integrals& ints) {
    if (U.contains(s)) {
        const LegData leg = leg_at(s, c, p, ints);
        const double tau = 2.0 * std::cos(leg.beta) / leg.speed;
        if (!(tau > 0.0)) throw InvalidStateError("nonpositive flight time on the miss branch");
        return tau;
    }
    const double s2 = mod1(-s - c.gamma_norm);
    const LegData l1 = leg_at(s, c, p, ints);
    const LegData l2 = leg_at(s2, c, p, ints);
    const double tau = chord_length(l1.beta, p.R) / l1.speed +
                       chord_length(l2.beta, p.R) / l2.speed;
    if (!(tau > 0.0)) throw InvalidStateError("nonpositive flight time");
    return tau;
}

SkewState skew_step(const SkewState& st, const VelocityCircle& c, const ArcSet& U,
                    const PhysicalParams& p, const Integrals& ints) {
    double s = st.s;
    if (!U.empty() && !U.is_full() && U.boundary_distance(s) < 1e-12) {
        s = mod1(s + 1e-12);
        warn("orbit point within 1e-12 of the miss-set boundary, nudged (s = " +
             std::to_string(st.s) + ")");
    }
    SkewState out = st;
    const double alpha = alpha_of_s(s, c, U, p, ints);
    out.clock = st.clock + tau_of_s(s, c, U, p, ints);
    out.s = U.contains(s) ? mod1(-s) : mod1(s + c.gamma_norm);
    double lift = st.phi + alpha;
    const double fl = std::floor(lift);
    out.phi = lift - fl;
    out.winding = st.winding + static_cast<std::int64_t>(fl);
    if (out.phi >= 1.0) {  // rounding at the bin edge
        out.phi -= 1.0;
        out.winding += 1;
    }
    return out;
}

std::optional<long> detect_period(const BaseState& b, const VelocityCircle& c, const ArcSet& U,
                                  long max_steps) {
    BaseState cur = b;
    for (long k = 1; k <= max_steps; ++k) {
        cur = base_step(cur, c, U);
        if (cur.sheet == b.sheet && circ_dist(cur.s, b.s) < 1e-11) return k;
    }
    return std::nullopt;
}

MeanAlphaResult mean_alpha(const VelocityCircle& c, const ArcSet& U, const PhysicalParams& p,
                           const Integrals& ints, int n_quad) {
    if (!U.empty()) throw NonAlternatingError("mean alpha requires an empty miss set");
    if (n_quad < 8) throw OutOfRangeError("n_quad too small");

    const auto quad = [&](int n) {
        double acc = 0.0, acc_half = 0.0;
        for (int i = 0; i < n; ++i) {
            const double s = (i + 0.5) / n;
            acc += alpha_of_s(s, c, U, p, ints);
            acc_half += beta_hat(leg_at(s, c, p, ints).beta, p.R) / kTwoPi;
        }
        return std::pair<double, double>{acc / n, acc_half / n};
    };

    const auto [v1, h1] = quad(n_quad);
    const auto [v2, h2] = quad(2 * n_quad);
    MeanAlphaResult r;
    r.value = v2;
    r.richardson_error = std::fabs(v1 - v2);
    r.symmetry_error = std::fabs(v2 - 2.0 * h2);
    return r;
}

std::vector<std::pair<double, double>> alpha_monotonicity_scan(const PhysicalParams& p, double N,
                                                               double E,
                                                               std::span<const double> F_grid) {
    Integrals ints;
    ints.N = N;
    ints.E = E;
    ints.F = E * 2.0;  // placeholder for circle construction only
    const VelocityCircle c = build_circle(p, ints);
    // z(s) > 0 for all s: closed form from the z amplitude
    const double rho_z = c.radius * std::hypot(c.e1.z, c.e2.z);
    if (c.center.z - rho_z <= 0.0)
        throw ConventionViolatedError("tangential component z(s) changes sign on the circle");

    std::vector<std::pair<double, double>> table;
    table.reserve(F_grid.size());
    for (double F : F_grid) {
        Integrals fi = ints;
        fi.F = F;
        const ArcSet U = compute_U(c, p, fi);
        table.emplace_back(F, mean_alpha(c, U, p, fi, 1 << 12).value);
    }
    return table;
}

namespace {

// star discrepancy over corner-anchored boxes at kRes x kRes prefix
// resolution; exact for those boxes, the true value exceeds it by at most
// O(2 / kRes)
double anchored_discrepancy(std::span<const SkewState> orbit) {
    constexpr int kRes = 1024;
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(kRes) * kRes, 0);
    for (const SkewState& q : orbit) {
        int i = static_cast<int>(mod1(q.s) * kRes);
        int j = static_cast<int>(mod1(q.phi) * kRes);
        i = std::min(i, kRes - 1);
        j = std::min(j, kRes - 1);
        counts[static_cast<std::size_t>(i) * kRes + j] += 1;
    }
    // prefix sums, then max |empirical - area| over anchored boxes
    std::vector<std::uint64_t> prefix(static_cast<std::size_t>(kRes + 1) * (kRes + 1), 0);
    for (int i = 1; i <= kRes; ++i)
        for (int j = 1; j <= kRes; ++j)
            prefix[static_cast<std::size_t>(i) * (kRes + 1) + j] =
                prefix[static_cast<std::size_t>(i - 1) * (kRes + 1) + j] +
                prefix[static_cast<std::size_t>(i) * (kRes + 1) + j - 1] -
                prefix[static_cast<std::size_t>(i - 1) * (kRes + 1) + j - 1] +
                counts[static_cast<std::size_t>(i - 1) * kRes + (j - 1)];
    const double n = static_cast<double>(orbit.size());
    double disc = 0.0;
    for (int i = 1; i <= kRes; ++i) {
        for (int j = 1; j <= kRes; ++j) {
            const double emp = static_cast<double>(
                                   prefix[static_cast<std::size_t>(i) * (kRes + 1) + j]) / n;
            const double area = (static_cast<double>(i) / kRes) * (static_cast<double>(j) / kRes);
            disc = std::max(disc, std::fabs(emp - area));
        }
    }
    return disc;
}

}  // namespace

OrbitDiagnostics equidistribution_test(std::span<const SkewState> orbit, int bins,
                                       std::optional<std::pair<double, double>> gamma_and_alpha) {
    if (orbit.size() < 2) throw OutOfRangeError("orbit too short");
    OrbitDiagnostics d;

    const SkewState& first = orbit.front();
    const SkewState& last = orbit.back();
    const double lift_first = first.phi + static_cast<double>(first.winding);
    const double lift_last = last.phi + static_cast<double>(last.winding);
    d.rotation_estimate = (lift_last - lift_first) / static_cast<double>(orbit.size() - 1);

    d.discrepancy = anchored_discrepancy(orbit);

    bins = std::clamp(bins, 2, 512);
    std::vector<double> cells(static_cast<std::size_t>(bins) * bins, 0.0);
    for (const SkewState& q : orbit) {
        int i = std::min(static_cast<int>(mod1(q.s) * bins), bins - 1);
        int j = std::min(static_cast<int>(mod1(q.phi) * bins), bins - 1);
        cells[static_cast<std::size_t>(i) * bins + j] += 1.0;
    }
    const double expected = static_cast<double>(orbit.size()) / (bins * bins);
    double chi2 = 0.0;
    for (double c : cells) chi2 += sq(c - expected) / expected;
    d.chi_square = chi2;

    for (std::size_t k = 1; k < orbit.size(); ++k) {
        if (circ_dist(orbit[k].s, first.s) < 1e-11 && circ_dist(orbit[k].phi, first.phi) < 1e-9) {
            d.period = static_cast<long>(k);
            break;
        }
    }

    if (gamma_and_alpha) {
        const auto [gamma, alpha] = *gamma_and_alpha;
        for (int pp = 1; pp <= 50 && !d.dependence; ++pp) {
            for (int qq = -50; qq <= 50; ++qq) {
                const double x = pp * alpha + qq * gamma;
                const double res = std::fabs(x - std::round(x));
                if (res < 1e-9) {
                    d.dependence = RationalDependence{pp, qq, res};
                    break;
                }
            }
        }
    }
    return d;
}

double suspension_average(std::span<const SkewState> orbit, double (*f)(double s, double phi)) {
    if (orbit.size() < 2) throw OutOfRangeError("orbit too short");
    double weighted = 0.0, total = 0.0;
    for (std::size_t k = 0; k + 1 < orbit.size(); ++k) {
        const double tau = orbit[k + 1].clock - orbit[k].clock;
        weighted += f(orbit[k].s, orbit[k].phi) * tau;
        total += tau;
    }
    return weighted / total;
}

}  // namespace anrot
