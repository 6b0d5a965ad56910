#include "anrot/model.hpp"

#include <cmath>
#include <cstdio>

#include "anrot/errors.hpp"
#include "anrot/num.hpp"

namespace anrot {

const char* to_string(SystemMode mode) {
    switch (mode) {
        case SystemMode::SingleRotor: return "single_rotor";
        case SystemMode::DoubleRotor: return "double_rotor";
        case SystemMode::TwoParticle: return "two_particle";
    }
    return "?";
}

bool ValidationReport::ok() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const {
    std::size_t n = 0;
    for (const auto& e : entries)
        if (e.severity == Severity::Error) ++n;
    return n;
}

std::string ValidationReport::summary() const {
    if (entries.empty()) return "valid";
    std::string s;
    for (const auto& e : entries) {
        s += (e.severity == Severity::Error) ? "error" : "warning";
        s += " [" + e.code + "] " + e.message + "\n";
    }
    return s;
}

namespace {

void add(ValidationReport& r, Severity sev, std::string code, std::string msg) {
    r.entries.push_back({sev, std::move(code), std::move(msg)});
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Scans the double-rotor velocity circle for a point with v_t == v_n == 0.
// Such a configuration fixes the rotor speeds and would tie the three
// integrals together; it is rejected instead of handled dynamically.
void check_zero_velocity(ValidationReport& r, const PhysicalParams& p, const Integrals& ints) {
    const double se1 = std::sqrt(p.eta1), se2 = std::sqrt(*p.eta2);
    const double n2 = 1.0 + p.eta1 + *p.eta2;
    const double r2 = ints.E - ints.N * ints.N / n2;
    if (r2 <= 0.0) return;  // empty circle reported elsewhere
    const double radius = std::sqrt(r2);
    const double cx = ints.N * se1 / n2, cy = ints.N * se2 / n2, cz = ints.N / n2;
    // orthonormal pair spanning the integral plane; n is never parallel to z-hat
    const double an = std::sqrt(p.eta1 + *p.eta2);
    const double e1x = se2 / an, e1y = -se1 / an, e1z = 0.0;
    // e2 = normalize(n x e1)
    double f2x = se2 * e1z - 1.0 * e1y, f2y = 1.0 * e1x - se1 * e1z, f2z = se1 * e1y - se2 * e1x;
    const double fn = std::sqrt(f2x * f2x + f2y * f2y + f2z * f2z);
    f2x /= fn; f2y /= fn; f2z /= fn;
    const double invR2 = 1.0 / (p.R * p.R);
    double min_combined = 1e300;
    const int kGrid = 1 << 16;
    for (int i = 0; i < kGrid; ++i) {
        const double th = kTwoPi * i / kGrid;
        const double c = std::cos(th), s = std::sin(th);
        const double x = cx + radius * (c * e1x + s * f2x);
        const double y = cy + radius * (c * e1y + s * f2y);
        const double z = cz + radius * (c * e1z + s * f2z);
        const double w2 = *ints.F - x * x * invR2 - y * y - z * z;
        min_combined = std::min(min_combined, z * z + std::max(0.0, w2));
    }
    if (min_combined < 1e-12 * ints.E)
        add(r, Severity::Error, "degenerate_velocity",
            "velocity circle contains a zero-velocity configuration (v_t = v_n = 0)");
}

}  // namespace

ValidationReport validate_params(const PhysicalParams& p, const Integrals& ints) {
    ValidationReport r;

    if (!(p.R > 0.0 && p.R < 1.0))
        add(r, Severity::Error, "R_domain", "R must lie in (0,1), got " + num(p.R));
    if (!(p.eta1 > 0.0))
        add(r, Severity::Error, "eta1_domain", "eta1 must be positive, got " + num(p.eta1));
    if (p.mode == SystemMode::DoubleRotor) {
        if (!p.eta2)
            add(r, Severity::Error, "eta2_missing", "eta2 is required in double_rotor mode");
        else if (!(*p.eta2 > 0.0))
            add(r, Severity::Error, "eta2_domain", "eta2 must be positive, got " + num(*p.eta2));
    } else if (p.eta2) {
        add(r, Severity::Warning, "eta2_ignored",
            std::string("eta2 is not used in ") + to_string(p.mode) + " mode");
    }
    if (!(ints.E > 0.0))
        add(r, Severity::Error, "E_domain", "E must be positive, got " + num(ints.E));
    if (!r.ok()) return r;

    switch (p.mode) {
        case SystemMode::SingleRotor: {
            if (!ints.vn) {
                add(r, Severity::Error, "vn_missing", "vn is required in single_rotor mode");
                break;
            }
            if (!(std::fabs(*ints.vn) > 0.0))
                add(r, Severity::Error, "vn_zero", "vn must be nonzero");
            const double gap = ints.E - ints.N * ints.N / (1.0 + p.eta1);
            if (gap < 0.0)
                add(r, Severity::Error, "empty_velocity_set",
                    "E - N^2/(1+eta1) = " + num(gap) + " < 0: no (vt, omega) satisfies both integrals");
            break;
        }
        case SystemMode::DoubleRotor: {
            if (!ints.F) {
                add(r, Severity::Error, "F_missing", "F is required in double_rotor mode");
                break;
            }
            if (!(*ints.F > ints.E))
                add(r, Severity::Error, "F_le_E",
                    "full energy F = " + num(*ints.F) + " must exceed tangential energy E = " + num(ints.E));
            const double n2 = 1.0 + p.eta1 + *p.eta2;
            const double r2 = ints.E - ints.N * ints.N / n2;
            if (r2 <= 0.0) {
                add(r, Severity::Error, "empty_circle",
                    "E - N^2/(1+eta1+eta2) = " + num(r2) + " <= 0: velocity circle is empty");
            } else {
                if (r2 < 1e-8 * ints.E)
                    add(r, Severity::Warning, "near_degenerate_circle",
                        "velocity circle radius^2 = " + num(r2) + " is near zero");
                if (r.ok()) {
                    // partially unphysical circle: w^2 < 0 somewhere
                    const double se1 = std::sqrt(p.eta1);
                    const double cx = ints.N * se1 / n2;
                    const double rho_x = std::sqrt(r2) * std::sqrt(1.0 - se1 * se1 / n2);
                    const double xmax = std::fabs(cx) + rho_x;
                    const double invR2m1 = 1.0 / (p.R * p.R) - 1.0;
                    if (*ints.F - ints.E - xmax * xmax * invR2m1 < 0.0)
                        add(r, Severity::Warning, "partial_shell",
                            "w^2 < 0 on part of the velocity circle; only the base map is "
                            "meaningful there");
                    check_zero_velocity(r, p, ints);
                }
            }
            break;
        }
        case SystemMode::TwoParticle: {
            if (!ints.vn)
                add(r, Severity::Error, "vn_missing", "vn is required in two_particle mode");
            if (!ints.un)
                add(r, Severity::Error, "un_missing", "un is required in two_particle mode");
            if (ints.vn && !(std::fabs(*ints.vn) > 0.0))
                add(r, Severity::Error, "vn_zero", "vn must be nonzero");
            if (ints.un && !(std::fabs(*ints.un) > 0.0))
                add(r, Severity::Error, "un_zero", "un must be nonzero");
            const double n2 = 2.0 + p.eta1;
            const double r2 = ints.E - ints.N * ints.N / n2;
            if (r2 <= 0.0)
                add(r, Severity::Error, "empty_circle",
                    "E - N^2/(2+eta) = " + num(r2) + " <= 0: velocity circle is empty");
            else if (r2 < 1e-8 * ints.E)
                add(r, Severity::Warning, "near_degenerate_circle",
                    "velocity circle radius^2 = " + num(r2) + " is near zero");
            break;
        }
    }
    return r;
}

RescaledVelocity rescale(double vt, double omega1, double omega2, double vn,
                         const PhysicalParams& p) {
    if (p.mode != SystemMode::DoubleRotor || !p.eta2)
        throw InvalidStateError("rescale requires double_rotor mode");
    return {std::sqrt(p.eta1) * p.R * p.R * omega1, std::sqrt(*p.eta2) * omega2, vt, vn};
}

PhysicalVelocity unrescale(const RescaledVelocity& v, const PhysicalParams& p) {
    if (p.mode != SystemMode::DoubleRotor || !p.eta2)
        throw InvalidStateError("unrescale requires double_rotor mode");
    return {v.z, v.x / (std::sqrt(p.eta1) * p.R * p.R), v.y / std::sqrt(*p.eta2), v.w};
}

Integrals integrals_of(const RescaledVelocity& v, const PhysicalParams& p) {
    if (p.mode != SystemMode::DoubleRotor || !p.eta2)
        throw InvalidStateError("integrals_of requires double_rotor mode");
    Integrals out;
    out.N = std::sqrt(p.eta1) * v.x + std::sqrt(*p.eta2) * v.y + v.z;
    out.E = v.x * v.x + v.y * v.y + v.z * v.z;
    out.F = v.x * v.x / (p.R * p.R) + v.y * v.y + v.z * v.z + v.w * v.w;
    return out;
}

}  // namespace anrot
