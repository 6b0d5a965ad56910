#pragma once

#include <optional>
#include <string>
#include <vector>

namespace anrot {

// Which boundaries rotate and how many particles fly.
//  SingleRotor: one particle, inner scatterer rotates, outer is a billiard.
//  DoubleRotor: one particle, both scatterers rotate.
//  TwoParticle: two particles, inner scatterer rotates, outer is a billiard.
enum class SystemMode { SingleRotor, DoubleRotor, TwoParticle };

const char* to_string(SystemMode mode);

// Geometry and rescaled moments of inertia. The outer radius is fixed to 1.
// eta1 = Theta_inner / (m R^2); eta2 = Theta_outer / m (DoubleRotor only).
struct PhysicalParams {
    SystemMode mode = SystemMode::DoubleRotor;
    double R = 0.5;
    double eta1 = 1.0;
    std::optional<double> eta2;
};

// Conserved quantities fixing a level set of the dynamics.
//  N: angular momentum, E: tangential energy (both modes of splitting folded
//  into the mode-specific definitions), F: full energy (DoubleRotor),
//  vn/un: fixed normal components at the inner scatterer (SingleRotor /
//  TwoParticle).
struct Integrals {
    double N = 0.0;
    double E = 1.0;
    std::optional<double> F;
    std::optional<double> vn;
    std::optional<double> un;
};

// Rescaled velocity coordinates of the double-rotor system:
//   x = sqrt(eta1) R^2 omega1, y = sqrt(eta2) omega2, z = v_t, w = v_n >= 0,
// with v_t, v_n split at the outer scatterer.
struct RescaledVelocity {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double w = 0.0;
};

struct PhysicalVelocity {
    double vt = 0.0;
    double omega1 = 0.0;
    double omega2 = 0.0;
    double vn = 0.0;
};

enum class Severity { Error, Warning };

struct ValidationEntry {
    Severity severity;
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;

    bool ok() const;
    std::size_t error_count() const;
    std::string summary() const;
};

// Checks that (params, integrals) define a usable level set: domain bounds,
// mode-required fields, nonempty velocity circle, full energy above the
// tangential one, and absence of the zero-velocity configuration.
ValidationReport validate_params(const PhysicalParams& params, const Integrals& ints);

RescaledVelocity rescale(double vt, double omega1, double omega2, double vn,
                         const PhysicalParams& params);
PhysicalVelocity unrescale(const RescaledVelocity& v, const PhysicalParams& params);

// Recomputes (N, E, F) from a rescaled velocity.
Integrals integrals_of(const RescaledVelocity& v, const PhysicalParams& params);

// default tolerances; conservation tests use the tighter one
inline constexpr double kInvariantRelTol = 1e-9;
inline constexpr double kConservationRelTol = 1e-12;

}  // namespace anrot
