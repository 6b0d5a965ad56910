#pragma once

#include <cstdint>
#include <vector>

#include "anrot/model.hpp"

namespace anrot {

// Numerical evidence only: double precision cannot prove irrationality. A
// value is reported Rational when some convergent reproduces it to better
// than 1e-13; otherwise the partial quotients are the evidence.
enum class NumberKind { Rational, DiophantineLike, LiouvilleLike };

const char* to_string(NumberKind kind);

struct NumberClassification {
    double value = 0.0;
    NumberKind kind = NumberKind::DiophantineLike;
    std::int64_t p = 0;  // convergent numerator (set when Rational)
    std::int64_t q = 1;
    std::vector<std::int64_t> partial_quotients;
    double convergent_error = 0.0;  // |value - p/q| of the best convergent
};

// Continued-fraction expansion of x in [0,1) capped at `depth` terms
// (depth <= 60). Near-integer reciprocals are snapped before flooring so
// that values a few ulp below an integer do not split into (a-1, 1, ...).
NumberClassification classify_number(double x, int depth = 40);

// Rotation angle of the second-return base map, from the closed forms
//   cos(pi gamma) = ((1+1/eta1)(1+1/eta2))^(-1/2)   (double rotor)
//   cos(pi gamma) = 1/(1+eta)                       (two particles)
// Rationality depends only on the physical parameters, not the integrals.
double gamma_closed_form(const PhysicalParams& p);
NumberClassification classify_gamma(const PhysicalParams& p, int depth = 40);

}  // namespace anrot
