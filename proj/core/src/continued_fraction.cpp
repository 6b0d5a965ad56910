#include "anrot/continued_fraction.hpp"

#include <algorithm>
#include <cmath>

#include "anrot/errors.hpp"
#include "anrot/num.hpp"

namespace anrot {

const char* to_string(NumberKind kind) {
    switch (kind) {
        case NumberKind::Rational: return "rational";
        case NumberKind::DiophantineLike: return "diophantine_like";
        case NumberKind::LiouvilleLike: return "liouville_like";
    }
    return "?";
}

// Every double is a dyadic rational, so deep convergents always converge to
// the stored bits. The Rational verdict is therefore gated twice: the
// convergent must reproduce the value to 1e-13 AND have denominator at most
// kRationalDenomCap, below the scale where the expansion of an honest
// irrational could reach that error. Quotients computed past kDenomReliable
// are floating-point noise and are discarded.
namespace {
constexpr std::int64_t kRationalDenomCap = 100000;
constexpr std::int64_t kDenomReliable = 10000000;
}  // namespace

NumberClassification classify_number(double x, int depth) {
    depth = std::clamp(depth, 1, 60);
    NumberClassification out;
    out.value = x;

    std::int64_t p_prev = 1, q_prev = 0;  // p_{-1}/q_{-1}
    std::int64_t p_cur = 0, q_cur = 1;    // a_0 = 0 for x in [0,1)
    double frac = mod1(x);
    out.convergent_error = frac;
    std::int64_t max_quot = 0;
    bool rational = frac < 1e-14;

    for (int k = 0; k < depth && !rational; ++k) {
        if (frac < 1e-14) break;
        const double y = 1.0 / frac;
        double a = std::floor(y + 1e-10);  // snap reciprocals a few ulp below an integer
        if (a < 1.0) a = 1.0;
        if (a > static_cast<double>(kDenomReliable)) break;
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t q_next = ai * q_cur + q_prev;
        if (q_next > kDenomReliable) break;
        out.partial_quotients.push_back(ai);
        max_quot = std::max(max_quot, ai);
        const std::int64_t p_next = ai * p_cur + p_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        const double err = std::fabs(x - static_cast<double>(p_cur) / static_cast<double>(q_cur));
        if (err < out.convergent_error || out.q == 1) {
            out.convergent_error = err;
            out.p = p_cur;
            out.q = q_cur;
        }
        if (err < 1e-13 && q_cur <= kRationalDenomCap) {
            rational = true;
            break;
        }
        frac = y - a;
        if (frac < 0.0) frac = 0.0;
    }

    if (rational) {
        out.kind = NumberKind::Rational;
    } else {
        out.kind = (max_quot >= kRationalDenomCap) ? NumberKind::LiouvilleLike
                                                   : NumberKind::DiophantineLike;
    }
    return out;
}

double gamma_closed_form(const PhysicalParams& p) {
    double cos_half;
    switch (p.mode) {
        case SystemMode::DoubleRotor:
            if (!p.eta2) throw InvalidStateError("gamma requires eta2 in double_rotor mode");
            cos_half = 1.0 / std::sqrt((1.0 + 1.0 / p.eta1) * (1.0 + 1.0 / *p.eta2));
            break;
        case SystemMode::TwoParticle:
            cos_half = 1.0 / (1.0 + p.eta1);
            break;
        default:
            throw InvalidStateError("gamma is defined for double_rotor and two_particle modes");
    }
    return std::acos(cos_half) / kPi;
}

NumberClassification classify_gamma(const PhysicalParams& p, int depth) {
    return classify_number(gamma_closed_form(p), depth);
}

}  // namespace anrot
