#include "anrot/arcs.hpp"

#include <algorithm>
#include <cmath>

#include "anrot/num.hpp"

namespace anrot {

double Arc::hi() const { return mod1(lo + len); }

ArcSet ArcSet::whole_circle() {
    ArcSet s;
    s.full_ = true;
    return s;
}

ArcSet::ArcSet(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
    std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
}

bool ArcSet::contains(double s) const {
    if (full_) return true;
    for (const Arc& a : arcs_) {
        const double d = mod1(s - a.lo);
        if (d > 0.0 && d < a.len) return true;
    }
    return false;
}

double ArcSet::measure() const {
    if (full_) return 1.0;
    double m = 0.0;
    for (const Arc& a : arcs_) m += a.len;
    return m;
}

double ArcSet::boundary_distance(double s) const {
    if (full_ || arcs_.empty()) return 1.0;
    double best = 1.0;
    for (const Arc& a : arcs_) {
        best = std::min(best, circ_dist(s, a.lo));
        best = std::min(best, circ_dist(s, a.hi()));
    }
    return best;
}

ArcSet ArcSet::reflected(double gamma) const {
    if (full_) return whole_circle();
    std::vector<Arc> out;
    out.reserve(arcs_.size());
    // (lo, lo+len) maps to (-lo-len-gamma, -lo-gamma)
    for (const Arc& a : arcs_) out.push_back({mod1(-a.lo - a.len - gamma), a.len});
    return ArcSet(std::move(out));
}

ArcSet ArcSet::shifted(double delta) const {
    if (full_) return whole_circle();
    std::vector<Arc> out;
    out.reserve(arcs_.size());
    for (const Arc& a : arcs_) out.push_back({mod1(a.lo + delta), a.len});
    return ArcSet(std::move(out));
}

namespace {

// union sweep over split (non-wrapping) intervals in [0,1]
struct Interval {
    double lo, hi;
};

void append_split(std::vector<Interval>& out, const Arc& a) {
    const double hi = a.lo + a.len;
    if (hi <= 1.0) {
        out.push_back({a.lo, hi});
    } else {
        out.push_back({a.lo, 1.0});
        out.push_back({0.0, hi - 1.0});
    }
}

bool covers_circle(std::vector<Interval> iv) {
    std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    double reach = 0.0;
    for (const Interval& i : iv) {
        if (i.lo > reach + 1e-15) return false;
        reach = std::max(reach, i.hi);
        if (reach >= 1.0 - 1e-15) return true;
    }
    return reach >= 1.0 - 1e-15;
}

}  // namespace

long cover_bound(const ArcSet& a, double gamma, long cap) {
    if (a.is_full()) return 1;
    if (a.empty()) return -1;
    std::vector<Interval> acc;
    for (long k = 1; k <= cap; ++k) {
        for (const Arc& arc : a.shifted(-gamma * static_cast<double>(k)).arcs())
            append_split(acc, arc);
        if (covers_circle(acc)) return k;
    }
    return -1;
}

}  // namespace anrot
