#pragma once

#include <vector>

namespace anrot {

// Open arc on the circle [0,1): starts at lo, extends len counterclockwise,
// possibly wrapping past 1.
struct Arc {
    double lo = 0.0;
    double len = 0.0;

    double hi() const;  // mod-1 endpoint
};

// Finite union of disjoint open arcs on [0,1). `full` marks the whole circle.
class ArcSet {
public:
    ArcSet() = default;
    static ArcSet whole_circle();
    // arcs need not be sorted; they must be pairwise disjoint
    explicit ArcSet(std::vector<Arc> arcs);

    bool empty() const { return !full_ && arcs_.empty(); }
    bool is_full() const { return full_; }
    std::size_t count() const { return full_ ? 1 : arcs_.size(); }
    const std::vector<Arc>& arcs() const { return arcs_; }

    bool contains(double s) const;
    double measure() const;
    // distance from s to the nearest arc endpoint (1 if the set is empty/full)
    double boundary_distance(double s) const;

    // image under s -> -s - gamma (mod 1); arcs map onto arcs
    ArcSet reflected(double gamma) const;
    // image under s -> s + delta (mod 1)
    ArcSet shifted(double delta) const;

private:
    std::vector<Arc> arcs_;  // sorted by lo
    bool full_ = false;
};

// Smallest N >= 1 such that the union of the shifted copies
// {A - k*gamma : k = 1..N} covers the circle; nullopt-style -1 if no cover
// within cap iterations (or A is empty).
long cover_bound(const ArcSet& a, double gamma, long cap = 100000);

}  // namespace anrot
