#include "doctest.h"

#include <cmath>

#include "anrot/arcs.hpp"
#include "anrot/num.hpp"

using namespace anrot;

TEST_SUITE("arcs") {

TEST_CASE("containment of plain and wrapped arcs") {
    ArcSet a({{0.1, 0.2}, {0.9, 0.15}});  // (0.1,0.3) and (0.9,0.05) wrapped
    CHECK(a.contains(0.2));
    CHECK_FALSE(a.contains(0.5));
    CHECK(a.contains(0.95));
    CHECK(a.contains(0.02));
    CHECK_FALSE(a.contains(0.06));
    // endpoints are excluded (open arcs)
    CHECK_FALSE(a.contains(0.1));
    CHECK_FALSE(a.contains(0.3));
    CHECK(a.measure() == doctest::Approx(0.35).epsilon(1e-15));
}

TEST_CASE("reflection maps arcs onto arcs") {
    ArcSet a({{0.1, 0.2}});
    const ArcSet r = a.reflected(0.25);  // s -> -s - 1/4
    // (0.1, 0.3) -> (-0.55, -0.35) = (0.45, 0.65)
    REQUIRE(r.count() == 1);
    CHECK(r.arcs()[0].lo == doctest::Approx(0.45).epsilon(1e-15));
    CHECK(r.arcs()[0].len == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("rational shift never covers when the orbit leaves gaps") {
    // width 0.2 arc shifted by 1/4 tiles only 0.8 of the circle
    ArcSet a({{0.1, 0.2}});
    CHECK(cover_bound(a, 0.25, 1000) == -1);
}

TEST_CASE("irrational shift covers, matching a grid oracle") {
    ArcSet a({{0.0, 0.3}});
    const double gamma = 0.6180339887498949;
    const long n = cover_bound(a, gamma, 10000);
    REQUIRE(n > 0);
    // grid oracle: first k whose accumulated shifted copies cover a fine grid
    const int grid = 200000;
    std::vector<char> covered(grid, 0);
    long oracle = -1;
    long remaining = grid;
    for (long k = 1; k <= 10000 && oracle < 0; ++k) {
        for (int i = 0; i < grid; ++i) {
            if (covered[i]) continue;
            const double s = (i + 0.5) / grid;
            if (a.contains(mod1(s + gamma * static_cast<double>(k)))) {
                covered[i] = 1;
                --remaining;
            }
        }
        if (remaining == 0) oracle = k;
    }
    CHECK(n == oracle);
}

TEST_CASE("boundary distance") {
    ArcSet a({{0.2, 0.1}});
    CHECK(a.boundary_distance(0.2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(a.boundary_distance(0.25) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(a.boundary_distance(0.65) == doctest::Approx(0.35).epsilon(1e-12));
    CHECK(ArcSet{}.boundary_distance(0.5) == 1.0);
}

}  // TEST_SUITE
