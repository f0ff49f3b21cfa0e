#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "pottslab/lattice.hpp"

using namespace pottslab;

TEST_CASE("box counts sites and edges") {
    Lattice a = Lattice::box(2, 1);
    CHECK(a.num_sites() == 4);
    CHECK(a.num_edges() == 4);

    Lattice b = Lattice::box(3, 1);
    CHECK(b.num_sites() == 8);
    CHECK(b.num_edges() == 12);

    Lattice c = Lattice::box(2, 2);
    CHECK(c.num_sites() == 9);
    CHECK(c.num_edges() == 12);

    // d n (n+1)^{d-1} edges on the box
    Lattice e = Lattice::box(3, 4);
    CHECK(e.num_sites() == 125);
    CHECK(e.num_edges() == 3 * 4 * 25);
}

TEST_CASE("rect allows degenerate extents") {
    Lattice single = Lattice::rect({0, 0}, 1);
    CHECK(single.num_sites() == 1);
    CHECK(single.num_edges() == 0);

    Lattice pair = Lattice::rect({1, 0}, 1);
    CHECK(pair.num_sites() == 2);
    CHECK(pair.num_edges() == 1);
}

TEST_CASE("site budget is enforced") {
    CHECK_THROWS_AS(Lattice::box(3, 4096), SizingError);
    CHECK_THROWS_AS(Lattice::box(2, 100, 1000), SizingError);
    CHECK_NOTHROW(Lattice::box(2, 30, 1000));
}

TEST_CASE("coords and index round-trip") {
    Lattice lat = Lattice::box(3, 3);
    for (int64_t s = 0; s < lat.num_sites(); ++s) {
        auto c = lat.site_coords(s);
        REQUIRE(c.size() == 3);
        for (int v : c) {
            CHECK(v >= 0);
            CHECK(v <= 3);
        }
        CHECK(lat.site_index(c) == s);
    }
}

TEST_CASE("edges join unit-distance neighbors") {
    Lattice lat = Lattice::box(2, 3);
    std::set<std::pair<int64_t, int64_t>> seen;
    for (const Edge& e : lat.edges()) {
        auto ca = lat.site_coords(e.a);
        auto cb = lat.site_coords(e.b);
        int diff = 0;
        for (size_t a = 0; a < ca.size(); ++a) diff += std::abs(ca[a] - cb[a]);
        CHECK(diff == 1);
        CHECK(cb[e.axis] - ca[e.axis] == 1);
        CHECK(seen.insert({e.a, e.b}).second);
        CHECK(lat.edge_at(e.a, e.axis) >= 0);
    }
}

TEST_CASE("neighbor lookup respects the box") {
    Lattice lat = Lattice::box(2, 2);
    int64_t corner = lat.site_index({0, 0});
    CHECK(lat.neighbor(corner, 0, -1) == -1);
    CHECK(lat.neighbor(corner, 1, -1) == -1);
    CHECK(lat.neighbor(corner, 0, 1) == lat.site_index({1, 0}));
    CHECK(lat.neighbor(corner, 1, 1) == lat.site_index({0, 1}));
}

TEST_CASE("boundary detection") {
    Lattice lat = Lattice::box(2, 2);
    int64_t center = lat.site_index({1, 1});
    CHECK_FALSE(lat.is_boundary(center));
    auto bd = lat.boundary_sites();
    CHECK(bd.size() == 8);
    for (int64_t s : bd) CHECK(lat.is_boundary(s));
    CHECK(lat.center_site() == center);
}

TEST_CASE("box_at is half-open") {
    Lattice lat = Lattice::box(2, 4);
    auto sites = lat.box_at({0.5, 0.5}, 0.5);
    // coords with 0.25 < c/4 <= 0.75 per axis: c in {2, 3}
    CHECK(sites.size() == 4);
    for (int64_t s : sites) {
        auto c = lat.site_coords(s);
        CHECK(c[0] >= 2);
        CHECK(c[0] <= 3);
        CHECK(c[1] >= 2);
        CHECK(c[1] <= 3);
    }
}

TEST_CASE("boundary spec factories") {
    BoundarySpec free = BoundarySpec::free_bc(3, 2);
    for (int p : free.face_part) CHECK(p == 0);

    BoundarySpec uni = BoundarySpec::uniform(3, 2, 1);
    for (int p : uni.face_part) CHECK(p == 1);

    BoundarySpec tb = BoundarySpec::top_bottom(3, 2);
    CHECK(tb.face_part[2 * 2 + 1] == 1);
    CHECK(tb.face_part[2 * 2 + 0] == 2);
    CHECK(tb.face_part[0] == 0);

    BoundarySpec pf = BoundarySpec::per_face(3, 6);
    for (int f = 0; f < 6; ++f) CHECK(pf.face_part[f] == f + 1);
    CHECK_THROWS(BoundarySpec::per_face(3, 4));
}

TEST_CASE("discretized uniform boundary freezes the whole boundary") {
    Lattice lat = Lattice::box(2, 3);
    auto frozen = discretize_boundary(BoundarySpec::uniform(2, 2, 1), lat);
    for (int64_t s = 0; s < lat.num_sites(); ++s) {
        if (lat.is_boundary(s))
            CHECK(frozen[s] == 1);
        else
            CHECK(frozen[s] == 0);
    }
}

TEST_CASE("top-bottom discretization leaves cube edges free") {
    // the lateral faces belong to part 0, which wins at equal priority: a
    // site on both a lateral face and the top face stays free
    Lattice lat = Lattice::box(2, 4);
    auto frozen = discretize_boundary(BoundarySpec::top_bottom(2, 2), lat);
    for (int64_t s = 0; s < lat.num_sites(); ++s) {
        auto c = lat.site_coords(s);
        bool lateral = c[0] == 0 || c[0] == 4;
        if (lateral)
            CHECK(frozen[s] == 0);
        else if (c[1] == 4)
            CHECK(frozen[s] == 1);
        else if (c[1] == 0)
            CHECK(frozen[s] == 2);
        else
            CHECK(frozen[s] == 0);
    }
}

TEST_CASE("discretization is deterministic in spec and n") {
    Lattice lat = Lattice::box(3, 5);
    BoundarySpec spec = BoundarySpec::per_face(3, 6);
    CHECK(discretize_boundary(spec, lat) == discretize_boundary(spec, lat));
}
