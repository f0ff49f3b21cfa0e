#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "pottslab/phase.hpp"
#include "pottslab/rng.hpp"

using namespace pottslab;

namespace {

PhasePartition slab_partition(int d, int n, int f, int q, bool flipped) {
    PhasePartition p;
    p.grid = BlockGrid::make(d, n, f);
    p.q = q;
    p.label.resize(p.grid.num_blocks);
    for (int64_t b = 0; b < p.grid.num_blocks; ++b) {
        auto c = p.grid.block_coords(b);
        bool top = p.grid.hi(d - 1, c[d - 1]) > n / 2;
        uint8_t lab = top ? 1 : 2;
        if (flipped) lab = lab == 1 ? 2 : 1;
        p.label[b] = lab;
    }
    return p;
}

} // namespace

TEST_CASE("intermediate scale values") {
    CHECK(intermediate_scale(4096, 3) == 8);
    CHECK(intermediate_scale(16, 3) == 2);
    CHECK(intermediate_scale(16, 2) == 4);
    CHECK(intermediate_scale(64, 3) == 3);
}

TEST_CASE("intermediate scale growth ratios") {
    // f(n)/log n increases over n = 2^8, 2^12, 2^16 at d = 3
    double prev = 0;
    for (int k : {8, 12, 16}) {
        int n = 1 << k;
        double r = intermediate_scale(n, 3) / std::log(double(n));
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("block grid tiling with remainder") {
    BlockGrid g = BlockGrid::make(2, 8, 3);
    CHECK(g.blocks_per_axis[0] == 2);
    CHECK(g.num_blocks == 4);
    CHECK(g.lo(0, 0) == 0);
    CHECK(g.hi(0, 0) == 3);
    CHECK(g.lo(0, 1) == 3);
    CHECK(g.hi(0, 1) == 8); // last block absorbs the remainder
    double total = 0;
    for (int64_t b = 0; b < g.num_blocks; ++b) total += g.volume(b);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("block coords round-trip and neighbors") {
    BlockGrid g = BlockGrid::make(3, 8, 2);
    CHECK(g.num_blocks == 64);
    for (int64_t b = 0; b < g.num_blocks; ++b)
        CHECK(g.block_index(g.block_coords(b)) == b);
    int64_t origin = g.block_index({0, 0, 0});
    CHECK(g.neighbor(origin, 0, -1) == -1);
    CHECK(g.neighbor(origin, 0, 1) == g.block_index({1, 0, 0}));
}

TEST_CASE("test event spec guards exclusivity") {
    TestEventSpec ok{2, 0.3, 0.05};
    CHECK_NOTHROW(ok.validate());
    TestEventSpec bad{2, 0.08, 0.05}; // theta <= 2 epsilon
    CHECK_THROWS(bad.validate());
    CHECK(TestEventSpec::default_epsilon(0.5) == doctest::Approx(0.05));
    CHECK(TestEventSpec::default_epsilon(0.1) == doctest::Approx(0.025));
}

TEST_CASE("reference densities") {
    TestEventSpec spec{2, 0.3, 0.05};
    CHECK(spec.reference_density(1, 1) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(spec.reference_density(1, 2) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("test event on a 78 percent block") {
    // q=2, theta=0.3: reference densities are 0.8 / 0.2
    Lattice lat = Lattice::box(2, 9); // 100 sites
    std::vector<int64_t> all(lat.num_sites());
    for (int64_t s = 0; s < lat.num_sites(); ++s) all[s] = s;
    SpinConfig sigma(lat.num_sites(), 2);
    for (int64_t s = 0; s < 78; ++s) sigma[s] = 1;
    TestEventSpec spec{2, 0.3, 0.05};
    CHECK(test_event(lat, all, sigma, 1, spec));
    CHECK_FALSE(test_event(lat, all, sigma, 2, spec));
}

TEST_CASE("constant block passes only its own phase") {
    Lattice lat = Lattice::box(2, 3);
    std::vector<int64_t> all(lat.num_sites());
    for (int64_t s = 0; s < lat.num_sites(); ++s) all[s] = s;
    SpinConfig sigma(lat.num_sites(), 1);
    TestEventSpec spec{3, 0.65, 0.05}; // theta near 1 - 1/q
    CHECK(test_event(lat, all, sigma, 1, spec));
    CHECK_FALSE(test_event(lat, all, sigma, 2, spec));
    CHECK_FALSE(test_event(lat, all, sigma, 3, spec));
}

TEST_CASE("events are exclusive when theta exceeds twice epsilon") {
    RngStream rng(3, 0);
    Lattice lat = Lattice::box(2, 4);
    std::vector<int64_t> all(lat.num_sites());
    for (int64_t s = 0; s < lat.num_sites(); ++s) all[s] = s;
    TestEventSpec spec{3, 0.4, 0.05};
    for (int rep = 0; rep < 200; ++rep) {
        SpinConfig sigma(lat.num_sites());
        for (auto& c : sigma) c = static_cast<uint8_t>(1 + rng.next_below(3));
        int passing = 0;
        for (int j = 1; j <= 3; ++j) passing += test_event(lat, all, sigma, j, spec);
        CHECK(passing <= 1);
    }
}

TEST_CASE("empirical partition of a constant configuration") {
    Lattice lat = Lattice::box(2, 8);
    SpinConfig sigma(lat.num_sites(), 1);
    TestEventSpec spec{2, 0.5, 0.05};
    PhasePartition p = empirical_phase_partition(lat, sigma, spec, 2);
    for (uint8_t lab : p.label) CHECK(lab == 1);
    CHECK(p.phase_volume(1) == doctest::Approx(1.0).epsilon(1e-14));
    // idempotence
    PhasePartition p2 = empirical_phase_partition(lat, sigma, spec, 2);
    CHECK(p.label == p2.label);
}

TEST_CASE("empirical partition commutes with color swap") {
    RngStream rng(4, 0);
    Lattice lat = Lattice::box(2, 8);
    SpinConfig sigma(lat.num_sites());
    for (auto& c : sigma) c = static_cast<uint8_t>(1 + rng.next_below(2));
    TestEventSpec spec{2, 0.3, 0.05};
    PhasePartition p = empirical_phase_partition(lat, sigma, spec, 2);
    SpinConfig swapped(sigma.size());
    for (size_t i = 0; i < sigma.size(); ++i) swapped[i] = sigma[i] == 1 ? 2 : 1;
    PhasePartition ps = empirical_phase_partition(lat, swapped, spec, 2);
    for (size_t b = 0; b < p.label.size(); ++b) {
        uint8_t expect = p.label[b] == 0 ? 0 : (p.label[b] == 1 ? 2 : 1);
        CHECK(ps.label[b] == expect);
    }
}

TEST_CASE("dist l1 worked examples") {
    BlockGrid g = BlockGrid::make(2, 8, 2); // 16 blocks
    std::vector<uint8_t> empty(g.num_blocks, 0), full(g.num_blocks, 1);
    CHECK(dist_l1(g, full, full) == doctest::Approx(0.0));
    CHECK(dist_l1(g, empty, full) == doctest::Approx(1.0).epsilon(1e-14));
    std::vector<uint8_t> left(g.num_blocks, 0);
    for (int64_t b = 0; b < g.num_blocks; ++b)
        if (g.block_coords(b)[0] < 2) left[b] = 1;
    CHECK(dist_l1(g, left, full) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("dist p worked examples and metric axioms") {
    BlockGrid g = BlockGrid::make(2, 8, 4); // 2x2 blocks
    auto halves = [&](bool swap) {
        PhasePartition p;
        p.grid = g;
        p.q = 2;
        p.label.resize(g.num_blocks);
        for (int64_t b = 0; b < g.num_blocks; ++b) {
            bool left = g.block_coords(b)[0] == 0;
            p.label[b] = (left != swap) ? 1 : 2;
        }
        return p;
    };
    PhasePartition a = halves(false), b = halves(true);
    CHECK(dist_p(a, a) == doctest::Approx(0.0));
    CHECK(dist_p(a, b) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(dist_p(a, b) == doctest::Approx(dist_p(b, a)).epsilon(1e-14));
    // triangle inequality over random triples
    RngStream rng(5, 0);
    auto random_partition = [&] {
        PhasePartition p;
        p.grid = g;
        p.q = 2;
        p.label.resize(g.num_blocks);
        for (auto& l : p.label) l = static_cast<uint8_t>(rng.next_below(3));
        return p;
    };
    for (int rep = 0; rep < 1000; ++rep) {
        PhasePartition x = random_partition(), y = random_partition(),
                       z = random_partition();
        CHECK(dist_p(x, z) <= dist_p(x, y) + dist_p(y, z) + 1e-12);
    }
}

TEST_CASE("discrete perimeter worked examples") {
    PhasePartition flat;
    flat.grid = BlockGrid::make(3, 8, 2);
    flat.q = 2;
    flat.label.assign(flat.grid.num_blocks, 1);
    CHECK(discrete_perimeter(flat) == doctest::Approx(0.0));

    PhasePartition slab = slab_partition(3, 8, 2, 2, false);
    CHECK(discrete_perimeter(slab) == doctest::Approx(1.0).epsilon(1e-14));

    // single interior block of side s flipped: 2 d s^{d-1} faces
    PhasePartition one = flat;
    one.label[one.grid.block_index({1, 1, 1})] = 2;
    double s = 2.0 / 8;
    CHECK(discrete_perimeter(one) == doctest::Approx(6 * s * s).epsilon(1e-14));
    CHECK(discrete_perimeter_of_phase(one, 2) ==
          doctest::Approx(6 * s * s).epsilon(1e-14));
    CHECK(discrete_perimeter_of_phase(one, 1) ==
          doctest::Approx(6 * s * s).epsilon(1e-14));
}

TEST_CASE("surface energy worked examples") {
    double c = 1.7;
    TauModel tau = TauModel::isotropic(c);
    BoundarySpec tb = BoundarySpec::top_bottom(3, 2);

    PhasePartition match = slab_partition(3, 8, 2, 2, false);
    CHECK(surface_energy(match, tau, tb) == doctest::Approx(c).epsilon(1e-14));

    PhasePartition flipped = slab_partition(3, 8, 2, 2, true);
    CHECK(surface_energy(flipped, tau, tb) == doctest::Approx(3 * c).epsilon(1e-14));

    PhasePartition with_zero = match;
    with_zero.label[0] = 0;
    CHECK(std::isinf(surface_energy(with_zero, tau, tb)));
}

TEST_CASE("surface energy bounds by perimeter") {
    RngStream rng(6, 0);
    TauModel tau = TauModel::axis({0.5, 1.0, 2.0});
    BoundarySpec free = BoundarySpec::free_bc(3, 3);
    for (int rep = 0; rep < 50; ++rep) {
        PhasePartition p;
        p.grid = BlockGrid::make(3, 8, 2);
        p.q = 3;
        p.label.resize(p.grid.num_blocks);
        for (auto& l : p.label) l = static_cast<uint8_t>(1 + rng.next_below(3));
        double per = discrete_perimeter(p);
        double en = surface_energy(p, tau, free);
        CHECK(en >= tau.tau_min() * per - 1e-12);
        CHECK(en <= tau.tau_max() * per + 1e-12);
    }
}

TEST_CASE("surface energy with unit tau equals perimeter absent mismatch") {
    RngStream rng(7, 0);
    TauModel tau = TauModel::isotropic(1.0);
    BoundarySpec free = BoundarySpec::free_bc(2, 2);
    for (int rep = 0; rep < 50; ++rep) {
        PhasePartition p;
        p.grid = BlockGrid::make(2, 8, 2);
        p.q = 2;
        p.label.resize(p.grid.num_blocks);
        for (auto& l : p.label) l = static_cast<uint8_t>(1 + rng.next_below(2));
        CHECK(surface_energy(p, tau, free) ==
              doctest::Approx(discrete_perimeter(p)).epsilon(1e-12));
    }
}
