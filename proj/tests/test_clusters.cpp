#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pottslab/clusters.hpp"
#include "pottslab/fk.hpp"

using namespace pottslab;

TEST_CASE("all-closed free counting gives one cluster per site") {
    Lattice sq = Lattice::box(2, 2);
    BondConfig eta(sq.num_edges(), 0);
    ClusterLabeling lab = clusters(sq, eta, CountingRule::free_rule());
    CHECK(lab.count == sq.num_sites());
    for (const ClusterStats& st : lab.stats) {
        CHECK(st.size == 1);
        CHECK(st.diameter == 0);
        CHECK_FALSE(st.crossing);
    }
}

TEST_CASE("all-open gives a single crossing cluster") {
    Lattice sq = Lattice::box(2, 3);
    BondConfig eta(sq.num_edges(), 1);
    ClusterLabeling lab = clusters(sq, eta, CountingRule::free_rule());
    CHECK(lab.count == 1);
    CHECK(lab.stats[0].size == sq.num_sites());
    CHECK(lab.stats[0].diameter == 3);
    CHECK(lab.stats[0].crossing);
}

TEST_CASE("wired counting merges the boundary into one unit") {
    Lattice sq = Lattice::box(2, 2);
    BondConfig eta(sq.num_edges(), 0);
    ClusterLabeling lab = clusters(sq, eta, CountingRule::wired_rule());
    // 8 boundary sites count as one cluster, the center as another
    CHECK(lab.count == 2);
}

TEST_CASE("frozen counting merges same-colored boundary parts") {
    Lattice sq = Lattice::box(2, 2);
    std::vector<uint8_t> frozen(sq.num_sites(), 0);
    frozen[sq.site_index({0, 0})] = 1;
    frozen[sq.site_index({2, 2})] = 1;
    frozen[sq.site_index({0, 2})] = 2;
    BondConfig eta(sq.num_edges(), 0);
    ClusterLabeling lab = clusters(sq, eta, CountingRule::from_frozen(frozen));
    CHECK(lab.count == sq.num_sites() - 1);
    bool saw_part1 = false;
    for (const ClusterStats& st : lab.stats) {
        if (st.touches_part & (1u << 1)) {
            saw_part1 = true;
            CHECK(st.size == 2);
        }
    }
    CHECK(saw_part1);
}

TEST_CASE("diameter is the bounding-box extent of a path") {
    Lattice sq = Lattice::box(2, 3);
    BondConfig eta(sq.num_edges(), 0);
    // open a horizontal path of length 2 along the bottom row
    eta[sq.edge_at(sq.site_index({0, 0}), 0)] = 1;
    eta[sq.edge_at(sq.site_index({1, 0}), 0)] = 1;
    ClusterLabeling lab = clusters(sq, eta, CountingRule::free_rule());
    int32_t id = lab.id[sq.site_index({0, 0})];
    CHECK(lab.stats[id].size == 3);
    CHECK(lab.stats[id].diameter == 2);
    CHECK_FALSE(lab.stats[id].crossing);
}

TEST_CASE("crossing detects a spanning row") {
    Lattice sq = Lattice::box(2, 3);
    BondConfig eta(sq.num_edges(), 0);
    for (int x = 0; x < 3; ++x) eta[sq.edge_at(sq.site_index({x, 1}), 0)] = 1;
    ClusterLabeling lab = clusters(sq, eta, CountingRule::free_rule());
    int32_t id = lab.id[sq.site_index({0, 1})];
    CHECK(lab.stats[id].crossing);
}

TEST_CASE("admissibility violation detection") {
    Lattice seg = Lattice::rect({2}, 1);
    std::vector<uint8_t> frozen = {1, 0, 2};
    BondConfig both = {1, 1};
    CHECK(violates_admissibility(seg, both, frozen));
    BondConfig one = {1, 0};
    CHECK_FALSE(violates_admissibility(seg, one, frozen));
    BondConfig none = {0, 0};
    CHECK_FALSE(violates_admissibility(seg, none, frozen));
}

TEST_CASE("batch means on constant input") {
    BatchMeans bm(8);
    for (int i = 0; i < 256; ++i) bm.add(3.5);
    Estimate e = bm.estimate();
    CHECK(e.value == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(e.stderror == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(e.samples == 256);
}

TEST_CASE("batch means stderr shrinks with sample size") {
    RngStream rng(1, 0);
    BatchMeans small(16), large(16);
    for (int i = 0; i < 256; ++i) small.add(rng.next_double());
    for (int i = 0; i < 16384; ++i) large.add(rng.next_double());
    CHECK(large.estimate().stderror < small.estimate().stderror);
    CHECK(std::abs(large.estimate().value - 0.5) < 0.02);
}

TEST_CASE("order parameter on constant samples") {
    Lattice sq = Lattice::box(2, 2);
    OrderParameterEstimator est(sq, 2, 1);
    SpinConfig all1(sq.num_sites(), 1);
    for (int i = 0; i < 100; ++i) est.add(all1);
    Estimate e = est.estimate();
    CHECK(e.value == doctest::Approx(0.5).epsilon(1e-12)); // 1 - 1/q
    OrderParameterEstimator other(sq, 2, 2);
    for (int i = 0; i < 100; ++i) other.add(all1);
    CHECK(other.estimate().value == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("percolation estimator on extreme bonds") {
    Lattice sq = Lattice::box(2, 4);
    PercolationEstimator est(sq);
    BondConfig open(sq.num_edges(), 1);
    BondConfig closed(sq.num_edges(), 0);
    for (int i = 0; i < 10; ++i) est.add(sq, open);
    CHECK(est.estimate().value == doctest::Approx(1.0));
    PercolationEstimator est2(sq);
    for (int i = 0; i < 10; ++i) est2.add(sq, closed);
    CHECK(est2.estimate().value == doctest::Approx(0.0));
}

TEST_CASE("slab probe extremes") {
    Lattice slab = Lattice::rect({4, 4, 2}, 4);
    std::vector<BondConfig> open(5, BondConfig(slab.num_edges(), 1));
    SlabProbeResult r = slab_lro_probe(slab, open, 0.5, 1);
    CHECK(r.min_frequency == doctest::Approx(1.0));
    std::vector<BondConfig> closed(5, BondConfig(slab.num_edges(), 0));
    SlabProbeResult r2 = slab_lro_probe(slab, closed, 0.5, 1);
    CHECK(r2.min_frequency == doctest::Approx(0.0));
}

TEST_CASE("diameter tail extremes") {
    Lattice sq = Lattice::box(2, 3);
    std::vector<BondConfig> open(4, BondConfig(sq.num_edges(), 1));
    DiameterTail t = diameter_tail(sq, open, CountingRule::free_rule());
    int64_t nonzero = 0;
    for (int64_t c : t.histogram) nonzero += c;
    CHECK(nonzero == 0); // single cluster per sample, no non-largest ones

    std::vector<BondConfig> closed(4, BondConfig(sq.num_edges(), 0));
    DiameterTail t2 = diameter_tail(sq, closed, CountingRule::free_rule());
    REQUIRE(t2.histogram.size() >= 1);
    CHECK(t2.histogram[0] > 0);
    for (size_t i = 1; i < t2.histogram.size(); ++i) CHECK(t2.histogram[i] == 0);
}

TEST_CASE("bond step then clusters respects spin blocks") {
    // random-cluster property check: clusters from the bond step never mix colors
    Lattice sq = Lattice::box(2, 4);
    RngStream rng(9, 0);
    SpinConfig sigma(sq.num_sites());
    for (auto& c : sigma) c = static_cast<uint8_t>(1 + rng.next_below(3));
    BondConfig eta = es_bond_step(sq, sigma, 0.7, rng);
    ClusterLabeling lab = clusters(sq, eta, CountingRule::free_rule());
    // open bonds only join agreeing spins, so every cluster is monochrome
    std::vector<int> color_of(lab.count, -1);
    for (int64_t s = 0; s < sq.num_sites(); ++s) {
        int& c = color_of[lab.id[s]];
        if (c < 0)
            c = sigma[s];
        else
            CHECK(c == sigma[s]);
    }
}
