#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pottslab/lattice.hpp"

namespace pottslab {

using BondConfig = std::vector<uint8_t>; // one open bit per edge
using SpinConfig = std::vector<uint8_t>; // one color in 1..q per site

enum class FkBc { free_bc, wired };

// Cluster-counting rule of the random-cluster measure: boundary sites frozen
// to the same color are identified before edges are unioned; under the wired
// rule every boundary site counts as one unit.
struct CountingRule {
    const std::vector<uint8_t>* frozen = nullptr; // nullptr => free
    bool wired = false;

    static CountingRule free_rule() { return {}; }
    static CountingRule wired_rule() { return {nullptr, true}; }
    static CountingRule from_frozen(const std::vector<uint8_t>& f) { return {&f, false}; }
};

struct ClusterStats {
    int64_t size = 0;
    int diameter = 0; // l_inf bounding-box extent in lattice units
    uint32_t touches_part = 0; // bit i set if cluster holds a site frozen to color i
    bool crossing = false; // spans opposite faces along some axis
};

struct ClusterLabeling {
    std::vector<int32_t> id; // cluster id per site, 0..count-1
    int32_t count = 0; // #(eta) under the counting rule
    std::vector<ClusterStats> stats; // indexed by cluster id
};

ClusterLabeling clusters(const Lattice& lat, const BondConfig& eta, CountingRule rule);

// true if eta joins two boundary sites frozen to different colors
bool violates_admissibility(const Lattice& lat, const BondConfig& eta,
                            const std::vector<uint8_t>& frozen);

struct Estimate {
    double value = 0;
    double stderror = 0;
    int64_t samples = 0;
};

// Online batch-means accumulator for chain averages.
class BatchMeans {
public:
    explicit BatchMeans(int64_t batch = 64) : batch_(batch) {}
    void add(double x);
    Estimate estimate() const;

private:
    int64_t batch_;
    int64_t count_ = 0;
    double cur_sum_ = 0;
    int64_t cur_n_ = 0;
    std::vector<double> batch_means_;
};

// theta proxy: frequency of sigma(center) == j minus 1/q
class OrderParameterEstimator {
public:
    OrderParameterEstimator(const Lattice& lat, int q, int j)
        : center_(lat.center_site()), q_(q), j_(j) {}
    void add(const SpinConfig& sigma) { acc_.add(sigma[center_] == j_ ? 1.0 : 0.0); }
    Estimate estimate() const;

private:
    int64_t center_;
    int q_;
    int j_;
    BatchMeans acc_;
};

// finite-n proxy for theta*: center site connects to the boundary layer
class PercolationEstimator {
public:
    explicit PercolationEstimator(const Lattice& lat);
    void add(const Lattice& lat, const BondConfig& eta);
    Estimate estimate() const { return acc_.estimate(); }

private:
    int64_t center_;
    std::vector<int64_t> boundary_;
    BatchMeans acc_;
};

struct SlabProbeResult {
    double min_frequency = 0;
    int64_t site_a = -1;
    int64_t site_b = -1;
    int64_t samples = 0;
};

// minimum pairwise connection frequency over sampled pairs in the central
// region of the slab; pair selection is seeded when the pair count is large
SlabProbeResult slab_lro_probe(const Lattice& slab, const std::vector<BondConfig>& samples,
                               double alpha, uint64_t pair_seed,
                               int64_t max_pairs = 1000000);

struct DiameterTail {
    std::vector<int64_t> histogram; // index = diameter, value = count
    std::optional<double> slope; // fit of log-frequency vs diameter
    std::optional<double> slope_ci_halfwidth; // 95% CI half-width
};

DiameterTail diameter_tail(const Lattice& lat, const std::vector<BondConfig>& samples,
                           CountingRule rule);

} // namespace pottslab
