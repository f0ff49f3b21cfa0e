#pragma once

#include <functional>

#include "pottslab/gibbs.hpp"

namespace pottslab {

// bond step of the Edwards-Sokal coupling: agreeing edges open w.p. p,
// disagreeing edges stay closed (admissibility holds by construction)
BondConfig es_bond_step(const Lattice& lat, const SpinConfig& sigma, double p, RngStream& rng);

// color step: clusters holding frozen boundary sites inherit the frozen
// color, every other cluster gets an independent uniform color
SpinConfig es_color_step(const Lattice& lat, const BondConfig& eta,
                         const std::vector<uint8_t>& frozen, int q, RngStream& rng);

// one Swendsen-Wang sweep; the Potts measure with the given b.c. is stationary
SpinConfig sw_sweep(const Lattice& lat, const SpinConfig& sigma, const ModelParams& params,
                    const std::vector<uint8_t>& frozen, RngStream& rng);

// Single-bond heat-bath dynamics for the random-cluster measure with free or
// wired boundary conditions (wired: the whole boundary is one counting unit).
class FkDirectChain {
public:
    FkDirectChain(const Lattice& lat, const ModelParams& params, FkBc bc);

    void sweep(RngStream& rng);
    const BondConfig& state() const { return eta_; }

private:
    bool connected_without(int64_t skip_edge) const;

    const Lattice& lat_;
    ModelParams params_;
    FkBc bc_;
    BondConfig eta_;
    std::vector<int64_t> boundary_;
    std::vector<uint8_t> is_boundary_;
    // scratch for the BFS
    mutable std::vector<int64_t> queue_;
    mutable std::vector<uint32_t> visited_;
    mutable uint32_t epoch_ = 0;
};

struct RunSpec {
    int64_t sweeps = 1000;
    int64_t burnin = -1; // -1 => max(1000, 20 n)
    int64_t thinning = 1;
    int replicas = 1;
    uint64_t seed = 0;

    int64_t effective_burnin(int n) const {
        return burnin >= 0 ? burnin : std::max<int64_t>(1000, 20 * n);
    }
};

struct ChainSample {
    int replica;
    int64_t sweep; // post-burn-in sweep index
    const SpinConfig& sigma;
    const BondConfig& eta;
};

// Runs `replicas` independent Swendsen-Wang chains (stream id = replica) and
// emits every thinning-th post-burn-in state. Bitwise reproducible in spec.
void sample_chain(const Lattice& lat, const ModelParams& params,
                  const std::vector<uint8_t>& frozen, const RunSpec& spec,
                  const std::function<void(const ChainSample&)>& emit);

} // namespace pottslab
