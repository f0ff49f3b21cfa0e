#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "pottslab/clusters.hpp"
#include "pottslab/lattice.hpp"
#include "pottslab/rng.hpp"

namespace pottslab {

struct ModelParams {
    int q = 2;
    double beta = 1.0;

    double p() const { return 1.0 - std::exp(-beta); }

    void validate() const {
        if (q < 1) throw std::invalid_argument("q must be >= 1");
        if (beta < 0) throw std::invalid_argument("beta must be >= 0");
    }
};

// number of disagreeing nearest-neighbor pairs
int64_t hamiltonian(const Lattice& lat, const SpinConfig& sigma);

inline double log_gibbs_weight(const Lattice& lat, const SpinConfig& sigma, double beta) {
    return -beta * static_cast<double>(hamiltonian(lat, sigma));
}
inline double gibbs_weight(const Lattice& lat, const SpinConfig& sigma, double beta) {
    return std::exp(log_gibbs_weight(lat, sigma, beta));
}

// unnormalized random-cluster weight p^o (1-p)^c q^#; zero (log = -inf) when
// eta joins differently frozen boundary sites
double log_fk_weight(const Lattice& lat, const BondConfig& eta, const ModelParams& params,
                     const std::vector<uint8_t>& frozen);
double fk_weight(const Lattice& lat, const BondConfig& eta, const ModelParams& params,
                 const std::vector<uint8_t>& frozen);

// Exact distributions by full enumeration on desk-scale lattices. Spin states
// are indexed by base-q digits over the free (unfrozen) sites in site order,
// least significant digit first; bond states by edge-order bits.
struct ExactTables {
    std::vector<int64_t> free_sites;
    std::vector<double> potts; // size q^F, normalized
    std::vector<double> fk; // size 2^E, normalized; 0 at inadmissible eta
    std::vector<double> es_spin; // size q^F: spin marginal of the FK coloring
    double normalization_residual = 0;
};

ExactTables enumerate_exact(const Lattice& lat, const ModelParams& params,
                            const std::vector<uint8_t>& frozen, double budget_bits = 26);

int64_t encode_spin(const SpinConfig& sigma, const std::vector<int64_t>& free_sites, int q);
SpinConfig decode_spin(int64_t code, const std::vector<int64_t>& free_sites, int q,
                       int64_t num_sites, const std::vector<uint8_t>& frozen);

// resample sigma[site] from its conditional Gibbs law given the neighbors
void heat_bath_step(const Lattice& lat, SpinConfig& sigma, const ModelParams& params,
                    const std::vector<uint8_t>& frozen, int64_t site, RngStream& rng);

// one pass over all free sites in site order
void heat_bath_sweep(const Lattice& lat, SpinConfig& sigma, const ModelParams& params,
                     const std::vector<uint8_t>& frozen, RngStream& rng);

// heat-bath step under a per-color external field: conditional weights get an
// extra factor exp(field[c]); field.size() == q+1, field[0] unused
void heat_bath_step_tilted(const Lattice& lat, SpinConfig& sigma, const ModelParams& params,
                           const std::vector<uint8_t>& frozen, const std::vector<double>& field,
                           int64_t site, RngStream& rng);
void heat_bath_sweep_tilted(const Lattice& lat, SpinConfig& sigma, const ModelParams& params,
                            const std::vector<uint8_t>& frozen,
                            const std::vector<double>& field, RngStream& rng);

// initial configuration respecting frozen sites; free sites uniform
SpinConfig random_spins(const Lattice& lat, int q, const std::vector<uint8_t>& frozen,
                        RngStream& rng);
SpinConfig constant_spins(const Lattice& lat, int color, const std::vector<uint8_t>& frozen);

} // namespace pottslab
