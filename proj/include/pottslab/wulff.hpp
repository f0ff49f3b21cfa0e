#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pottslab/fk.hpp"
#include "pottslab/phase.hpp"
#include "pottslab/tau.hpp"

namespace pottslab {

// Rasterized Wulff crystal: intersection of the half-spaces x.nu <= tau(nu)
// over the sampled directions, on an m^d cell grid covering [-tau_max, tau_max]^d.
struct WulffShape {
    int d = 3;
    int m = 64;
    double half_width = 1.0;
    std::vector<uint8_t> inside; // m^d cells, lexicographic
    std::vector<std::vector<double>> directions;

    double cell_side() const { return 2 * half_width / m; }
    double volume() const;
    std::vector<double> cell_center(int64_t idx) const;
    // membership by the defining inequality over the stored directions
    bool contains(const std::vector<double>& x,
                  const TauModel& tau) const;
};

// K directions: all axis directions plus a deterministic low-discrepancy
// sphere sample (K >= 2d)
std::vector<std::vector<double>> sphere_directions(int d, int K);

WulffShape wulff_crystal(const TauModel& tau, int d, int m, int K);

enum class ReferenceKind { pyramids, flat_slab, corner_droplet, centered_droplet };

// Deterministic reference partitions on a block grid. Droplet kinds place a
// rescaled Wulff crystal of the given volume (phase 2 inside, 1 outside).
PhasePartition reference_partition(ReferenceKind kind, const BlockGrid& grid, int q,
                                   const TauModel& tau, double droplet_volume = 0);

struct AnnealSchedule {
    double t0 = -1; // <= 0: tau_max * (block face area) * 2d
    double cooling = 0.97;
    int sweeps_per_level = 50;
    double floor_ratio = 1e-3;

    void validate() const;
};

struct AnnealResult {
    PhasePartition best;
    double best_energy = 0;
    std::vector<double> trace; // running minimum per temperature level
    double max_audit_error = 0; // incremental vs recomputed energy
    int64_t moves = 0;
    int64_t accepted = 0;
};

// Simulated annealing over block labels: single-block relabels, or
// volume-preserving label swaps when conserve_volumes is set.
AnnealResult anneal_partition(const PhasePartition& init, const TauModel& tau,
                              const BoundarySpec& boundary, bool conserve_volumes,
                              const AnnealSchedule& schedule, RngStream& rng);

// v_i = theta^{-1} (s_i - (1-theta)/q), unit-volume container
std::vector<double> target_volumes(const std::vector<double>& thresholds, double theta, int q);

struct EnsembleSpec {
    int q = 2;
    std::vector<double> thresholds; // s_2..s_q (index 0 => color 2)
    double theta = 0.5;

    void validate() const;
};

struct ConditionCheck {
    bool satisfied = false;
    std::vector<double> fractions; // S_n(i) for i = 1..q
};

ConditionCheck ensemble_condition_check(const SpinConfig& sigma, const EnsembleSpec& spec);

enum class ConditioningMode { rejection, tilted };

struct DropletRunSpec {
    EnsembleSpec ensemble;
    ConditioningMode mode = ConditioningMode::rejection;
    int64_t sweeps = 2000;
    int64_t burnin = 500;
    int64_t thinning = 5;
    uint64_t seed = 0;
    double tilt = 0; // per-site field on color 2 in tilted mode
    double epsilon = 0.05; // test-event tolerance
};

struct DropletReport {
    int64_t samples = 0;
    int64_t accepted = 0;
    double acceptance_rate = 0;
    double mean_s2 = 0; // conditioned mean of S_n(2)
    double mean_s2_stderr = 0;
    double effective_samples = 0; // reweighted ESS in tilted mode
    double wulff_dist_l1 = -1; // -1 when no sample was accepted
    std::vector<double> wulff_offset;
    double minority_connected_fraction = 0;
};

DropletReport droplet_experiment(const Lattice& lat, const ModelParams& params,
                                 const TauModel& tau, const DropletRunSpec& spec);

} // namespace pottslab
