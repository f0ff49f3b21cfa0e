#pragma once

#include <cstdint>
#include <vector>

#include "pottslab/clusters.hpp"
#include "pottslab/lattice.hpp"
#include "pottslab/tau.hpp"

namespace pottslab {

// intermediate length scale f(n) = ceil(n^{1/(2(d-1))})
int intermediate_scale(int n, int d);

// Mesoscopic block tiling of the unit cube. Block b along an axis covers the
// half-open continuum interval (b f/n, (b+1) f/n]; the last block absorbs the
// remainder when f does not divide n.
struct BlockGrid {
    int d = 3;
    int n = 8;
    int f = 2;
    std::vector<int> blocks_per_axis;
    int64_t num_blocks = 0;

    static BlockGrid make(int d, int n, int f);

    std::vector<int> block_coords(int64_t b) const;
    int64_t block_index(const std::vector<int>& c) const;
    // bounds in lattice units along one axis
    int lo(int, int idx) const { return idx * f; }
    int hi(int axis, int idx) const {
        return idx == blocks_per_axis[axis] - 1 ? n : (idx + 1) * f;
    }
    double side(int axis, int idx) const {
        return static_cast<double>(hi(axis, idx) - lo(axis, idx)) / n;
    }
    double volume(int64_t b) const;
    // area of the face shared by block b and its +axis neighbor, or of the
    // outer face of b normal to axis
    double face_area(int64_t b, int axis) const;
    int64_t neighbor(int64_t b, int axis, int dir) const;

    bool operator==(const BlockGrid& o) const {
        return d == o.d && n == o.n && f == o.f;
    }
};

struct PhasePartition {
    BlockGrid grid;
    int q = 2;
    std::vector<uint8_t> label; // one of 0..q per block, 0 = indefinite

    double phase_volume(int phase) const;
};

// Reference densities of the pure phase j and the acceptance band epsilon.
struct TestEventSpec {
    int q = 2;
    double theta = 0.5;
    double epsilon = 0.05;

    static double default_epsilon(double theta) {
        return std::min(0.05, theta / 4);
    }

    void validate() const;
    // expected density of color i under pure phase j
    double reference_density(int j, int i) const;
};

// true iff every color density in the block is within epsilon of the phase-j
// reference density
bool test_event(const Lattice& lat, const std::vector<int64_t>& block_sites,
                const SpinConfig& sigma, int j, const TestEventSpec& spec);

PhasePartition empirical_phase_partition(const Lattice& lat, const SpinConfig& sigma,
                                         const TestEventSpec& spec, int f);

// vol(A delta B) for block sets over a common grid
double dist_l1(const BlockGrid& grid, const std::vector<uint8_t>& in_a,
               const std::vector<uint8_t>& in_b);

// sum of per-phase symmetric-difference volumes
double dist_p(const PhasePartition& a, const PhasePartition& b);

// total-interface face-count perimeter; overestimates tilted interfaces by up
// to a factor sqrt(d), exact for axis-aligned ones
double discrete_perimeter(const PhasePartition& p);
// faces touching one phase (each internal face contributes to two phases)
double discrete_perimeter_of_phase(const PhasePartition& p, int phase);

// tau-weighted interface area plus boundary-mismatch terms; +infinity when an
// indefinite (0) block exists
double surface_energy(const PhasePartition& p, const TauModel& tau,
                      const BoundarySpec& boundary);

} // namespace pottslab
