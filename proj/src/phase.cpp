#include "pottslab/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pottslab {

int intermediate_scale(int n, int d) {
    if (n < 2 || d < 2) throw std::invalid_argument("intermediate_scale needs n, d >= 2");
    double ex = 1.0 / (2.0 * (d - 1));
    int f = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), ex) - 1e-9));
    return std::max(1, f);
}

BlockGrid BlockGrid::make(int d, int n, int f) {
    if (f < 1 || f > n) throw std::invalid_argument("block side must satisfy 1 <= f <= n");
    BlockGrid g;
    g.d = d;
    g.n = n;
    g.f = f;
    g.blocks_per_axis.assign(d, std::max(1, n / f));
    g.num_blocks = 1;
    for (int a = 0; a < d; ++a) g.num_blocks *= g.blocks_per_axis[a];
    return g;
}

std::vector<int> BlockGrid::block_coords(int64_t b) const {
    std::vector<int> c(d);
    for (int a = d - 1; a >= 0; --a) {
        c[a] = static_cast<int>(b % blocks_per_axis[a]);
        b /= blocks_per_axis[a];
    }
    return c;
}

int64_t BlockGrid::block_index(const std::vector<int>& c) const {
    int64_t b = 0;
    for (int a = 0; a < d; ++a) b = b * blocks_per_axis[a] + c[a];
    return b;
}

double BlockGrid::volume(int64_t b) const {
    std::vector<int> c = block_coords(b);
    double v = 1;
    for (int a = 0; a < d; ++a) v *= side(a, c[a]);
    return v;
}

double BlockGrid::face_area(int64_t b, int axis) const {
    std::vector<int> c = block_coords(b);
    double area = 1;
    for (int a = 0; a < d; ++a)
        if (a != axis) area *= side(a, c[a]);
    return area;
}

int64_t BlockGrid::neighbor(int64_t b, int axis, int dir) const {
    std::vector<int> c = block_coords(b);
    c[axis] += dir;
    if (c[axis] < 0 || c[axis] >= blocks_per_axis[axis]) return -1;
    return block_index(c);
}

double PhasePartition::phase_volume(int phase) const {
    double v = 0;
    for (int64_t b = 0; b < grid.num_blocks; ++b)
        if (label[b] == phase) v += grid.volume(b);
    return v;
}

void TestEventSpec::validate() const {
    if (q < 2) throw std::invalid_argument("test events need q >= 2");
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    // exclusivity guard: with theta <= 2 epsilon the events can overlap
    if (!(theta > 2 * epsilon))
        throw std::invalid_argument("test events require theta > 2*epsilon");
}

double TestEventSpec::reference_density(int j, int i) const {
    if (i == j) return 1.0 / q + theta;
    return (1.0 - 1.0 / q - theta) / (q - 1);
}

bool test_event(const Lattice& lat, const std::vector<int64_t>& block_sites,
                const SpinConfig& sigma, int j, const TestEventSpec& spec) {
    (void)lat;
    if (block_sites.empty()) throw std::invalid_argument("empty block");
    std::vector<int64_t> counts(spec.q + 1, 0);
    for (int64_t s : block_sites) counts[sigma[s]]++;
    double total = static_cast<double>(block_sites.size());
    for (int i = 1; i <= spec.q; ++i) {
        double density = counts[i] / total;
        if (std::abs(density - spec.reference_density(j, i)) > spec.epsilon) return false;
    }
    return true;
}

PhasePartition empirical_phase_partition(const Lattice& lat, const SpinConfig& sigma,
                                         const TestEventSpec& spec, int f) {
    spec.validate();
    PhasePartition p;
    p.grid = BlockGrid::make(lat.d(), lat.n(), f);
    p.q = spec.q;
    p.label.assign(p.grid.num_blocks, 0);

    // bucket sites into blocks by the half-open convention
    std::vector<std::vector<int64_t>> sites(p.grid.num_blocks);
    for (int64_t s = 0; s < lat.num_sites(); ++s) {
        std::vector<int> c = lat.site_coords(s);
        std::vector<int> bc(lat.d());
        bool inside = true;
        for (int a = 0; a < lat.d(); ++a) {
            if (c[a] == 0) {
                inside = false; // coordinate 0 lies outside every half-open block
                break;
            }
            bc[a] = std::min((c[a] - 1) / f, p.grid.blocks_per_axis[a] - 1);
        }
        if (inside) sites[p.grid.block_index(bc)].push_back(s);
    }

    for (int64_t b = 0; b < p.grid.num_blocks; ++b) {
        for (int j = 1; j <= spec.q; ++j) {
            if (test_event(lat, sites[b], sigma, j, spec)) {
                p.label[b] = static_cast<uint8_t>(j); // unique by exclusivity
                break;
            }
        }
    }
    return p;
}

double dist_l1(const BlockGrid& grid, const std::vector<uint8_t>& in_a,
               const std::vector<uint8_t>& in_b) {
    if (in_a.size() != in_b.size() ||
        static_cast<int64_t>(in_a.size()) != grid.num_blocks)
        throw std::invalid_argument("block set / grid mismatch");
    double v = 0;
    for (int64_t b = 0; b < grid.num_blocks; ++b)
        if ((in_a[b] != 0) != (in_b[b] != 0)) v += grid.volume(b);
    return v;
}

double dist_p(const PhasePartition& a, const PhasePartition& b) {
    if (!(a.grid == b.grid) || a.q != b.q)
        throw std::invalid_argument("partition grid/q mismatch");
    double total = 0;
    std::vector<uint8_t> ia(a.grid.num_blocks), ib(b.grid.num_blocks);
    for (int phase = 0; phase <= a.q; ++phase) {
        for (int64_t k = 0; k < a.grid.num_blocks; ++k) {
            ia[k] = a.label[k] == phase;
            ib[k] = b.label[k] == phase;
        }
        total += dist_l1(a.grid, ia, ib);
    }
    return total;
}

double discrete_perimeter(const PhasePartition& p) {
    double total = 0;
    for (int64_t b = 0; b < p.grid.num_blocks; ++b) {
        for (int a = 0; a < p.grid.d; ++a) {
            int64_t nb = p.grid.neighbor(b, a, 1);
            if (nb >= 0 && p.label[b] != p.label[nb]) total += p.grid.face_area(b, a);
        }
    }
    return total;
}

double discrete_perimeter_of_phase(const PhasePartition& p, int phase) {
    double total = 0;
    for (int64_t b = 0; b < p.grid.num_blocks; ++b) {
        for (int a = 0; a < p.grid.d; ++a) {
            int64_t nb = p.grid.neighbor(b, a, 1);
            if (nb >= 0 && p.label[b] != p.label[nb] &&
                (p.label[b] == phase || p.label[nb] == phase))
                total += p.grid.face_area(b, a);
        }
    }
    return total;
}

double surface_energy(const PhasePartition& p, const TauModel& tau,
                      const BoundarySpec& boundary) {
    for (uint8_t l : p.label)
        if (l == 0) return std::numeric_limits<double>::infinity();

    double energy = 0;
    for (int64_t b = 0; b < p.grid.num_blocks; ++b) {
        std::vector<int> c = p.grid.block_coords(b);
        for (int a = 0; a < p.grid.d; ++a) {
            // internal interface, counted once per face
            int64_t nb = p.grid.neighbor(b, a, 1);
            if (nb >= 0 && p.label[b] != p.label[nb])
                energy += tau.at_axis(a) * p.grid.face_area(b, a);
            // boundary mismatch terms
            for (int side = 0; side < 2; ++side) {
                bool at_edge = (side == 0) ? c[a] == 0
                                           : c[a] == p.grid.blocks_per_axis[a] - 1;
                if (!at_edge) continue;
                int part = boundary.face_part[2 * a + side];
                if (part >= 1 && part != p.label[b])
                    energy += tau.at_axis(a) * p.grid.face_area(b, a);
            }
        }
    }
    return energy;
}

} // namespace pottslab
