#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pottslab {

struct SizingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Edge {
    int32_t a;
    int32_t b;
    int8_t axis;
};

// Finite box of the rescaled lattice Z^d/n. Sites carry integer coordinates
// 0..extent[axis] per axis; the continuum position of a site is coord/n.
// Site order is lexicographic with the last axis varying fastest; edges are
// enumerated by (site, axis).
class Lattice {
public:
    static Lattice box(int d, int n, int64_t site_budget = default_site_budget);
    static Lattice rect(const std::vector<int>& extent, int n,
                        int64_t site_budget = default_site_budget);

    static constexpr int64_t default_site_budget = int64_t(1) << 26;

    int d() const { return d_; }
    int n() const { return n_; }
    const std::vector<int>& extent() const { return extent_; }
    int64_t num_sites() const { return num_sites_; }
    int64_t num_edges() const { return static_cast<int64_t>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::vector<int> site_coords(int64_t s) const;
    int64_t site_index(const std::vector<int>& c) const;

    // -1 if the neighbor in direction (axis, +/-1) is outside the box
    int64_t neighbor(int64_t s, int axis, int dir) const;

    // edge id for the edge from site s in +axis direction, -1 if absent
    int64_t edge_at(int64_t s, int axis) const { return edge_of_[s * d_ + axis]; }

    bool is_boundary(int64_t s) const;
    std::vector<int64_t> boundary_sites() const;

    // half-open box Lambda(x, r) \cap Omega_n: sites with
    // -r/2 < coord/n - x[a] <= r/2 in every axis
    std::vector<int64_t> box_at(const std::vector<double>& x, double r) const;

    int64_t center_site() const;

private:
    int d_ = 0;
    int n_ = 1;
    std::vector<int> extent_;
    int64_t num_sites_ = 0;
    std::vector<int64_t> stride_;
    std::vector<Edge> edges_;
    std::vector<int64_t> edge_of_; // (site, axis) -> edge id or -1
};

// Continuum partition (Gamma^0..Gamma^q) of the cube boundary, given as an
// assignment of the 2d cube faces to part indices. Face id = 2*axis + side
// with side 0 the low face, 1 the high face. Unassigned faces belong to
// part 0 (free).
struct BoundarySpec {
    int d = 3;
    int q = 2;
    std::vector<int> face_part; // size 2d, values in {0..q}

    static BoundarySpec free_bc(int d, int q);
    static BoundarySpec uniform(int d, int q, int color);
    // top face (axis d-1, high side) -> 1, bottom -> 2, lateral -> 0
    static BoundarySpec top_bottom(int d, int q);
    // face f -> color f+1; requires q >= 2d
    static BoundarySpec per_face(int d, int q);

    void validate() const;
    // d_inf distance from continuum point x on the cube to part i
    // (infinity when the part is empty)
    double dist_to_part(const std::vector<double>& x, int part) const;
};

// Frozen color per site: 0 for free/interior sites, i>=1 for sites
// conditioned to color i. Deterministic in (spec, n).
std::vector<uint8_t> discretize_boundary(const BoundarySpec& spec, const Lattice& lat);

} // namespace pottslab
