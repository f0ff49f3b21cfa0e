#include "pottslab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pottslab {

Lattice Lattice::box(int d, int n, int64_t site_budget) {
    if (d < 2) throw std::invalid_argument("lattice dimension must be >= 2");
    if (n < 1) throw std::invalid_argument("lattice resolution must be >= 1");
    return rect(std::vector<int>(d, n), n, site_budget);
}

Lattice Lattice::rect(const std::vector<int>& extent, int n, int64_t site_budget) {
    Lattice lat;
    lat.d_ = static_cast<int>(extent.size());
    lat.n_ = n;
    lat.extent_ = extent;
    if (lat.d_ < 1) throw std::invalid_argument("empty extent");
    for (int e : extent)
        if (e < 0) throw std::invalid_argument("extent must be >= 0 per axis");

    int64_t sites = 1;
    for (int e : extent) {
        sites *= (e + 1);
        if (sites > site_budget)
            throw SizingError("lattice exceeds site budget of " +
                              std::to_string(site_budget) + " sites");
    }
    lat.num_sites_ = sites;

    lat.stride_.assign(lat.d_, 1);
    for (int a = lat.d_ - 2; a >= 0; --a)
        lat.stride_[a] = lat.stride_[a + 1] * (extent[a + 1] + 1);

    lat.edge_of_.assign(sites * lat.d_, -1);
    std::vector<int> c(lat.d_, 0);
    for (int64_t s = 0; s < sites; ++s) {
        for (int a = 0; a < lat.d_; ++a) {
            if (c[a] < extent[a]) {
                lat.edge_of_[s * lat.d_ + a] = static_cast<int64_t>(lat.edges_.size());
                lat.edges_.push_back({static_cast<int32_t>(s),
                                      static_cast<int32_t>(s + lat.stride_[a]),
                                      static_cast<int8_t>(a)});
            }
        }
        // advance lexicographically, last axis fastest
        for (int a = lat.d_ - 1; a >= 0; --a) {
            if (++c[a] <= extent[a]) break;
            c[a] = 0;
        }
    }
    return lat;
}

std::vector<int> Lattice::site_coords(int64_t s) const {
    std::vector<int> c(d_);
    for (int a = 0; a < d_; ++a) {
        c[a] = static_cast<int>(s / stride_[a]);
        s %= stride_[a];
    }
    return c;
}

int64_t Lattice::site_index(const std::vector<int>& c) const {
    int64_t s = 0;
    for (int a = 0; a < d_; ++a) s += static_cast<int64_t>(c[a]) * stride_[a];
    return s;
}

int64_t Lattice::neighbor(int64_t s, int axis, int dir) const {
    int coord = static_cast<int>((s / stride_[axis]) % (extent_[axis] + 1));
    int nc = coord + dir;
    if (nc < 0 || nc > extent_[axis]) return -1;
    return s + static_cast<int64_t>(dir) * stride_[axis];
}

bool Lattice::is_boundary(int64_t s) const {
    for (int a = 0; a < d_; ++a) {
        int coord = static_cast<int>((s / stride_[a]) % (extent_[a] + 1));
        if (coord == 0 || coord == extent_[a]) return true;
    }
    return false;
}

std::vector<int64_t> Lattice::boundary_sites() const {
    std::vector<int64_t> out;
    for (int64_t s = 0; s < num_sites_; ++s)
        if (is_boundary(s)) out.push_back(s);
    return out;
}

std::vector<int64_t> Lattice::box_at(const std::vector<double>& x, double r) const {
    if (r <= 0) throw std::invalid_argument("box_at requires r > 0");
    std::vector<int64_t> out;
    for (int64_t s = 0; s < num_sites_; ++s) {
        std::vector<int> c = site_coords(s);
        bool in = true;
        for (int a = 0; a < d_ && in; ++a) {
            double y = static_cast<double>(c[a]) / n_;
            double diff = y - x[a];
            if (!(diff > -r / 2 && diff <= r / 2)) in = false;
        }
        if (in) out.push_back(s);
    }
    return out;
}

int64_t Lattice::center_site() const {
    std::vector<int> c(d_);
    for (int a = 0; a < d_; ++a) c[a] = extent_[a] / 2;
    return site_index(c);
}

BoundarySpec BoundarySpec::free_bc(int d, int q) {
    BoundarySpec s;
    s.d = d;
    s.q = q;
    s.face_part.assign(2 * d, 0);
    return s;
}

BoundarySpec BoundarySpec::uniform(int d, int q, int color) {
    BoundarySpec s = free_bc(d, q);
    std::fill(s.face_part.begin(), s.face_part.end(), color);
    s.validate();
    return s;
}

BoundarySpec BoundarySpec::top_bottom(int d, int q) {
    BoundarySpec s = free_bc(d, q);
    s.face_part[2 * (d - 1) + 1] = 1;
    s.face_part[2 * (d - 1) + 0] = 2;
    s.validate();
    return s;
}

BoundarySpec BoundarySpec::per_face(int d, int q) {
    BoundarySpec s = free_bc(d, q);
    if (q < 2 * d) throw std::invalid_argument("per_face boundary needs q >= 2d");
    for (int f = 0; f < 2 * d; ++f) s.face_part[f] = f + 1;
    s.validate();
    return s;
}

void BoundarySpec::validate() const {
    if (static_cast<int>(face_part.size()) != 2 * d)
        throw std::invalid_argument("boundary spec has wrong face count");
    for (int p : face_part)
        if (p < 0 || p > q) throw std::invalid_argument("face part index out of range");
}

double BoundarySpec::dist_to_part(const std::vector<double>& x, int part) const {
    double best = std::numeric_limits<double>::infinity();
    for (int f = 0; f < 2 * d; ++f) {
        if (face_part[f] != part) continue;
        int axis = f / 2;
        double side = (f % 2 == 0) ? 0.0 : 1.0;
        // x lies in the cube, so projecting onto the face only moves the
        // face-normal coordinate
        best = std::min(best, std::abs(x[axis] - side));
    }
    return best;
}

std::vector<uint8_t> discretize_boundary(const BoundarySpec& spec, const Lattice& lat) {
    spec.validate();
    if (spec.d != lat.d()) throw std::invalid_argument("boundary spec dimension mismatch");
    std::vector<uint8_t> frozen(lat.num_sites(), 0);
    double tol = 1.0 / lat.n();
    for (int64_t s : lat.boundary_sites()) {
        std::vector<int> c = lat.site_coords(s);
        std::vector<double> x(lat.d());
        for (int a = 0; a < lat.d(); ++a)
            x[a] = static_cast<double>(c[a]) / lat.n();
        // smallest i with d_inf(x, Gamma^i) < 1/n; part 0 is the fallback
        int assigned = 0;
        for (int i = 0; i <= spec.q; ++i) {
            if (spec.dist_to_part(x, i) < tol) {
                assigned = i;
                break;
            }
        }
        frozen[s] = static_cast<uint8_t>(assigned);
    }
    return frozen;
}

} // namespace pottslab
