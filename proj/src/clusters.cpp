#include "pottslab/clusters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pottslab/rng.hpp"

namespace pottslab {

namespace {

class UnionFind {
public:
    explicit UnionFind(int64_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), int64_t(0));
    }
    int64_t find(int64_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int64_t a, int64_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<int64_t> parent_;
};

UnionFind build_uf(const Lattice& lat, const BondConfig& eta, CountingRule rule) {
    UnionFind uf(lat.num_sites());
    if (rule.wired) {
        int64_t first = -1;
        for (int64_t s : lat.boundary_sites()) {
            if (first < 0) first = s;
            else uf.unite(first, s);
        }
    } else if (rule.frozen) {
        // pre-merge same-colored boundary parts
        std::vector<int64_t> rep(256, -1);
        for (int64_t s = 0; s < lat.num_sites(); ++s) {
            uint8_t c = (*rule.frozen)[s];
            if (c == 0) continue;
            if (rep[c] < 0) rep[c] = s;
            else uf.unite(rep[c], s);
        }
    }
    const auto& edges = lat.edges();
    for (size_t e = 0; e < edges.size(); ++e)
        if (eta[e]) uf.unite(edges[e].a, edges[e].b);
    return uf;
}

} // namespace

ClusterLabeling clusters(const Lattice& lat, const BondConfig& eta, CountingRule rule) {
    UnionFind uf = build_uf(lat, eta, rule);

    ClusterLabeling out;
    out.id.assign(lat.num_sites(), -1);
    std::vector<int32_t> root_id(lat.num_sites(), -1);
    int d = lat.d();
    std::vector<std::vector<int>> lo, hi;
    for (int64_t s = 0; s < lat.num_sites(); ++s) {
        int64_t r = uf.find(s);
        if (root_id[r] < 0) {
            root_id[r] = out.count++;
            out.stats.push_back({});
            lo.push_back(std::vector<int>(d, INT32_MAX));
            hi.push_back(std::vector<int>(d, INT32_MIN));
        }
        int32_t cid = root_id[r];
        out.id[s] = cid;
        ClusterStats& st = out.stats[cid];
        st.size++;
        std::vector<int> c = lat.site_coords(s);
        for (int a = 0; a < d; ++a) {
            lo[cid][a] = std::min(lo[cid][a], c[a]);
            hi[cid][a] = std::max(hi[cid][a], c[a]);
        }
        if (rule.frozen && (*rule.frozen)[s] > 0)
            out.stats[cid].touches_part |= (1u << (*rule.frozen)[s]);
    }
    for (int32_t cid = 0; cid < out.count; ++cid) {
        ClusterStats& st = out.stats[cid];
        for (int a = 0; a < d; ++a) {
            st.diameter = std::max(st.diameter, hi[cid][a] - lo[cid][a]);
            if (lo[cid][a] == 0 && hi[cid][a] == lat.extent()[a]) st.crossing = true;
        }
    }
    return out;
}

bool violates_admissibility(const Lattice& lat, const BondConfig& eta,
                            const std::vector<uint8_t>& frozen) {
    // plain connectivity (no boundary identification), then check colors
    UnionFind uf(lat.num_sites());
    const auto& edges = lat.edges();
    for (size_t e = 0; e < edges.size(); ++e)
        if (eta[e]) uf.unite(edges[e].a, edges[e].b);
    std::vector<uint8_t> color_of_root(lat.num_sites(), 0);
    for (int64_t s = 0; s < lat.num_sites(); ++s) {
        if (frozen[s] == 0) continue;
        int64_t r = uf.find(s);
        if (color_of_root[r] == 0) color_of_root[r] = frozen[s];
        else if (color_of_root[r] != frozen[s]) return true;
    }
    return false;
}

void BatchMeans::add(double x) {
    count_++;
    cur_sum_ += x;
    cur_n_++;
    if (cur_n_ == batch_) {
        batch_means_.push_back(cur_sum_ / batch_);
        cur_sum_ = 0;
        cur_n_ = 0;
    }
}

Estimate BatchMeans::estimate() const {
    if (count_ == 0) throw std::runtime_error("empty sample stream");
    // fall back to per-sample means if fewer than two full batches exist
    std::vector<double> means = batch_means_;
    if (means.size() < 2 && cur_n_ > 0) means.push_back(cur_sum_ / cur_n_);
    double total_sum = cur_sum_;
    for (double m : batch_means_) total_sum += m * batch_;
    Estimate e;
    e.samples = count_;
    e.value = total_sum / count_;
    if (means.size() >= 2) {
        double mu = 0;
        for (double m : means) mu += m;
        mu /= means.size();
        double var = 0;
        for (double m : means) var += (m - mu) * (m - mu);
        var /= (means.size() - 1);
        e.stderror = std::sqrt(var / means.size());
    } else {
        e.stderror = 0.5; // uninformative
    }
    return e;
}

Estimate OrderParameterEstimator::estimate() const {
    Estimate e = acc_.estimate();
    e.value -= 1.0 / q_;
    return e;
}

PercolationEstimator::PercolationEstimator(const Lattice& lat)
    : center_(lat.center_site()), boundary_(lat.boundary_sites()) {}

void PercolationEstimator::add(const Lattice& lat, const BondConfig& eta) {
    ClusterLabeling lab = clusters(lat, eta, CountingRule::free_rule());
    int32_t cid = lab.id[center_];
    bool connected = false;
    for (int64_t b : boundary_) {
        if (lab.id[b] == cid) {
            connected = true;
            break;
        }
    }
    acc_.add(connected ? 1.0 : 0.0);
}

SlabProbeResult slab_lro_probe(const Lattice& slab, const std::vector<BondConfig>& samples,
                               double alpha, uint64_t pair_seed, int64_t max_pairs) {
    if (samples.empty()) throw std::runtime_error("empty sample stream");
    // central region: shrink the extended axes (all but axis 0) by alpha
    std::vector<int64_t> central;
    for (int64_t s = 0; s < slab.num_sites(); ++s) {
        std::vector<int> c = slab.site_coords(s);
        bool in = true;
        for (int a = 1; a < slab.d(); ++a) {
            double m = slab.extent()[a] / 2.0;
            if (std::abs(c[a] - m) > alpha * m) in = false;
        }
        if (in) central.push_back(s);
    }
    int64_t npairs = static_cast<int64_t>(central.size()) * (central.size() - 1) / 2;
    std::vector<std::pair<int64_t, int64_t>> pairs;
    if (npairs <= max_pairs) {
        for (size_t i = 0; i < central.size(); ++i)
            for (size_t j = i + 1; j < central.size(); ++j)
                pairs.emplace_back(central[i], central[j]);
    } else {
        RngStream rng(pair_seed, 0);
        for (int64_t k = 0; k < max_pairs; ++k) {
            int64_t i = static_cast<int64_t>(rng.next_below(central.size()));
            int64_t j = static_cast<int64_t>(rng.next_below(central.size()));
            if (i == j) {
                --k;
                continue;
            }
            pairs.emplace_back(central[i], central[j]);
        }
    }

    std::vector<int64_t> hits(pairs.size(), 0);
    for (const BondConfig& eta : samples) {
        ClusterLabeling lab = clusters(slab, eta, CountingRule::free_rule());
        for (size_t k = 0; k < pairs.size(); ++k)
            if (lab.id[pairs[k].first] == lab.id[pairs[k].second]) hits[k]++;
    }
    SlabProbeResult res;
    res.samples = static_cast<int64_t>(samples.size());
    res.min_frequency = 2.0;
    for (size_t k = 0; k < pairs.size(); ++k) {
        double f = static_cast<double>(hits[k]) / samples.size();
        if (f < res.min_frequency) {
            res.min_frequency = f;
            res.site_a = pairs[k].first;
            res.site_b = pairs[k].second;
        }
    }
    if (pairs.empty()) res.min_frequency = 1.0;
    return res;
}

DiameterTail diameter_tail(const Lattice& lat, const std::vector<BondConfig>& samples,
                           CountingRule rule) {
    DiameterTail out;
    for (const BondConfig& eta : samples) {
        ClusterLabeling lab = clusters(lat, eta, rule);
        int32_t largest = 0;
        for (int32_t c = 1; c < lab.count; ++c)
            if (lab.stats[c].size > lab.stats[largest].size) largest = c;
        for (int32_t c = 0; c < lab.count; ++c) {
            if (c == largest && lab.count > 1) continue;
            if (lab.count == 1) continue; // all-open: no non-largest clusters
            int diam = lab.stats[c].diameter;
            if (static_cast<int>(out.histogram.size()) <= diam)
                out.histogram.resize(diam + 1, 0);
            out.histogram[diam]++;
        }
    }
    // least-squares fit of log count vs diameter over occupied bins
    std::vector<double> xs, ys;
    for (size_t dm = 0; dm < out.histogram.size(); ++dm)
        if (out.histogram[dm] > 0) {
            xs.push_back(static_cast<double>(dm));
            ys.push_back(std::log(static_cast<double>(out.histogram[dm])));
        }
    if (xs.size() >= 3) {
        double n = static_cast<double>(xs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        double denom = n * sxx - sx * sx;
        if (denom > 0) {
            double slope = (n * sxy - sx * sy) / denom;
            double intercept = (sy - slope * sx) / n;
            double sse = 0;
            for (size_t i = 0; i < xs.size(); ++i) {
                double r = ys[i] - (intercept + slope * xs[i]);
                sse += r * r;
            }
            double se = std::sqrt(sse / (n - 2) * n / denom);
            out.slope = slope;
            out.slope_ci_halfwidth = 1.96 * se;
        }
    }
    return out;
}

} // namespace pottslab
