#include "pottslab/tau.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pottslab {

TauModel TauModel::isotropic(double c) {
    if (c <= 0) throw std::invalid_argument("surface tension must be positive");
    TauModel t;
    t.kind_ = Kind::isotropic;
    t.c_ = c;
    t.tau_min_ = t.tau_max_ = c;
    return t;
}

TauModel TauModel::axis(std::vector<double> weights) {
    TauModel t;
    t.kind_ = Kind::axis;
    for (double w : weights)
        if (w <= 0) throw std::invalid_argument("surface tension must be positive");
    double sq = 0;
    for (double w : weights) sq += w * w;
    t.tau_min_ = *std::min_element(weights.begin(), weights.end());
    t.tau_max_ = std::sqrt(sq);
    t.weights_ = std::move(weights);
    return t;
}

TauModel TauModel::tabulated(std::vector<std::pair<std::vector<double>, double>> entries) {
    if (entries.empty()) throw std::invalid_argument("empty tau table");
    TauModel t;
    t.kind_ = Kind::tabulated;
    t.tau_min_ = entries.front().second;
    t.tau_max_ = entries.front().second;
    for (auto& [dir, v] : entries) {
        if (v <= 0) throw std::invalid_argument("surface tension must be positive");
        double norm = 0;
        for (double x : dir) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0) throw std::invalid_argument("zero direction in tau table");
        for (double& x : dir) x /= norm;
        t.tau_min_ = std::min(t.tau_min_, v);
        t.tau_max_ = std::max(t.tau_max_, v);
    }
    t.table_ = std::move(entries);
    return t;
}

double TauModel::operator()(const std::vector<double>& nu) const {
    switch (kind_) {
    case Kind::isotropic:
        return c_;
    case Kind::axis: {
        if (nu.size() != weights_.size())
            throw std::invalid_argument("direction dimension mismatch");
        double v = 0;
        for (size_t a = 0; a < nu.size(); ++a) v += weights_[a] * std::abs(nu[a]);
        return v;
    }
    case Kind::tabulated: {
        double best = -1;
        double value = table_.front().second;
        for (const auto& [dir, v] : table_) {
            double dot = 0;
            for (size_t a = 0; a < nu.size(); ++a) dot += dir[a] * nu[a];
            dot = std::abs(dot); // +-nu symmetry
            if (dot > best) {
                best = dot;
                value = v;
            }
        }
        return value;
    }
    }
    return c_;
}

double TauModel::at_axis(int axis) const {
    if (kind_ == Kind::isotropic) return c_;
    if (kind_ == Kind::axis) return weights_.at(axis);
    std::vector<double> nu(table_.front().first.size(), 0.0);
    nu.at(axis) = 1.0;
    return (*this)(nu);
}

bool cut_event_indicator(const Lattice& lat, const BondConfig& eta, int axis,
                         int window_halfheight) {
    if (axis < 0 || axis >= lat.d()) throw std::invalid_argument("bad cut axis");
    int w = window_halfheight >= 0 ? window_halfheight : 2 * lat.d();
    int mid = lat.extent()[axis] / 2;
    int lo = std::max(0, mid - w);
    int hi = std::min(lat.extent()[axis], mid + w);
    if (lo >= hi) return false;

    auto coord = [&](int64_t s) { return lat.site_coords(s)[axis]; };

    // BFS from the lo layer through open edges with both ends in the window
    std::vector<uint8_t> visited(lat.num_sites(), 0);
    std::vector<int64_t> queue;
    for (int64_t s = 0; s < lat.num_sites(); ++s)
        if (coord(s) == lo) {
            visited[s] = 1;
            queue.push_back(s);
        }
    for (size_t head = 0; head < queue.size(); ++head) {
        int64_t s = queue[head];
        if (coord(s) == hi) return false; // crossing exists: no cut
        for (int a = 0; a < lat.d(); ++a) {
            for (int dir : {1, -1}) {
                int64_t nb = lat.neighbor(s, a, dir);
                if (nb < 0 || visited[nb]) continue;
                int64_t e = dir > 0 ? lat.edge_at(s, a) : lat.edge_at(nb, a);
                if (e < 0 || !eta[e]) continue;
                int c = lat.site_coords(nb)[axis];
                if (c < lo || c > hi) continue;
                visited[nb] = 1;
                queue.push_back(nb);
            }
        }
    }
    return true;
}

TauEstimate tau_estimate(const Lattice& lat, int axis,
                         const std::vector<BondConfig>& samples) {
    if (samples.empty()) throw std::runtime_error("tau_estimate needs samples");
    TauEstimate est;
    est.axis = axis;
    est.samples = static_cast<int64_t>(samples.size());
    int64_t hits = 0;
    for (const BondConfig& eta : samples)
        if (cut_event_indicator(lat, eta, axis)) ++hits;
    double freq = static_cast<double>(hits) / samples.size();
    est.cut_frequency = freq;
    double area = std::pow(static_cast<double>(lat.n()), lat.d() - 1);
    if (hits == 0) {
        est.censored = true;
        est.tau_hat = -std::log(1.0 / samples.size()) / area; // one-sided lower bound
        est.stderror = 0;
    } else {
        est.tau_hat = -std::log(freq) / area;
        // delta method for log of a binomial frequency
        double se_freq = std::sqrt(freq * (1 - freq) / samples.size());
        est.stderror = se_freq / freq / area;
    }
    est.tau_hat = std::max(0.0, est.tau_hat);
    return est;
}

} // namespace pottslab
