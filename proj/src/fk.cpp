#include "pottslab/fk.hpp"

namespace pottslab {

BondConfig es_bond_step(const Lattice& lat, const SpinConfig& sigma, double p, RngStream& rng) {
    if (p < 0 || p >= 1) throw std::invalid_argument("bond step needs 0 <= p < 1");
    const auto& edges = lat.edges();
    BondConfig eta(edges.size(), 0);
    for (size_t e = 0; e < edges.size(); ++e)
        if (sigma[edges[e].a] == sigma[edges[e].b] && rng.next_bernoulli(p)) eta[e] = 1;
    return eta;
}

SpinConfig es_color_step(const Lattice& lat, const BondConfig& eta,
                         const std::vector<uint8_t>& frozen, int q, RngStream& rng) {
    if (violates_admissibility(lat, eta, frozen))
        throw std::runtime_error("inadmissible bond configuration in color step");
    ClusterLabeling lab = clusters(lat, eta, CountingRule::from_frozen(frozen));
    std::vector<uint8_t> color(lab.count, 0);
    for (int32_t c = 0; c < lab.count; ++c) {
        if (lab.stats[c].touches_part != 0) {
            for (int col = 1; col <= q; ++col)
                if (lab.stats[c].touches_part & (1u << col))
                    color[c] = static_cast<uint8_t>(col);
        } else {
            color[c] = static_cast<uint8_t>(rng.next_below(q) + 1);
        }
    }
    SpinConfig sigma(lat.num_sites());
    for (int64_t s = 0; s < lat.num_sites(); ++s) sigma[s] = color[lab.id[s]];
    return sigma;
}

SpinConfig sw_sweep(const Lattice& lat, const SpinConfig& sigma, const ModelParams& params,
                    const std::vector<uint8_t>& frozen, RngStream& rng) {
    BondConfig eta = es_bond_step(lat, sigma, params.p(), rng);
    return es_color_step(lat, eta, frozen, params.q, rng);
}

FkDirectChain::FkDirectChain(const Lattice& lat, const ModelParams& params, FkBc bc)
    : lat_(lat), params_(params), bc_(bc), eta_(lat.num_edges(), 0),
      boundary_(lat.boundary_sites()), is_boundary_(lat.num_sites(), 0),
      visited_(lat.num_sites(), 0) {
    params_.validate();
    for (int64_t s : boundary_) is_boundary_[s] = 1;
}

bool FkDirectChain::connected_without(int64_t skip_edge) const {
    const Edge& probe = lat_.edges()[skip_edge];
    int64_t src = probe.a;
    int64_t dst = probe.b;
    bool wired = (bc_ == FkBc::wired);
    ++epoch_;
    queue_.clear();
    auto push = [&](int64_t s) {
        if (visited_[s] == epoch_) return;
        visited_[s] = epoch_;
        queue_.push_back(s);
    };
    push(src);
    bool src_wired_seen = wired && is_boundary_[src];
    for (size_t head = 0; head < queue_.size(); ++head) {
        int64_t s = queue_[head];
        if (s == dst) return true;
        if (wired && is_boundary_[s]) {
            // all boundary sites are one unit
            if (!src_wired_seen) {
                src_wired_seen = true;
                for (int64_t b : boundary_) push(b);
            }
        }
        for (int a = 0; a < lat_.d(); ++a) {
            int64_t ef = lat_.edge_at(s, a);
            if (ef >= 0 && ef != skip_edge && eta_[ef]) push(lat_.edges()[ef].b);
            int64_t prev = lat_.neighbor(s, a, -1);
            if (prev >= 0) {
                int64_t eb = lat_.edge_at(prev, a);
                if (eb >= 0 && eb != skip_edge && eta_[eb]) push(prev);
            }
        }
    }
    return false;
}

void FkDirectChain::sweep(RngStream& rng) {
    double p = params_.p();
    double q = static_cast<double>(params_.q);
    for (int64_t e = 0; e < lat_.num_edges(); ++e) {
        // conditional law of a single bond given the rest
        double open_prob = connected_without(e) ? p : p / (p + (1 - p) * q);
        eta_[e] = rng.next_bernoulli(open_prob) ? 1 : 0;
    }
}

void sample_chain(const Lattice& lat, const ModelParams& params,
                  const std::vector<uint8_t>& frozen, const RunSpec& spec,
                  const std::function<void(const ChainSample&)>& emit) {
    if (spec.sweeps < 0 || spec.thinning < 1 || spec.replicas < 1)
        throw std::invalid_argument("invalid run spec");
    int64_t burnin = spec.effective_burnin(lat.n());
    for (int rep = 0; rep < spec.replicas; ++rep) {
        RngStream rng(spec.seed, static_cast<uint64_t>(rep));
        SpinConfig sigma = random_spins(lat, params.q, frozen, rng);
        for (int64_t sweep = 0; sweep < burnin; ++sweep)
            sigma = sw_sweep(lat, sigma, params, frozen, rng);
        for (int64_t sweep = 1; sweep <= spec.sweeps; ++sweep) {
            BondConfig eta = es_bond_step(lat, sigma, params.p(), rng);
            sigma = es_color_step(lat, eta, frozen, params.q, rng);
            if (sweep % spec.thinning == 0)
                emit(ChainSample{rep, sweep, sigma, eta});
        }
    }
}

} // namespace pottslab
