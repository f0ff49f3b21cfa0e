#include "pottslab/gibbs.hpp"

#include <algorithm>
#include <limits>

namespace pottslab {

int64_t hamiltonian(const Lattice& lat, const SpinConfig& sigma) {
    int64_t h = 0;
    for (const Edge& e : lat.edges())
        if (sigma[e.a] != sigma[e.b]) ++h;
    return h;
}

double log_fk_weight(const Lattice& lat, const BondConfig& eta, const ModelParams& params,
                     const std::vector<uint8_t>& frozen) {
    params.validate();
    if (violates_admissibility(lat, eta, frozen))
        return -std::numeric_limits<double>::infinity();
    int64_t open = 0;
    for (uint8_t b : eta)
        if (b) ++open;
    int64_t closed = static_cast<int64_t>(eta.size()) - open;
    double p = params.p();
    double lw = 0;
    if (open > 0) {
        if (p == 0) return -std::numeric_limits<double>::infinity();
        lw += open * std::log(p);
    }
    if (closed > 0) lw += closed * std::log1p(-p);
    ClusterLabeling lab = clusters(lat, eta, CountingRule::from_frozen(frozen));
    lw += lab.count * std::log(static_cast<double>(params.q));
    return lw;
}

double fk_weight(const Lattice& lat, const BondConfig& eta, const ModelParams& params,
                 const std::vector<uint8_t>& frozen) {
    return std::exp(log_fk_weight(lat, eta, params, frozen));
}

int64_t encode_spin(const SpinConfig& sigma, const std::vector<int64_t>& free_sites, int q) {
    int64_t code = 0;
    for (size_t i = free_sites.size(); i-- > 0;)
        code = code * q + (sigma[free_sites[i]] - 1);
    return code;
}

SpinConfig decode_spin(int64_t code, const std::vector<int64_t>& free_sites, int q,
                       int64_t num_sites, const std::vector<uint8_t>& frozen) {
    SpinConfig sigma(num_sites, 1);
    for (int64_t s = 0; s < num_sites; ++s)
        if (frozen[s] > 0) sigma[s] = frozen[s];
    for (int64_t fs : free_sites) {
        sigma[fs] = static_cast<uint8_t>(code % q + 1);
        code /= q;
    }
    return sigma;
}

ExactTables enumerate_exact(const Lattice& lat, const ModelParams& params,
                            const std::vector<uint8_t>& frozen, double budget_bits) {
    params.validate();
    ExactTables t;
    for (int64_t s = 0; s < lat.num_sites(); ++s)
        if (frozen[s] == 0) t.free_sites.push_back(s);
    int64_t F = static_cast<int64_t>(t.free_sites.size());
    int64_t E = lat.num_edges();
    double bits = F * std::log2(static_cast<double>(params.q)) + static_cast<double>(E);
    if (bits > budget_bits)
        throw SizingError("enumerate_exact state space exceeds budget (" +
                          std::to_string(bits) + " bits)");

    int q = params.q;
    int64_t nspin = 1;
    for (int64_t i = 0; i < F; ++i) nspin *= q;
    int64_t nbond = int64_t(1) << E;

    // exact Potts table
    t.potts.assign(nspin, 0.0);
    double beta = params.beta;
    double zp = 0;
    for (int64_t code = 0; code < nspin; ++code) {
        SpinConfig sigma = decode_spin(code, t.free_sites, q, lat.num_sites(), frozen);
        double w = std::exp(-beta * static_cast<double>(hamiltonian(lat, sigma)));
        t.potts[code] = w;
        zp += w;
    }
    for (double& w : t.potts) w /= zp;

    // exact FK table and the spin marginal of its coloring
    t.fk.assign(nbond, 0.0);
    t.es_spin.assign(nspin, 0.0);
    double zf = 0;
    BondConfig eta(E, 0);
    CountingRule rule = CountingRule::from_frozen(frozen);
    for (int64_t mask = 0; mask < nbond; ++mask) {
        for (int64_t e = 0; e < E; ++e) eta[e] = (mask >> e) & 1;
        double w = fk_weight(lat, eta, params, frozen);
        t.fk[mask] = w;
        zf += w;
    }
    for (double& w : t.fk) w /= zf;

    for (int64_t mask = 0; mask < nbond; ++mask) {
        if (t.fk[mask] == 0) continue;
        for (int64_t e = 0; e < E; ++e) eta[e] = (mask >> e) & 1;
        ClusterLabeling lab = clusters(lat, eta, rule);
        // clusters holding frozen sites are colored deterministically
        std::vector<int> fixed_color(lab.count, 0);
        std::vector<int32_t> free_clusters;
        for (int32_t c = 0; c < lab.count; ++c) {
            if (lab.stats[c].touches_part != 0) {
                for (int col = 1; col <= q; ++col)
                    if (lab.stats[c].touches_part & (1u << col)) fixed_color[c] = col;
            } else {
                free_clusters.push_back(c);
            }
        }
        int64_t ncolorings = 1;
        for (size_t i = 0; i < free_clusters.size(); ++i) ncolorings *= q;
        double per = t.fk[mask] / static_cast<double>(ncolorings);
        SpinConfig sigma(lat.num_sites(), 1);
        for (int64_t cc = 0; cc < ncolorings; ++cc) {
            int64_t rem = cc;
            std::vector<int> color(lab.count);
            for (int32_t c = 0; c < lab.count; ++c) color[c] = fixed_color[c];
            for (int32_t fc : free_clusters) {
                color[fc] = static_cast<int>(rem % q) + 1;
                rem /= q;
            }
            for (int64_t s = 0; s < lat.num_sites(); ++s)
                sigma[s] = static_cast<uint8_t>(color[lab.id[s]]);
            t.es_spin[encode_spin(sigma, t.free_sites, q)] += per;
        }
    }

    double sum_p = 0, sum_f = 0, sum_e = 0;
    for (double w : t.potts) sum_p += w;
    for (double w : t.fk) sum_f += w;
    for (double w : t.es_spin) sum_e += w;
    t.normalization_residual =
        std::max({std::abs(sum_p - 1), std::abs(sum_f - 1), std::abs(sum_e - 1)});
    return t;
}

void heat_bath_step(const Lattice& lat, SpinConfig& sigma, const ModelParams& params,
                    const std::vector<uint8_t>& frozen, int64_t site, RngStream& rng) {
    heat_bath_step_tilted(lat, sigma, params, frozen, {}, site, rng);
}

void heat_bath_step_tilted(const Lattice& lat, SpinConfig& sigma, const ModelParams& params,
                           const std::vector<uint8_t>& frozen, const std::vector<double>& field,
                           int64_t site, RngStream& rng) {
    if (frozen[site] > 0) throw std::invalid_argument("heat-bath step on a frozen site");
    int q = params.q;
    std::vector<double> logw(q, 0.0);
    for (int a = 0; a < lat.d(); ++a) {
        for (int dir : {-1, 1}) {
            int64_t nb = lat.neighbor(site, a, dir);
            if (nb >= 0) logw[sigma[nb] - 1] += params.beta; // agreement lowers H by 1
        }
    }
    if (!field.empty())
        for (int c = 0; c < q; ++c) logw[c] += field[c + 1];
    double mx = *std::max_element(logw.begin(), logw.end());
    double z = 0;
    for (double& w : logw) {
        w = std::exp(w - mx);
        z += w;
    }
    double u = rng.next_double() * z;
    int pick = q - 1;
    double acc = 0;
    for (int c = 0; c < q; ++c) {
        acc += logw[c];
        if (u < acc) {
            pick = c;
            break;
        }
    }
    sigma[site] = static_cast<uint8_t>(pick + 1);
}

void heat_bath_sweep(const Lattice& lat, SpinConfig& sigma, const ModelParams& params,
                     const std::vector<uint8_t>& frozen, RngStream& rng) {
    for (int64_t s = 0; s < lat.num_sites(); ++s)
        if (frozen[s] == 0) heat_bath_step(lat, sigma, params, frozen, s, rng);
}

void heat_bath_sweep_tilted(const Lattice& lat, SpinConfig& sigma, const ModelParams& params,
                            const std::vector<uint8_t>& frozen,
                            const std::vector<double>& field, RngStream& rng) {
    for (int64_t s = 0; s < lat.num_sites(); ++s)
        if (frozen[s] == 0) heat_bath_step_tilted(lat, sigma, params, frozen, field, s, rng);
}

SpinConfig random_spins(const Lattice& lat, int q, const std::vector<uint8_t>& frozen,
                        RngStream& rng) {
    SpinConfig sigma(lat.num_sites());
    for (int64_t s = 0; s < lat.num_sites(); ++s)
        sigma[s] = frozen[s] > 0 ? frozen[s]
                                 : static_cast<uint8_t>(rng.next_below(q) + 1);
    return sigma;
}

SpinConfig constant_spins(const Lattice& lat, int color, const std::vector<uint8_t>& frozen) {
    SpinConfig sigma(lat.num_sites(), static_cast<uint8_t>(color));
    for (int64_t s = 0; s < lat.num_sites(); ++s)
        if (frozen[s] > 0) sigma[s] = frozen[s];
    return sigma;
}

} // namespace pottslab
