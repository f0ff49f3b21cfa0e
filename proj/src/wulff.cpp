#include "pottslab/wulff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pottslab {

namespace {
constexpr double pi = 3.14159265358979323846;
}

double WulffShape::volume() const {
    int64_t count = 0;
    for (uint8_t c : inside) count += c;
    return count * std::pow(cell_side(), d);
}

std::vector<double> WulffShape::cell_center(int64_t idx) const {
    std::vector<double> x(d);
    for (int a = d - 1; a >= 0; --a) {
        int64_t c = idx % m;
        idx /= m;
        x[a] = -half_width + (c + 0.5) * cell_side();
    }
    return x;
}

bool WulffShape::contains(const std::vector<double>& x, const TauModel& tau) const {
    for (const auto& nu : directions) {
        double dot = 0;
        for (int a = 0; a < d; ++a) dot += x[a] * nu[a];
        if (dot > tau(nu)) return false;
    }
    return true;
}

std::vector<std::vector<double>> sphere_directions(int d, int K) {
    if (K < 2 * d) throw std::invalid_argument("need at least 2d directions");
    std::vector<std::vector<double>> dirs;
    for (int a = 0; a < d; ++a) {
        for (int sgn : {1, -1}) {
            std::vector<double> nu(d, 0.0);
            nu[a] = sgn;
            dirs.push_back(nu);
        }
    }
    int extra = K - 2 * d;
    if (d == 2) {
        for (int k = 0; k < extra; ++k) {
            double th = 2 * pi * (k + 0.5) / extra;
            dirs.push_back({std::cos(th), std::sin(th)});
        }
    } else if (d == 3) {
        // Fibonacci sphere
        double golden = (1 + std::sqrt(5.0)) / 2;
        for (int k = 0; k < extra; ++k) {
            double z = 1 - 2.0 * (k + 0.5) / extra;
            double r = std::sqrt(std::max(0.0, 1 - z * z));
            double th = 2 * pi * k / golden;
            dirs.push_back({r * std::cos(th), r * std::sin(th), z});
        }
    } else {
        // seeded gaussian directions, deterministic
        RngStream rng(0x57554C46, static_cast<uint64_t>(d));
        for (int k = 0; k < extra; ++k) {
            std::vector<double> nu(d);
            double norm = 0;
            do {
                norm = 0;
                for (int a = 0; a < d; ++a) {
                    double u1 = rng.next_double();
                    double u2 = rng.next_double();
                    nu[a] = std::sqrt(-2 * std::log(u1 + 1e-300)) * std::cos(2 * pi * u2);
                    norm += nu[a] * nu[a];
                }
            } while (norm < 1e-12);
            norm = std::sqrt(norm);
            for (double& x : nu) x /= norm;
            dirs.push_back(nu);
        }
    }
    return dirs;
}

namespace {

WulffShape build_crystal(const TauModel& tau, int d, int m, int K) {
    if (m < 8) throw std::invalid_argument("raster resolution must be >= 8");
    WulffShape w;
    w.d = d;
    w.m = m;
    w.half_width = tau.tau_max();
    w.directions = sphere_directions(d, K);
    int64_t cells = 1;
    for (int a = 0; a < d; ++a) cells *= m;
    w.inside.assign(cells, 0);
    // precompute tau per direction
    std::vector<double> tv(w.directions.size());
    for (size_t i = 0; i < w.directions.size(); ++i) tv[i] = tau(w.directions[i]);
    std::vector<double> x(d);
    std::vector<int> c(d, 0);
    for (int64_t idx = 0; idx < cells; ++idx) {
        for (int a = 0; a < d; ++a)
            x[a] = -w.half_width + (c[a] + 0.5) * 2 * w.half_width / m;
        bool in = true;
        for (size_t i = 0; i < w.directions.size() && in; ++i) {
            double dot = 0;
            for (int a = 0; a < d; ++a) dot += x[a] * w.directions[i][a];
            if (dot > tv[i]) in = false;
        }
        w.inside[idx] = in;
        for (int a = d - 1; a >= 0; --a) {
            if (++c[a] < m) break;
            c[a] = 0;
        }
    }
    return w;
}

} // namespace

WulffShape wulff_crystal(const TauModel& tau, int d, int m, int K) {
    return build_crystal(tau, d, m, K);
}

PhasePartition reference_partition(ReferenceKind kind, const BlockGrid& grid, int q,
                                   const TauModel& tau, double droplet_volume) {
    PhasePartition p;
    p.grid = grid;
    p.q = q;
    p.label.assign(grid.num_blocks, 1);
    int d = grid.d;

    auto center = [&](int64_t b) {
        std::vector<int> c = grid.block_coords(b);
        std::vector<double> y(d);
        for (int a = 0; a < d; ++a)
            y[a] = 0.5 * (grid.lo(a, c[a]) + grid.hi(a, c[a])) / grid.n;
        return y;
    };

    switch (kind) {
    case ReferenceKind::pyramids: {
        if (q < 2 * d) throw std::invalid_argument("pyramids need q >= 2d");
        for (int64_t b = 0; b < grid.num_blocks; ++b) {
            std::vector<double> y = center(b);
            int best_face = 0;
            double best = 2.0;
            for (int f = 0; f < 2 * d; ++f) {
                double side = (f % 2 == 0) ? 0.0 : 1.0;
                double dist = std::abs(y[f / 2] - side);
                if (dist < best - 1e-12) {
                    best = dist;
                    best_face = f;
                }
            }
            p.label[b] = static_cast<uint8_t>(best_face + 1);
        }
        break;
    }
    case ReferenceKind::flat_slab: {
        for (int64_t b = 0; b < grid.num_blocks; ++b)
            p.label[b] = center(b)[d - 1] > 0.5 ? 1 : 2;
        break;
    }
    case ReferenceKind::corner_droplet:
    case ReferenceKind::centered_droplet: {
        if (q < 2) throw std::invalid_argument("droplet needs q >= 2");
        if (droplet_volume <= 0 || droplet_volume >= 1)
            throw std::invalid_argument("droplet volume must be in (0,1)");
        WulffShape w = build_crystal(tau, d, 64, 2 * d + 240);
        double vw = w.volume();
        bool corner = (kind == ReferenceKind::corner_droplet);
        // at a corner only the 1/2^d sector of the crystal lies in the cube
        double alpha = corner
                           ? std::pow(droplet_volume * std::pow(2.0, d) / vw, 1.0 / d)
                           : std::pow(droplet_volume / vw, 1.0 / d);
        double reach = alpha * tau.tau_max();
        if ((corner && reach > 1.0) || (!corner && reach > 0.5))
            throw std::invalid_argument("droplet does not fit in the container");
        std::vector<double> x0(d, corner ? 0.0 : 0.5);
        std::vector<double> rel(d);
        for (int64_t b = 0; b < grid.num_blocks; ++b) {
            std::vector<double> y = center(b);
            for (int a = 0; a < d; ++a) rel[a] = (y[a] - x0[a]) / alpha;
            p.label[b] = w.contains(rel, tau) ? 2 : 1;
        }
        break;
    }
    }
    return p;
}

void AnnealSchedule::validate() const {
    if (cooling <= 0 || cooling >= 1)
        throw std::invalid_argument("cooling factor must lie in (0,1)");
    if (sweeps_per_level < 1) throw std::invalid_argument("sweeps per level must be >= 1");
    if (floor_ratio <= 0 || floor_ratio >= 1)
        throw std::invalid_argument("temperature floor ratio must lie in (0,1)");
}

namespace {

double local_energy(const PhasePartition& p, const TauModel& tau,
                    const BoundarySpec& boundary, const std::vector<int64_t>& set) {
    auto in_set = [&](int64_t b) {
        return std::find(set.begin(), set.end(), b) != set.end();
    };
    double e = 0;
    for (int64_t b : set) {
        std::vector<int> c = p.grid.block_coords(b);
        for (int a = 0; a < p.grid.d; ++a) {
            int64_t up = p.grid.neighbor(b, a, 1);
            if (up >= 0 && p.label[b] != p.label[up])
                e += tau.at_axis(a) * p.grid.face_area(b, a);
            int64_t down = p.grid.neighbor(b, a, -1);
            if (down >= 0 && !in_set(down) && p.label[b] != p.label[down])
                e += tau.at_axis(a) * p.grid.face_area(down, a);
            for (int side = 0; side < 2; ++side) {
                bool at_edge = (side == 0) ? c[a] == 0
                                           : c[a] == p.grid.blocks_per_axis[a] - 1;
                if (!at_edge) continue;
                int part = boundary.face_part[2 * a + side];
                if (part >= 1 && part != p.label[b])
                    e += tau.at_axis(a) * p.grid.face_area(b, a);
            }
        }
    }
    return e;
}

} // namespace

AnnealResult anneal_partition(const PhasePartition& init, const TauModel& tau,
                              const BoundarySpec& boundary, bool conserve_volumes,
                              const AnnealSchedule& schedule, RngStream& rng) {
    schedule.validate();
    for (uint8_t l : init.label)
        if (l == 0) throw std::invalid_argument("annealer needs a fully labeled start");

    AnnealResult res;
    PhasePartition cur = init;
    double energy = surface_energy(cur, tau, boundary);
    res.best = cur;
    res.best_energy = energy;

    double face_area = cur.grid.face_area(0, 0);
    double t0 = schedule.t0 > 0 ? schedule.t0
                                : tau.tau_max() * face_area * 2 * cur.grid.d;
    double t_floor = schedule.floor_ratio * t0;
    int64_t nb = cur.grid.num_blocks;
    int64_t audit_interval = 10000;

    for (double t = t0; t >= t_floor; t *= schedule.cooling) {
        for (int sweep = 0; sweep < schedule.sweeps_per_level; ++sweep) {
            for (int64_t mv = 0; mv < nb; ++mv) {
                res.moves++;
                double delta;
                std::vector<int64_t> touched;
                std::vector<uint8_t> old_labels;
                if (!conserve_volumes) {
                    int64_t b = static_cast<int64_t>(rng.next_below(nb));
                    uint8_t nl =
                        static_cast<uint8_t>(rng.next_below(cur.q) + 1);
                    if (nl == cur.label[b]) continue;
                    touched = {b};
                    old_labels = {cur.label[b]};
                    double before = local_energy(cur, tau, boundary, touched);
                    cur.label[b] = nl;
                    delta = local_energy(cur, tau, boundary, touched) - before;
                } else {
                    int64_t b1 = static_cast<int64_t>(rng.next_below(nb));
                    int64_t b2 = static_cast<int64_t>(rng.next_below(nb));
                    if (cur.label[b1] == cur.label[b2]) continue;
                    touched = {b1, b2};
                    old_labels = {cur.label[b1], cur.label[b2]};
                    double before = local_energy(cur, tau, boundary, touched);
                    std::swap(cur.label[b1], cur.label[b2]);
                    delta = local_energy(cur, tau, boundary, touched) - before;
                }
                bool accept = delta <= 0 || rng.next_double() < std::exp(-delta / t);
                if (accept) {
                    energy += delta;
                    res.accepted++;
                    if (energy < res.best_energy) {
                        res.best_energy = energy;
                        res.best = cur;
                    }
                } else {
                    for (size_t i = 0; i < touched.size(); ++i)
                        cur.label[touched[i]] = old_labels[i];
                }
                if (res.moves % audit_interval == 0) {
                    double full = surface_energy(cur, tau, boundary);
                    res.max_audit_error =
                        std::max(res.max_audit_error, std::abs(full - energy));
                }
            }
        }
        res.trace.push_back(res.best_energy);
    }
    // final audit
    double full = surface_energy(cur, tau, boundary);
    res.max_audit_error = std::max(res.max_audit_error, std::abs(full - energy));
    return res;
}

std::vector<double> target_volumes(const std::vector<double>& thresholds, double theta,
                                   int q) {
    if (theta <= 0) throw std::invalid_argument("target volumes need theta > 0");
    std::vector<double> v;
    for (double s : thresholds) {
        if (s < (1 - theta) / q - 1e-12)
            throw std::invalid_argument("threshold below (1-theta)/q");
        v.push_back((s - (1 - theta) / q) / theta);
    }
    return v;
}

void EnsembleSpec::validate() const {
    if (q < 2) throw std::invalid_argument("ensemble needs q >= 2");
    if (static_cast<int>(thresholds.size()) != q - 1)
        throw std::invalid_argument("ensemble needs q-1 thresholds");
}

ConditionCheck ensemble_condition_check(const SpinConfig& sigma, const EnsembleSpec& spec) {
    spec.validate();
    ConditionCheck out;
    out.fractions.assign(spec.q, 0.0);
    for (uint8_t c : sigma) out.fractions[c - 1] += 1.0;
    for (double& f : out.fractions) f /= static_cast<double>(sigma.size());
    out.satisfied = true;
    for (int i = 2; i <= spec.q; ++i)
        if (out.fractions[i - 1] < spec.thresholds[i - 2]) out.satisfied = false;
    return out;
}

namespace {

bool minority_connected(const PhasePartition& p, int phase) {
    std::vector<int64_t> blocks;
    for (int64_t b = 0; b < p.grid.num_blocks; ++b)
        if (p.label[b] == phase) blocks.push_back(b);
    if (blocks.empty()) return true;
    std::vector<uint8_t> seen(p.grid.num_blocks, 0);
    std::vector<int64_t> queue{blocks[0]};
    seen[blocks[0]] = 1;
    size_t reached = 1;
    for (size_t h = 0; h < queue.size(); ++h) {
        for (int a = 0; a < p.grid.d; ++a) {
            for (int dir : {1, -1}) {
                int64_t nb = p.grid.neighbor(queue[h], a, dir);
                if (nb >= 0 && !seen[nb] && p.label[nb] == phase) {
                    seen[nb] = 1;
                    queue.push_back(nb);
                    reached++;
                }
            }
        }
    }
    return reached == blocks.size();
}

} // namespace

DropletReport droplet_experiment(const Lattice& lat, const ModelParams& params,
                                 const TauModel& tau, const DropletRunSpec& spec) {
    spec.ensemble.validate();
    params.validate();
    DropletReport rep;
    BoundarySpec bspec = BoundarySpec::uniform(lat.d(), params.q, 1);
    std::vector<uint8_t> frozen = discretize_boundary(bspec, lat);

    // order-parameter estimate from a short unconditioned pre-run
    double theta_hat;
    {
        RngStream rng(spec.seed, 0xFEED);
        SpinConfig sigma = constant_spins(lat, 1, frozen);
        for (int64_t s = 0; s < 200; ++s) sigma = sw_sweep(lat, sigma, params, frozen, rng);
        double s1 = 0;
        int64_t reps = 200;
        for (int64_t s = 0; s < reps; ++s) {
            sigma = sw_sweep(lat, sigma, params, frozen, rng);
            int64_t c1 = 0;
            for (uint8_t c : sigma)
                if (c == 1) ++c1;
            s1 += static_cast<double>(c1) / sigma.size();
        }
        theta_hat = s1 / reps - 1.0 / params.q;
    }
    bool partition_ok = theta_hat > 2 * spec.epsilon;

    int f = intermediate_scale(lat.n(), lat.d());
    BlockGrid grid = BlockGrid::make(lat.d(), lat.n(), f);
    std::vector<std::vector<int64_t>> label_votes(
        grid.num_blocks, std::vector<int64_t>(params.q + 1, 0));
    TestEventSpec tspec{params.q, theta_hat, spec.epsilon};

    double sum_w = 0, sum_w2 = 0, sum_ws2 = 0, sum_ws2sq = 0;
    int64_t connected_count = 0, partitioned = 0;

    auto absorb = [&](const SpinConfig& sigma, double log_w) {
        rep.samples++;
        ConditionCheck chk = ensemble_condition_check(sigma, spec.ensemble);
        if (!chk.satisfied) return;
        rep.accepted++;
        double w = std::exp(log_w);
        double s2 = chk.fractions[1];
        sum_w += w;
        sum_w2 += w * w;
        sum_ws2 += w * s2;
        sum_ws2sq += w * s2 * s2;
        if (partition_ok) {
            PhasePartition p = empirical_phase_partition(lat, sigma, tspec, f);
            partitioned++;
            for (int64_t b = 0; b < grid.num_blocks; ++b)
                label_votes[b][p.label[b]]++;
            if (minority_connected(p, 2)) connected_count++;
        }
    };

    if (spec.mode == ConditioningMode::rejection) {
        RunSpec run;
        run.sweeps = spec.sweeps;
        run.burnin = spec.burnin;
        run.thinning = spec.thinning;
        run.seed = spec.seed;
        sample_chain(lat, params, frozen, run,
                     [&](const ChainSample& s) { absorb(s.sigma, 0.0); });
    } else {
        RngStream rng(spec.seed, 1);
        std::vector<double> field(params.q + 1, 0.0);
        field[2] = spec.tilt;
        SpinConfig sigma = random_spins(lat, params.q, frozen, rng);
        for (int64_t s = 0; s < spec.burnin; ++s)
            heat_bath_sweep_tilted(lat, sigma, params, frozen, field, rng);
        for (int64_t s = 1; s <= spec.sweeps; ++s) {
            heat_bath_sweep_tilted(lat, sigma, params, frozen, field, rng);
            if (s % spec.thinning == 0) {
                int64_t n2 = 0;
                for (uint8_t c : sigma)
                    if (c == 2) ++n2;
                absorb(sigma, -spec.tilt * static_cast<double>(n2));
            }
        }
    }

    rep.acceptance_rate =
        rep.samples > 0 ? static_cast<double>(rep.accepted) / rep.samples : 0;
    if (sum_w > 0) {
        rep.mean_s2 = sum_ws2 / sum_w;
        rep.effective_samples = sum_w * sum_w / sum_w2;
        double var = std::max(0.0, sum_ws2sq / sum_w - rep.mean_s2 * rep.mean_s2);
        rep.mean_s2_stderr = std::sqrt(var / std::max(1.0, rep.effective_samples));
    }
    rep.minority_connected_fraction =
        partitioned > 0 ? static_cast<double>(connected_count) / partitioned : 0;

    if (rep.accepted > 0 && partition_ok && theta_hat > 0) {
        // majority-vote partition of the accepted samples
        PhasePartition maj;
        maj.grid = grid;
        maj.q = params.q;
        maj.label.assign(grid.num_blocks, 0);
        for (int64_t b = 0; b < grid.num_blocks; ++b) {
            int best = 0;
            for (int l = 0; l <= params.q; ++l)
                if (label_votes[b][l] > label_votes[b][best]) best = l;
            maj.label[b] = static_cast<uint8_t>(best);
        }
        // best-matching translate of the rescaled crystal, grid search;
        // thresholds below the vacuous level just mean a zero target volume
        std::vector<double> clamped = spec.ensemble.thresholds;
        for (double& s : clamped) s = std::max(s, (1 - theta_hat) / params.q);
        std::vector<double> v = target_volumes(clamped, theta_hat, params.q);
        double v2 = std::max(v[0], 1e-6);
        WulffShape w = build_crystal(tau, lat.d(), 48, 2 * lat.d() + 160);
        double alpha = std::pow(v2 / w.volume(), 1.0 / lat.d());
        std::vector<uint8_t> minority(grid.num_blocks), droplet(grid.num_blocks);
        for (int64_t b = 0; b < grid.num_blocks; ++b) minority[b] = maj.label[b] == 2;
        double best_dist = -1;
        std::vector<int> offs(grid.d, 0);
        int64_t noffsets = grid.num_blocks;
        for (int64_t o = 0; o < noffsets; ++o) {
            std::vector<int> oc = grid.block_coords(o);
            std::vector<double> x0(grid.d);
            for (int a = 0; a < grid.d; ++a)
                x0[a] = 0.5 * (grid.lo(a, oc[a]) + grid.hi(a, oc[a])) / grid.n;
            std::vector<double> rel(grid.d);
            for (int64_t b = 0; b < grid.num_blocks; ++b) {
                std::vector<int> c = grid.block_coords(b);
                for (int a = 0; a < grid.d; ++a)
                    rel[a] = (0.5 * (grid.lo(a, c[a]) + grid.hi(a, c[a])) / grid.n -
                              x0[a]) /
                             alpha;
                droplet[b] = w.contains(rel, tau);
            }
            double dd = dist_l1(grid, minority, droplet);
            if (best_dist < 0 || dd < best_dist) {
                best_dist = dd;
                rep.wulff_offset.assign(x0.begin(), x0.end());
            }
        }
        rep.wulff_dist_l1 = best_dist;
    }
    return rep;
}

} // namespace pottslab
