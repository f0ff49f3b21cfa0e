// Experiment driver: every run is fully determined by its config file and
// writes a manifest alongside its artifacts.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "pottslab/config.hpp"
#include "pottslab/fk.hpp"
#include "pottslab/phase.hpp"
#include "pottslab/snapshot.hpp"
#include "pottslab/tau.hpp"
#include "pottslab/wulff.hpp"

namespace fs = std::filesystem;
using namespace pottslab;

namespace {

constexpr const char* code_version = "pottslab 1.0.0";

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct ModelKeys {
    int d, n, q;
    double beta;
};

ModelKeys read_model(const ExperimentConfig& cfg) {
    ModelKeys m;
    m.d = static_cast<int>(cfg.get_int("model.d", 3));
    m.n = static_cast<int>(cfg.get_int("model.n", 8));
    m.q = static_cast<int>(cfg.get_int("model.q", 2));
    m.beta = cfg.get_double("model.beta", 1.0);
    return m;
}

BoundarySpec read_boundary(const ExperimentConfig& cfg, int d, int q) {
    std::string kind = cfg.get("boundary.kind", "uniform");
    if (kind == "free") return BoundarySpec::free_bc(d, q);
    if (kind == "uniform")
        return BoundarySpec::uniform(d, q, static_cast<int>(cfg.get_int("boundary.color", 1)));
    if (kind == "top-bottom") return BoundarySpec::top_bottom(d, q);
    if (kind == "per-face") return BoundarySpec::per_face(d, q);
    throw ConfigError("unknown boundary.kind: " + kind);
}

TauModel read_tau(const ExperimentConfig& cfg, int d) {
    std::string kind = cfg.get("tau.kind", "isotropic");
    if (kind == "isotropic") return TauModel::isotropic(cfg.get_double("tau.value", 1.0));
    if (kind == "axis") {
        std::string list = cfg.get("tau.axis_values");
        std::vector<double> w;
        std::stringstream ss(list);
        std::string tok;
        while (std::getline(ss, tok, ','))
            w.push_back(std::stod(tok));
        if (static_cast<int>(w.size()) != d)
            throw ConfigError("tau.axis_values needs d entries");
        return TauModel::axis(w);
    }
    if (kind == "l1") {
        // support function of the cube: tau(nu) = c * sum |nu_a|
        return TauModel::axis(std::vector<double>(d, cfg.get_double("tau.value", 1.0)));
    }
    throw ConfigError("unknown tau.kind: " + kind);
}

RunSpec read_run(const ExperimentConfig& cfg) {
    RunSpec r;
    r.sweeps = cfg.get_int("run.sweeps", 1000);
    r.burnin = cfg.get_int("run.burnin", -1);
    r.thinning = cfg.get_int("run.thinning", 1);
    r.replicas = static_cast<int>(cfg.get_int("run.replicas", 1));
    r.seed = cfg.get_u64("run.seed", 0);
    return r;
}

struct Workspace {
    fs::path dir;
    ExperimentConfig cfg;
    std::string hash;
    std::vector<std::string> artifacts;

    Workspace(const ExperimentConfig& c) : cfg(c), hash(config_hash(c)) {
        dir = cfg.get("output.dir", "out");
        fs::create_directories(dir);
    }

    std::ofstream open(const std::string& name) {
        artifacts.push_back(name);
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
        return out;
    }

    void write_file(const std::string& name, const std::string& content) {
        open(name) << content;
    }

    // CSV with the spec's estimate row layout
    void write_estimates(const std::string& name,
                         const std::vector<std::array<std::string, 9>>& rows) {
        std::ostringstream out;
        out << "quantity,n,d,q,beta,value,stderr,samples,seed,manifest\n";
        for (const auto& r : rows) {
            for (const auto& field : r) out << field << ',';
            out << hash << '\n';
        }
        write_file(name, out.str());
    }

    void finish() {
        std::ostringstream out;
        out << "config_hash " << hash << "\n";
        out << "code_version " << code_version << "\n";
        out << "seed " << cfg.get_u64("run.seed", 0) << "\n";
        for (const auto& a : artifacts) out << "artifact " << a << "\n";
        out << "config_begin\n" << cfg.render() << "config_end\n";
        std::ofstream m(dir / "manifest.txt", std::ios::binary);
        m << out.str();
    }
};

std::vector<std::string> common_keys() {
    return {"model.d", "model.n", "model.q", "model.beta", "boundary.kind",
            "boundary.color", "run.sweeps", "run.burnin", "run.thinning",
            "run.replicas", "run.seed", "output.dir"};
}

std::vector<std::string> with(std::vector<std::string> base,
                              std::initializer_list<const char*> extra) {
    for (const char* e : extra) base.push_back(e);
    return base;
}

void cmd_sample(const ExperimentConfig& cfg) {
    cfg.require_known(with(common_keys(), {"sample.save_bonds"}));
    ModelKeys m = read_model(cfg);
    Lattice lat = Lattice::box(m.d, m.n);
    ModelParams params{m.q, m.beta};
    BoundarySpec bspec = read_boundary(cfg, m.d, m.q);
    std::vector<uint8_t> frozen = discretize_boundary(bspec, lat);
    RunSpec run = read_run(cfg);
    bool save_bonds = cfg.get_int("sample.save_bonds", 0) != 0;

    Workspace ws(cfg);
    sample_chain(lat, params, frozen, run, [&](const ChainSample& s) {
        Snapshot snap{"spin", m.d, m.n, m.q, m.beta, run.seed, s.sweep, s.sigma};
        char name[64];
        std::snprintf(name, sizeof(name), "rep%d_sweep%lld.spin", s.replica,
                      static_cast<long long>(s.sweep));
        ws.write_file(name, render_snapshot(snap));
        if (save_bonds) {
            Snapshot bsnap{"bond", m.d, m.n, m.q, m.beta, run.seed, s.sweep, s.eta};
            std::snprintf(name, sizeof(name), "rep%d_sweep%lld.bond", s.replica,
                          static_cast<long long>(s.sweep));
            ws.write_file(name, render_snapshot(bsnap));
        }
    });
    ws.finish();
}

void cmd_estimate_theta(const ExperimentConfig& cfg) {
    cfg.require_known(common_keys());
    ModelKeys m = read_model(cfg);
    Lattice lat = Lattice::box(m.d, m.n);
    ModelParams params{m.q, m.beta};
    BoundarySpec bspec = read_boundary(cfg, m.d, m.q);
    int j = static_cast<int>(cfg.get_int("boundary.color", 1));
    std::vector<uint8_t> frozen = discretize_boundary(bspec, lat);
    RunSpec run = read_run(cfg);

    OrderParameterEstimator est(lat, m.q, j);
    sample_chain(lat, params, frozen, run,
                 [&](const ChainSample& s) { est.add(s.sigma); });
    Estimate e = est.estimate();

    Workspace ws(cfg);
    ws.write_estimates("theta.csv",
                       {{"theta", std::to_string(m.n), std::to_string(m.d),
                         std::to_string(m.q), fmt(m.beta), fmt(e.value), fmt(e.stderror),
                         std::to_string(e.samples), std::to_string(run.seed)}});
    ws.finish();
    std::cout << "theta_hat " << fmt(e.value) << " +- " << fmt(e.stderror) << "\n";
}

void cmd_estimate_theta_star(const ExperimentConfig& cfg) {
    cfg.require_known(with(common_keys(), {"fk.bc"}));
    ModelKeys m = read_model(cfg);
    Lattice lat = Lattice::box(m.d, m.n);
    ModelParams params{m.q, m.beta};
    std::string bc = cfg.get("fk.bc", "free");
    FkBc fkbc = bc == "wired" ? FkBc::wired : FkBc::free_bc;
    if (bc != "free" && bc != "wired") throw ConfigError("fk.bc must be free or wired");
    RunSpec run = read_run(cfg);

    RngStream rng(run.seed, 0);
    FkDirectChain chain(lat, params, fkbc);
    int64_t burnin = run.effective_burnin(m.n);
    for (int64_t s = 0; s < burnin; ++s) chain.sweep(rng);
    PercolationEstimator est(lat);
    int64_t kept = 0;
    for (int64_t s = 1; s <= run.sweeps; ++s) {
        chain.sweep(rng);
        if (s % run.thinning == 0) {
            est.add(lat, chain.state());
            ++kept;
        }
    }
    Estimate e = est.estimate();

    Workspace ws(cfg);
    ws.write_estimates("theta_star.csv",
                       {{"theta_star_" + bc, std::to_string(m.n), std::to_string(m.d),
                         std::to_string(m.q), fmt(m.beta), fmt(e.value), fmt(e.stderror),
                         std::to_string(e.samples), std::to_string(run.seed)}});
    ws.finish();
    std::cout << "theta_star_hat(" << bc << ") " << fmt(e.value) << " +- "
              << fmt(e.stderror) << " (finite-n proxy at n=" << m.n << ")\n";
}

void cmd_phase_partition(const ExperimentConfig& cfg) {
    cfg.require_known(with(common_keys(), {"phase.theta", "phase.epsilon", "phase.f"}));
    ModelKeys m = read_model(cfg);
    Lattice lat = Lattice::box(m.d, m.n);
    ModelParams params{m.q, m.beta};
    BoundarySpec bspec = read_boundary(cfg, m.d, m.q);
    std::vector<uint8_t> frozen = discretize_boundary(bspec, lat);
    RunSpec run = read_run(cfg);

    int j = static_cast<int>(cfg.get_int("boundary.color", 1));
    OrderParameterEstimator est(lat, m.q, j);
    SpinConfig last;
    sample_chain(lat, params, frozen, run, [&](const ChainSample& s) {
        est.add(s.sigma);
        last = s.sigma;
    });
    if (last.empty()) throw std::runtime_error("no samples emitted");

    double theta = cfg.has("phase.theta") ? cfg.get_double("phase.theta", 0)
                                          : est.estimate().value;
    double eps = cfg.has("phase.epsilon") ? cfg.get_double("phase.epsilon", 0)
                                          : TestEventSpec::default_epsilon(theta);
    int f = static_cast<int>(cfg.get_int("phase.f", intermediate_scale(m.n, m.d)));
    TestEventSpec tspec{m.q, theta, eps};
    PhasePartition p = empirical_phase_partition(lat, last, tspec, f);

    Workspace ws(cfg);
    ws.write_file("partition.txt", render_partition(p));
    ws.write_estimates("phase.csv",
                       {{"vol_indefinite", std::to_string(m.n), std::to_string(m.d),
                         std::to_string(m.q), fmt(m.beta), fmt(p.phase_volume(0)), "0",
                         "1", std::to_string(run.seed)}});
    ws.finish();
    std::cout << "indefinite volume " << fmt(p.phase_volume(0)) << "\n";
}

void cmd_surface_energy(const ExperimentConfig& cfg) {
    cfg.require_known(with(common_keys(),
                           {"input.partition", "tau.kind", "tau.value", "tau.axis_values"}));
    PhasePartition p = load_partition(cfg.get("input.partition"));
    TauModel tau = read_tau(cfg, p.grid.d);
    BoundarySpec bspec = read_boundary(cfg, p.grid.d, p.q);
    double energy = surface_energy(p, tau, bspec);
    double perim = discrete_perimeter(p);

    Workspace ws(cfg);
    ws.write_estimates(
        "surface_energy.csv",
        {{"surface_energy", std::to_string(p.grid.n), std::to_string(p.grid.d),
          std::to_string(p.q), "0", fmt(energy), "0", "1", "0"},
         {"perimeter", std::to_string(p.grid.n), std::to_string(p.grid.d),
          std::to_string(p.q), "0", fmt(perim), "0", "1", "0"}});
    ws.finish();
    std::cout << "surface_energy " << fmt(energy) << "\nperimeter " << fmt(perim) << "\n";
}

void cmd_tau_probe(const ExperimentConfig& cfg) {
    cfg.require_known(with(common_keys(), {"tau.nu"}));
    ModelKeys m = read_model(cfg);
    Lattice lat = Lattice::box(m.d, m.n);
    ModelParams params{m.q, m.beta};
    int axis = static_cast<int>(cfg.get_int("tau.nu", 0));
    RunSpec run = read_run(cfg);

    RngStream rng(run.seed, 0);
    FkDirectChain chain(lat, params, FkBc::free_bc);
    int64_t burnin = run.effective_burnin(m.n);
    for (int64_t s = 0; s < burnin; ++s) chain.sweep(rng);
    std::vector<BondConfig> samples;
    for (int64_t s = 1; s <= run.sweeps; ++s) {
        chain.sweep(rng);
        if (s % run.thinning == 0) samples.push_back(chain.state());
    }
    TauEstimate est = tau_estimate(lat, axis, samples);

    Workspace ws(cfg);
    std::ostringstream out;
    out << "nu,n,q,beta,samples,cut_frequency,tau_hat,stderr,censored,manifest\n";
    out << axis << ',' << m.n << ',' << m.q << ',' << fmt(m.beta) << ','
        << est.samples << ',' << fmt(est.cut_frequency) << ',' << fmt(est.tau_hat) << ','
        << fmt(est.stderror) << ',' << (est.censored ? 1 : 0) << ',' << ws.hash << '\n';
    ws.write_file("tau.csv", out.str());
    ws.finish();
    std::cout << "tau_hat(axis " << axis << ") " << fmt(est.tau_hat)
              << (est.censored ? " (censored lower bound)" : "")
              << " (finite-n estimate at n=" << m.n << ")\n";
}

void cmd_slab_probe(const ExperimentConfig& cfg) {
    cfg.require_known(with(common_keys(), {"slab.L", "slab.halfwidth", "slab.alpha"}));
    ModelKeys m = read_model(cfg);
    int L = static_cast<int>(cfg.get_int("slab.L", 2));
    int hw = static_cast<int>(cfg.get_int("slab.halfwidth", m.n));
    double alpha = cfg.get_double("slab.alpha", 1.0);
    std::vector<int> extent(m.d, 2 * hw);
    extent[0] = 2 * L;
    Lattice slab = Lattice::rect(extent, m.n);
    ModelParams params{m.q, m.beta};
    RunSpec run = read_run(cfg);

    RngStream rng(run.seed, 0);
    FkDirectChain chain(slab, params, FkBc::free_bc);
    int64_t burnin = run.effective_burnin(m.n);
    for (int64_t s = 0; s < burnin; ++s) chain.sweep(rng);
    std::vector<BondConfig> samples;
    for (int64_t s = 1; s <= run.sweeps; ++s) {
        chain.sweep(rng);
        if (s % run.thinning == 0) samples.push_back(chain.state());
    }
    SlabProbeResult res = slab_lro_probe(slab, samples, alpha, run.seed);

    Workspace ws(cfg);
    ws.write_estimates("slab.csv",
                       {{"slab_min_connection", std::to_string(m.n), std::to_string(m.d),
                         std::to_string(m.q), fmt(m.beta), fmt(res.min_frequency), "0",
                         std::to_string(res.samples), std::to_string(run.seed)}});
    ws.finish();
    std::cout << "min pairwise connection frequency " << fmt(res.min_frequency)
              << " (sites " << res.site_a << ", " << res.site_b << ")\n";
}

void cmd_wulff(const ExperimentConfig& cfg) {
    cfg.require_known(with(common_keys(),
                           {"tau.kind", "tau.value", "tau.axis_values", "wulff.m",
                            "wulff.directions"}));
    ModelKeys m = read_model(cfg);
    TauModel tau = read_tau(cfg, m.d);
    int raster = static_cast<int>(cfg.get_int("wulff.m", 128));
    int K = static_cast<int>(cfg.get_int("wulff.directions", 2 * m.d + 240));
    WulffShape w = wulff_crystal(tau, m.d, raster, K);

    // emit the raster in the partition format with q=1
    PhasePartition p;
    p.grid = BlockGrid::make(m.d, raster, 1);
    p.q = 1;
    p.label.assign(w.inside.begin(), w.inside.end());

    Workspace ws(cfg);
    ws.write_file("wulff.txt", render_partition(p));
    ws.write_estimates("wulff.csv",
                       {{"wulff_volume", std::to_string(raster), std::to_string(m.d), "1",
                         "0", fmt(w.volume()), "0", "1", "0"}});
    ws.finish();
    std::cout << "wulff raster volume " << fmt(w.volume()) << "\n";
}

void cmd_anneal(const ExperimentConfig& cfg) {
    cfg.require_known(with(common_keys(),
                           {"tau.kind", "tau.value", "tau.axis_values", "anneal.blocks",
                            "anneal.init", "anneal.volume", "anneal.conserve", "anneal.t0",
                            "anneal.cooling", "anneal.sweeps_per_level",
                            "anneal.floor_ratio", "anneal.restarts"}));
    ModelKeys m = read_model(cfg);
    TauModel tau = read_tau(cfg, m.d);
    BoundarySpec bspec = read_boundary(cfg, m.d, m.q);
    int blocks = static_cast<int>(cfg.get_int("anneal.blocks", 16));
    BlockGrid grid = BlockGrid::make(m.d, blocks, 1);

    std::string init = cfg.get("anneal.init", "pyramids");
    uint64_t seed = cfg.get_u64("run.seed", 0);
    PhasePartition start;
    if (init == "random") {
        start.grid = grid;
        start.q = m.q;
        start.label.assign(grid.num_blocks, 1);
        RngStream rng(seed, 0xA11);
        for (auto& l : start.label) l = static_cast<uint8_t>(rng.next_below(m.q) + 1);
    } else {
        ReferenceKind kind;
        if (init == "pyramids") kind = ReferenceKind::pyramids;
        else if (init == "flat-slab") kind = ReferenceKind::flat_slab;
        else if (init == "corner-droplet") kind = ReferenceKind::corner_droplet;
        else if (init == "centered-droplet") kind = ReferenceKind::centered_droplet;
        else throw ConfigError("unknown anneal.init: " + init);
        start = reference_partition(kind, grid, m.q, tau, cfg.get_double("anneal.volume", 0.05));
    }

    AnnealSchedule sched;
    sched.t0 = cfg.get_double("anneal.t0", -1);
    sched.cooling = cfg.get_double("anneal.cooling", 0.97);
    sched.sweeps_per_level = static_cast<int>(cfg.get_int("anneal.sweeps_per_level", 50));
    sched.floor_ratio = cfg.get_double("anneal.floor_ratio", 1e-3);
    bool conserve = cfg.get_int("anneal.conserve", 0) != 0;
    int restarts = static_cast<int>(cfg.get_int("anneal.restarts", 1));

    Workspace ws(cfg);
    double init_energy = surface_energy(start, tau, bspec);
    double best_overall = init_energy;
    PhasePartition best = start;
    std::vector<std::array<std::string, 9>> rows;
    rows.push_back({"init_energy", std::to_string(blocks), std::to_string(m.d),
                    std::to_string(m.q), "0", fmt(init_energy), "0", "1",
                    std::to_string(seed)});
    for (int r = 0; r < restarts; ++r) {
        RngStream rng(seed, static_cast<uint64_t>(r));
        AnnealResult res = anneal_partition(start, tau, bspec, conserve, sched, rng);
        rows.push_back({"annealed_energy_restart" + std::to_string(r),
                        std::to_string(blocks), std::to_string(m.d), std::to_string(m.q),
                        "0", fmt(res.best_energy), "0", "1", std::to_string(seed)});
        if (res.best_energy < best_overall) {
            best_overall = res.best_energy;
            best = res.best;
        }
    }
    ws.write_file("annealed_partition.txt", render_partition(best));
    ws.write_estimates("anneal.csv", rows);
    ws.finish();
    std::cout << "initial energy " << fmt(init_energy) << "\nbest annealed energy "
              << fmt(best_overall) << "\n";
}

void cmd_droplet(const ExperimentConfig& cfg) {
    cfg.require_known(with(common_keys(),
                           {"tau.kind", "tau.value", "tau.axis_values",
                            "ensemble.thresholds", "ensemble.mode", "ensemble.tilt",
                            "ensemble.epsilon"}));
    ModelKeys m = read_model(cfg);
    Lattice lat = Lattice::box(m.d, m.n);
    ModelParams params{m.q, m.beta};
    TauModel tau = read_tau(cfg, m.d);

    DropletRunSpec spec;
    spec.ensemble.q = m.q;
    {
        std::stringstream ss(cfg.get("ensemble.thresholds"));
        std::string tok;
        while (std::getline(ss, tok, ','))
            spec.ensemble.thresholds.push_back(std::stod(tok));
    }
    std::string mode = cfg.get("ensemble.mode", "rejection");
    if (mode == "rejection") spec.mode = ConditioningMode::rejection;
    else if (mode == "tilted") spec.mode = ConditioningMode::tilted;
    else throw ConfigError("unknown ensemble.mode: " + mode);
    spec.tilt = cfg.get_double("ensemble.tilt", 0.0);
    spec.epsilon = cfg.get_double("ensemble.epsilon", 0.05);
    RunSpec run = read_run(cfg);
    spec.sweeps = run.sweeps;
    spec.burnin = run.effective_burnin(m.n);
    spec.thinning = run.thinning;
    spec.seed = run.seed;

    DropletReport rep = droplet_experiment(lat, params, tau, spec);

    Workspace ws(cfg);
    std::ostringstream out;
    out << "samples " << rep.samples << "\n"
        << "accepted " << rep.accepted << "\n"
        << "acceptance_rate " << fmt(rep.acceptance_rate) << "\n"
        << "mean_s2 " << fmt(rep.mean_s2) << "\n"
        << "mean_s2_stderr " << fmt(rep.mean_s2_stderr) << "\n"
        << "effective_samples " << fmt(rep.effective_samples) << "\n"
        << "wulff_dist_l1 " << fmt(rep.wulff_dist_l1) << "\n"
        << "minority_connected_fraction " << fmt(rep.minority_connected_fraction) << "\n"
        << "manifest " << ws.hash << "\n";
    ws.write_file("droplet_report.txt", out.str());
    ws.finish();
    std::cout << out.str();
}

void cmd_oracle_check(const ExperimentConfig& cfg) {
    cfg.require_known(common_keys());
    ModelKeys m = read_model(cfg);
    if (!cfg.has("model.d")) m = {2, 2, 2, 0.8}; // default desk-scale check
    Lattice lat = Lattice::box(m.d, m.n);
    ModelParams params{m.q, m.beta};
    BoundarySpec bspec = read_boundary(cfg, m.d, m.q);
    std::vector<uint8_t> frozen = discretize_boundary(bspec, lat);
    ExactTables t = enumerate_exact(lat, params, frozen);
    double tv = 0;
    for (size_t i = 0; i < t.potts.size(); ++i)
        tv += std::abs(t.potts[i] - t.es_spin[i]);
    tv /= 2;

    Workspace ws(cfg);
    ws.write_estimates("oracle.csv",
                       {{"es_coupling_tv", std::to_string(m.n), std::to_string(m.d),
                         std::to_string(m.q), fmt(m.beta), fmt(tv),
                         fmt(t.normalization_residual), "1", "0"}});
    ws.finish();
    std::cout << "ES coupling TV distance " << fmt(tv) << "\n";
    if (tv >= 1e-10) throw std::runtime_error("ES coupling oracle check failed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Potts / random-cluster phase separation laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::vector<std::pair<std::string, void (*)(const ExperimentConfig&)>> commands = {
        {"sample", cmd_sample},
        {"estimate-theta", cmd_estimate_theta},
        {"estimate-theta-star", cmd_estimate_theta_star},
        {"phase-partition", cmd_phase_partition},
        {"surface-energy", cmd_surface_energy},
        {"tau-probe", cmd_tau_probe},
        {"slab-probe", cmd_slab_probe},
        {"wulff", cmd_wulff},
        {"anneal", cmd_anneal},
        {"droplet", cmd_droplet},
        {"oracle-check", cmd_oracle_check},
    };
    for (auto& [name, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("config", config_path, "config file (key = value lines)");
        sub->add_option("--set", overrides, "override key=value");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg = config_path.empty()
                                   ? ExperimentConfig{}
                                   : ExperimentConfig::parse_file(config_path);
        for (const std::string& ov : overrides) {
            size_t eq = ov.find('=');
            if (eq == std::string::npos) throw ConfigError("--set needs key=value");
            cfg.set(ov.substr(0, eq), ov.substr(eq + 1));
        }
        std::string sub = app.get_subcommands()[0]->get_name();
        for (auto& [name, fn] : commands) {
            if (name == sub) {
                fn(cfg);
                return 0;
            }
        }
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SizingError& e) {
        std::cerr << "sizing error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
