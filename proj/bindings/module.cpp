#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pottslab/fk.hpp"
#include "pottslab/phase.hpp"
#include "pottslab/snapshot.hpp"
#include "pottslab/tau.hpp"
#include "pottslab/wulff.hpp"

namespace py = pybind11;
using namespace pottslab;

PYBIND11_MODULE(_pottslab, m) {
    m.doc() = "Potts / random-cluster phase separation laboratory";

    py::register_exception<SizingError>(m, "SizingError");

    py::class_<Lattice>(m, "Lattice")
        .def_static("box", &Lattice::box, py::arg("d"), py::arg("n"),
                    py::arg("site_budget") = Lattice::default_site_budget)
        .def_static("rect", &Lattice::rect, py::arg("extent"), py::arg("n"),
                    py::arg("site_budget") = Lattice::default_site_budget)
        .def_property_readonly("d", &Lattice::d)
        .def_property_readonly("n", &Lattice::n)
        .def_property_readonly("num_sites", &Lattice::num_sites)
        .def_property_readonly("num_edges", &Lattice::num_edges)
        .def("site_coords", &Lattice::site_coords)
        .def("site_index", &Lattice::site_index)
        .def("is_boundary", &Lattice::is_boundary)
        .def("boundary_sites", &Lattice::boundary_sites)
        .def("box_at", &Lattice::box_at)
        .def("center_site", &Lattice::center_site);

    py::class_<BoundarySpec>(m, "BoundarySpec")
        .def_static("free_bc", &BoundarySpec::free_bc)
        .def_static("uniform", &BoundarySpec::uniform)
        .def_static("top_bottom", &BoundarySpec::top_bottom)
        .def_static("per_face", &BoundarySpec::per_face)
        .def_readwrite("face_part", &BoundarySpec::face_part);

    m.def("discretize_boundary", &discretize_boundary);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](int q, double beta) { return ModelParams{q, beta}; }),
             py::arg("q"), py::arg("beta"))
        .def_readwrite("q", &ModelParams::q)
        .def_readwrite("beta", &ModelParams::beta)
        .def_property_readonly("p", &ModelParams::p);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<uint64_t, uint64_t>(), py::arg("seed"), py::arg("stream"))
        .def("next_u64", &RngStream::next_u64)
        .def("next_double", &RngStream::next_double);

    m.def("hamiltonian", &hamiltonian);
    m.def("gibbs_weight", &gibbs_weight);
    m.def("log_gibbs_weight", &log_gibbs_weight);
    m.def("fk_weight", &fk_weight);
    m.def("log_fk_weight", &log_fk_weight);

    py::class_<ExactTables>(m, "ExactTables")
        .def_readonly("free_sites", &ExactTables::free_sites)
        .def_readonly("potts", &ExactTables::potts)
        .def_readonly("fk", &ExactTables::fk)
        .def_readonly("es_spin", &ExactTables::es_spin)
        .def_readonly("normalization_residual", &ExactTables::normalization_residual);
    m.def("enumerate_exact", &enumerate_exact, py::arg("lat"), py::arg("params"),
          py::arg("frozen"), py::arg("budget_bits") = 26);

    m.def("heat_bath_sweep",
          [](const Lattice& lat, SpinConfig sigma, const ModelParams& p,
             const std::vector<uint8_t>& frozen, RngStream& rng) {
              heat_bath_sweep(lat, sigma, p, frozen, rng);
              return sigma;
          });
    m.def("random_spins", &random_spins);
    m.def("constant_spins", &constant_spins);

    m.def("es_bond_step", &es_bond_step);
    m.def("es_color_step", &es_color_step);
    m.def("sw_sweep", &sw_sweep);

    py::class_<FkDirectChain>(m, "FkDirectChain")
        .def(py::init<const Lattice&, const ModelParams&, FkBc>(), py::keep_alive<1, 2>())
        .def("sweep", &FkDirectChain::sweep)
        .def_property_readonly("state", &FkDirectChain::state);
    py::enum_<FkBc>(m, "FkBc").value("free", FkBc::free_bc).value("wired", FkBc::wired);

    py::class_<ClusterStats>(m, "ClusterStats")
        .def_readonly("size", &ClusterStats::size)
        .def_readonly("diameter", &ClusterStats::diameter)
        .def_readonly("touches_part", &ClusterStats::touches_part)
        .def_readonly("crossing", &ClusterStats::crossing);
    py::class_<ClusterLabeling>(m, "ClusterLabeling")
        .def_readonly("id", &ClusterLabeling::id)
        .def_readonly("count", &ClusterLabeling::count)
        .def_readonly("stats", &ClusterLabeling::stats);
    m.def("clusters",
          [](const Lattice& lat, const BondConfig& eta) {
              return clusters(lat, eta, CountingRule::free_rule());
          });
    m.def("clusters_frozen",
          [](const Lattice& lat, const BondConfig& eta, const std::vector<uint8_t>& f) {
              return clusters(lat, eta, CountingRule::from_frozen(f));
          });

    m.def("intermediate_scale", &intermediate_scale);

    py::class_<BlockGrid>(m, "BlockGrid")
        .def_static("make", &BlockGrid::make)
        .def_readonly("d", &BlockGrid::d)
        .def_readonly("n", &BlockGrid::n)
        .def_readonly("f", &BlockGrid::f)
        .def_readonly("num_blocks", &BlockGrid::num_blocks)
        .def("volume", &BlockGrid::volume);
    py::class_<PhasePartition>(m, "PhasePartition")
        .def_readonly("grid", &PhasePartition::grid)
        .def_readonly("q", &PhasePartition::q)
        .def_readonly("label", &PhasePartition::label)
        .def("phase_volume", &PhasePartition::phase_volume);
    py::class_<TestEventSpec>(m, "TestEventSpec")
        .def(py::init([](int q, double theta, double eps) {
                 return TestEventSpec{q, theta, eps};
             }),
             py::arg("q"), py::arg("theta"), py::arg("epsilon"))
        .def("reference_density", &TestEventSpec::reference_density);

    m.def("empirical_phase_partition", &empirical_phase_partition);
    m.def("dist_p", &dist_p);
    m.def("discrete_perimeter", &discrete_perimeter);

    py::class_<TauModel>(m, "TauModel")
        .def_static("isotropic", &TauModel::isotropic)
        .def_static("axis", &TauModel::axis)
        .def("__call__", &TauModel::operator())
        .def_property_readonly("tau_min", &TauModel::tau_min)
        .def_property_readonly("tau_max", &TauModel::tau_max);

    m.def("surface_energy", &surface_energy);
    m.def("cut_event_indicator", &cut_event_indicator, py::arg("lat"), py::arg("eta"),
          py::arg("axis"), py::arg("window_halfheight") = -1);

    py::class_<WulffShape>(m, "WulffShape")
        .def_readonly("d", &WulffShape::d)
        .def_readonly("m", &WulffShape::m)
        .def_readonly("half_width", &WulffShape::half_width)
        .def_readonly("inside", &WulffShape::inside)
        .def("volume", &WulffShape::volume);
    m.def("wulff_crystal", &wulff_crystal, py::arg("tau"), py::arg("d"), py::arg("m"),
          py::arg("K"));

    m.def("target_volumes", &target_volumes);

    m.def("render_snapshot", &render_snapshot);
    m.def("parse_snapshot", &parse_snapshot);
    py::class_<Snapshot>(m, "Snapshot")
        .def(py::init<>())
        .def_readwrite("kind", &Snapshot::kind)
        .def_readwrite("d", &Snapshot::d)
        .def_readwrite("n", &Snapshot::n)
        .def_readwrite("q", &Snapshot::q)
        .def_readwrite("beta", &Snapshot::beta)
        .def_readwrite("seed", &Snapshot::seed)
        .def_readwrite("sweep", &Snapshot::sweep)
        .def_readwrite("payload", &Snapshot::payload);
}
