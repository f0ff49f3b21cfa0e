#pragma once

#include <cstdint>
#include <vector>

#include "pottslab/clusters.hpp"
#include "pottslab/gibbs.hpp"
#include "pottslab/lattice.hpp"

namespace pottslab {

// Direction-dependent surface tension nu -> tau(nu), symmetric under
// nu -> -nu and the lattice isometries of its parameters.
class TauModel {
public:
    static TauModel isotropic(double c);
    // per-axis values; off-axis directions interpolate as
    // tau(nu) = sum_a w_a |nu_a| (exact on axis directions)
    static TauModel axis(std::vector<double> weights);
    // explicit (direction, value) table, nearest direction by |dot|,
    // axis fallback included automatically
    static TauModel tabulated(std::vector<std::pair<std::vector<double>, double>> entries);

    double operator()(const std::vector<double>& nu) const;
    double at_axis(int axis) const;

    double tau_min() const { return tau_min_; }
    double tau_max() const { return tau_max_; }

private:
    enum class Kind { isotropic, axis, tabulated };
    Kind kind_ = Kind::isotropic;
    double c_ = 1.0;
    std::vector<double> weights_;
    std::vector<std::pair<std::vector<double>, double>> table_;
    double tau_min_ = 1.0;
    double tau_max_ = 1.0;
};

// Finite-box reading of the cylinder disconnection event: true iff the two
// faces of the window of half-height 2d around the central section normal to
// `axis` are not joined by open edges inside the window.
bool cut_event_indicator(const Lattice& lat, const BondConfig& eta, int axis,
                         int window_halfheight = -1);

struct TauEstimate {
    int axis = 0;
    double cut_frequency = 0;
    double tau_hat = 0; // always a finite-n estimate
    double stderror = 0;
    int64_t samples = 0;
    bool censored = false; // frequency was zero; tau_hat is a lower bound
};

TauEstimate tau_estimate(const Lattice& lat, int axis,
                         const std::vector<BondConfig>& samples);

} // namespace pottslab
