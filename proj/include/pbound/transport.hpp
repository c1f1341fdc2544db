#ifndef PBOUND_TRANSPORT_HPP
#define PBOUND_TRANSPORT_HPP

#include "pbound/vacf.hpp"

#include <optional>
#include <vector>

namespace pbound::vacf {

struct GreenKubo {
    double value = 0.0;
    double cutoff = 0.0;               // lag actually integrated to
    std::vector<double> running;       // integral vs lag, the plateau diagnostic
    bool plateau_converged = false;
};

// Trapezoidal integral of G_v over [0, cutoff].
GreenKubo green_kubo_D(const Vacf& v, double cutoff);

// Cutoff choice when none is given: first lag where the running integral
// varies by less than 0.5% over the trailing factor-10 span of lags;
// falls back to the full window (flagged, never silent).
double default_gk_cutoff(const Vacf& v, bool& converged);

// Integral of G_v up to its first zero; equals the full-window integral
// when no zero crossing exists.
double d_plus(const Vacf& v);

// G_v(0)^2 / (2 |dG_v/dt|_max), slope from two-point finite differences
// on the sampled grid over [0, t_v] (or the whole window when t_v is
// infinite). Throws on a degenerate constant G_v.
double triangle_bound(const Vacf& v);

struct ValueWithError {
    double value = 0.0;
    double error = 0.0; // group-spread standard error; 0 when no groups
};

struct TransportEstimate {
    ValueWithError D;        // Green-Kubo at `gk_cutoff`
    ValueWithError D_plus;
    double t_v = 0.0;        // kNoZeroCrossing when none
    double slope_max = 0.0;
    ValueWithError triangle;
    std::optional<ValueWithError> msd_D; // filled by callers with positions
    double gk_cutoff = 0.0;
    bool plateau_converged = false;
};

// Pooled estimates plus group-scatter errors. `gk_cutoff` <= 0 selects the
// plateau default.
TransportEstimate transport_estimate(const Vacf& v, double gk_cutoff = 0.0);

} // namespace pbound::vacf

#endif
