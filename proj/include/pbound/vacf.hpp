#ifndef PBOUND_VACF_HPP
#define PBOUND_VACF_HPP

#include "pbound/mdsim.hpp"

#include <limits>
#include <vector>

namespace pbound::vacf {

// Single-Cartesian-component velocity autocorrelation, averaged over all
// particles, components and sliding time origins. Lag k uses all n-k
// origins.
struct Vacf {
    std::vector<double> lags;   // starts at 0, uniform spacing
    std::vector<double> values; // G_v(lag)
    double g0 = 0.0;            // values[0]
    long n_origins = 0;         // origins available at the longest lag
    bool per_component = true;

    // Per-group curves (contiguous particle blocks) back the statistical
    // errors on the transport estimates; empty for external VACF files.
    std::vector<std::vector<double>> group_values;

    double lag_spacing() const { return lags.size() > 1 ? lags[1] - lags[0] : 0.0; }
};

inline constexpr double kNoZeroCrossing = std::numeric_limits<double>::infinity();

// FFT-based estimator (production path).
Vacf estimate_vacf(const mdsim::Trajectory& traj, double max_lag, int n_groups = 8);

// Direct-sum estimator over the same origins; reference for testing.
Vacf estimate_vacf_direct(const mdsim::Trajectory& traj, double max_lag, int n_groups = 8);

// Autocorrelation of a single series: c[k] = sum_t x[t] x[t+k] / (n-k).
// Both routes must agree to 1e-10 relative.
std::vector<double> autocorrelation_fft(const std::vector<double>& x, int n_lags);
std::vector<double> autocorrelation_direct(const std::vector<double>& x, int n_lags);

// First sign change of G_v, located by linear interpolation between the
// bracketing samples; kNoZeroCrossing when G_v stays positive over the
// window.
double first_zero(const Vacf& v);

} // namespace pbound::vacf

#endif
