#ifndef PBOUND_MSD_HPP
#define PBOUND_MSD_HPP

#include "pbound/mdsim.hpp"
#include "pbound/transport.hpp"

#include <vector>

namespace pbound::vacf {

// Per-component mean squared displacement, origin-averaged over the full
// trajectory (FFT decomposition), pooled over particles and components.
struct MsdCurve {
    std::vector<double> lags;
    std::vector<double> values;                   // <(dr)^2> per component
    std::vector<std::vector<double>> group_values;
};

MsdCurve estimate_msd(const mdsim::Trajectory& traj, double max_lag, int n_groups = 8);

// (1/2) d<dr^2>/dt at eval_time via central finite difference on the MSD
// grid. Requires unwrapped positions in the trajectory.
ValueWithError msd_diffusion(const mdsim::Trajectory& traj, double eval_time,
                             double max_lag = 0.0, int n_groups = 8);

} // namespace pbound::vacf

#endif
