#include "pbound/mdsim.hpp"

#include "pbound/errors.hpp"

#include <cmath>

namespace pbound::mdsim {

MomentStats moment_stats(const Trajectory& traj) {
    if (!traj.has_energies())
        throw ValidationError("moment_stats: trajectory has no per-particle energies");
    const std::size_t pooled = traj.local_potentials.size();
    if (pooled < 100)
        throw ValidationError("moment_stats: fewer than 100 pooled samples (" +
                              std::to_string(pooled) + ")");

    double mean_v = 0.0, mean_k = 0.0;
    for (std::size_t i = 0; i < pooled; ++i) {
        mean_v += traj.local_potentials[i];
        mean_k += traj.kinetic_per_particle[i];
    }
    mean_v /= double(pooled);
    mean_k /= double(pooled);

    double m2 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < pooled; ++i) {
        const double d = traj.local_potentials[i] - mean_v;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= double(pooled);
    m4 /= double(pooled);

    MomentStats out;
    out.mean_Vi = mean_v;
    out.var_Vi = m2;
    out.fourth_Vi = m4;
    out.mean_Ki = mean_k;
    out.sigma_Vi = std::sqrt(m2);
    out.n_samples = pooled;
    return out;
}

} // namespace pbound::mdsim
