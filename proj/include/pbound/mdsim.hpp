#ifndef PBOUND_MDSIM_HPP
#define PBOUND_MDSIM_HPP

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace pbound::mdsim {

// Reduced units throughout: epsilon = sigma = m = 1 for Lennard-Jones;
// charge = mass = 1 for the 2D Yukawa system. SI enters only in the
// bounds/thermo modules.

struct LennardJones {
    double cutoff = 2.5;
};

struct Yukawa {
    double screening = 2.0;     // kappa
    double coupling = 1.0;      // prefactor of exp(-kappa r)/r
    double magnetic_field = 0.0; // B normal to the plane; omega_c = B
    double cutoff = 0.0;        // 0 => auto: pair force below 1e-6
};

using Interaction = std::variant<LennardJones, Yukawa>;

enum class ThermostatKind { None, VelocityRescale, Langevin };

struct Thermostat {
    ThermostatKind kind = ThermostatKind::VelocityRescale;
    int interval = 10;      // VelocityRescale: steps between rescales
    double friction = 1.0;  // Langevin
};

struct SimConfig {
    int n_particles = 864;
    int dimension = 3;
    double number_density = 0.85;
    double temperature = 0.76;
    double dt = 0.005;
    long n_equil_steps = 5000;
    long n_prod_steps = 20000;
    int sample_stride = 5;
    Interaction interaction = LennardJones{};
    Thermostat thermostat{};
    std::uint64_t seed = 0;
    bool record_positions = false; // unwrapped, for MSD analysis
    bool record_energies = true;   // per-particle V_i and K_i
};

// Throws ValidationError on bad fields; returns the normalized config
// (auto cutoffs resolved).
SimConfig validate(SimConfig cfg);

struct Trajectory {
    SimConfig config;
    int n_particles = 0;
    int dimension = 0;
    double box_length = 0.0;
    std::vector<double> times;             // n_samples, uniform spacing
    std::vector<double> velocities;        // [sample][particle][component]
    std::vector<double> positions;         // same shape, unwrapped; may be empty
    std::vector<double> local_potentials;  // [sample][particle]; may be empty
    std::vector<double> kinetic_per_particle; // [sample][particle]; may be empty

    int n_samples() const { return static_cast<int>(times.size()); }
    bool has_positions() const { return !positions.empty(); }
    bool has_energies() const { return !local_potentials.empty(); }

    std::span<const double> velocities_at(int sample) const {
        const std::size_t w = std::size_t(n_particles) * dimension;
        return {velocities.data() + std::size_t(sample) * w, w};
    }
    std::span<const double> positions_at(int sample) const {
        const std::size_t w = std::size_t(n_particles) * dimension;
        return {positions.data() + std::size_t(sample) * w, w};
    }
    double velocity(int sample, int particle, int comp) const {
        return velocities[(std::size_t(sample) * n_particles + particle) * dimension + comp];
    }
    double position(int sample, int particle, int comp) const {
        return positions[(std::size_t(sample) * n_particles + particle) * dimension + comp];
    }
    double local_potential(int sample, int particle) const {
        return local_potentials[std::size_t(sample) * n_particles + particle];
    }
    double kinetic(int sample, int particle) const {
        return kinetic_per_particle[std::size_t(sample) * n_particles + particle];
    }
};

// Pooled fluctuation moments of the per-particle local potential and the
// mean per-particle kinetic energy, over all particles and samples.
struct MomentStats {
    double mean_Vi = 0.0;
    double var_Vi = 0.0;    // <(dV_i)^2>
    double fourth_Vi = 0.0; // <(dV_i)^4>
    double mean_Ki = 0.0;
    double sigma_Vi = 0.0;  // sqrt(var_Vi)
    std::size_t n_samples = 0;
};

MomentStats moment_stats(const Trajectory& traj);

// Convenience entry point: equilibrate with the configured thermostat,
// then sample an NVE production run.
Trajectory run(const SimConfig& cfg);

} // namespace pbound::mdsim

#endif
