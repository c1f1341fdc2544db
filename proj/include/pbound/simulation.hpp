#ifndef PBOUND_SIMULATION_HPP
#define PBOUND_SIMULATION_HPP

#include "pbound/forces.hpp"
#include "pbound/mdsim.hpp"
#include "pbound/rng.hpp"

#include <span>
#include <vector>

namespace pbound::mdsim {

// Single-owner MD engine. Velocity-Verlet integration; the magnetized
// Yukawa system uses a Boris step whose rotation stage degenerates to the
// identity at B = 0. Periodic boundaries, minimum image, neighbor-list
// forces rebuilt on displacement.
class Simulation {
public:
    explicit Simulation(const SimConfig& cfg);

    void step();
    Trajectory run(); // equilibrate per config, then NVE production sampling

    // Observers (tests, diagnostics)
    int n_particles() const { return n_; }
    int dimension() const { return dim_; }
    double box_length() const { return box_; }
    std::span<const double> positions() const { return pos_; }
    std::span<const double> unwrapped_positions() const { return unwrapped_; }
    std::span<const double> velocities() const { return vel_; }
    std::span<const double> local_potentials() const { return v_i_; }
    double potential_energy() const;   // sum V_i / 2
    double kinetic_energy() const;
    double total_energy() const { return kinetic_energy() + potential_energy(); }
    double instantaneous_temperature() const; // <v^2> per component
    void net_momentum(double out[3]) const;

    void set_velocities(std::span<const double> v);
    void rescale_to_temperature(double T);
    void remove_net_momentum();

private:
    void compute_forces();
    void maybe_rebuild_list();
    void verlet_step(bool thermostat_active);
    void langevin_kick();

    SimConfig cfg_;
    int n_, dim_;
    double box_, dt_;
    double b_field_ = 0.0;
    PairPotential pot_;
    double skin_ = 0.4;
    NeighborList list_;
    double accum_disp_ = 0.0; // upper bound on travel since last list build
    std::vector<double> pos_, unwrapped_, vel_, force_, v_i_;
    Rng rng_;
};

} // namespace pbound::mdsim

#endif
