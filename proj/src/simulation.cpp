#include "pbound/simulation.hpp"

#include "pbound/errors.hpp"
#include "pbound/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pbound::mdsim {

SimConfig validate(SimConfig cfg) {
    if (cfg.n_particles < 2) throw ValidationError("n_particles: must be >= 2");
    if (cfg.dimension != 2 && cfg.dimension != 3)
        throw ValidationError("dimension: must be 2 or 3");
    if (!(cfg.dt > 0.0)) throw ValidationError("dt: must be > 0");
    if (!(cfg.number_density > 0.0)) throw ValidationError("number_density: must be > 0");
    if (!(cfg.temperature > 0.0)) throw ValidationError("temperature: must be > 0");
    if (cfg.n_equil_steps < 0) throw ValidationError("n_equil_steps: must be >= 0");
    if (cfg.n_prod_steps < 0) throw ValidationError("n_prod_steps: must be >= 0");
    if (cfg.sample_stride < 1) throw ValidationError("sample_stride: must be >= 1");
    if (std::holds_alternative<Yukawa>(cfg.interaction)) {
        if (cfg.dimension != 2)
            throw ValidationError("interaction.yukawa: requires dimension == 2");
        auto& yk = std::get<Yukawa>(cfg.interaction);
        if (!(yk.screening > 0.0)) throw ValidationError("interaction.screening: must be > 0");
        if (!(yk.coupling > 0.0)) throw ValidationError("interaction.coupling: must be > 0");
        if (yk.cutoff == 0.0) yk.cutoff = yukawa_auto_cutoff(yk.screening, yk.coupling);
    } else {
        const auto& lj = std::get<LennardJones>(cfg.interaction);
        if (!(lj.cutoff > 0.0)) throw ValidationError("interaction.cutoff: must be > 0");
    }
    if (cfg.thermostat.kind == ThermostatKind::VelocityRescale && cfg.thermostat.interval < 1)
        throw ValidationError("thermostat.interval: must be >= 1");
    if (cfg.thermostat.kind == ThermostatKind::Langevin && !(cfg.thermostat.friction > 0.0))
        throw ValidationError("thermostat.friction: must be > 0");
    return cfg;
}

Simulation::Simulation(const SimConfig& cfg)
    : cfg_(validate(cfg)),
      n_(cfg_.n_particles),
      dim_(cfg_.dimension),
      dt_(cfg_.dt),
      pot_(PairPotential::make(cfg_.interaction)),
      rng_(cfg_.seed) {
    box_ = std::pow(double(n_) / cfg_.number_density, 1.0 / dim_);
    if (const auto* yk = std::get_if<Yukawa>(&cfg_.interaction)) b_field_ = yk->magnetic_field;
    if (pot_.cutoff > 0.5 * box_)
        throw ValidationError("interaction.cutoff: exceeds half the box length (" +
                              std::to_string(0.5 * box_) + ")");

    pos_ = lattice_positions(n_, dim_, box_, rng_);
    unwrapped_ = pos_;
    vel_.resize(std::size_t(n_) * dim_);
    force_.resize(std::size_t(n_) * dim_);
    v_i_.resize(n_);

    // Maxwell-Boltzmann velocities at target T, zero net momentum, exact
    // initial kinetic temperature.
    const double s = std::sqrt(cfg_.temperature);
    for (auto& v : vel_) v = s * rng_.normal();
    remove_net_momentum();
    rescale_to_temperature(cfg_.temperature);

    build_neighbor_list(pos_, n_, dim_, box_, pot_.cutoff + skin_, list_);
    compute_forces();
}

void Simulation::compute_forces() {
    forces_neighbor(pos_, n_, dim_, box_, pot_, list_, force_, v_i_);
}

void Simulation::maybe_rebuild_list() {
    // Conservative trigger: rebuild once any particle may have moved skin/2.
    if (accum_disp_ > 0.5 * skin_) {
        build_neighbor_list(pos_, n_, dim_, box_, pot_.cutoff + skin_, list_);
        accum_disp_ = 0.0;
    }
}

double Simulation::potential_energy() const {
    double u = 0.0;
    for (int i = 0; i < n_; ++i) u += v_i_[i];
    return 0.5 * u;
}

double Simulation::kinetic_energy() const {
    double k = 0.0;
    for (const auto v : vel_) k += v * v;
    return 0.5 * k;
}

double Simulation::instantaneous_temperature() const {
    double k = 0.0;
    for (const auto v : vel_) k += v * v;
    return k / (double(n_) * dim_);
}

void Simulation::net_momentum(double out[3]) const {
    out[0] = out[1] = out[2] = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < dim_; ++k) out[k] += vel_[std::size_t(i) * dim_ + k];
}

void Simulation::set_velocities(std::span<const double> v) {
    std::copy(v.begin(), v.end(), vel_.begin());
}

void Simulation::rescale_to_temperature(double T) {
    const double t_now = instantaneous_temperature();
    if (t_now <= 0.0) return;
    const double lambda = std::sqrt(T / t_now);
    for (auto& v : vel_) v *= lambda;
}

void Simulation::remove_net_momentum() {
    double p[3];
    net_momentum(p);
    for (int k = 0; k < dim_; ++k) {
        const double mean = p[k] / n_;
        for (int i = 0; i < n_; ++i) vel_[std::size_t(i) * dim_ + k] -= mean;
    }
}

void Simulation::verlet_step(bool thermostat_active) {
    const double half_dt = 0.5 * dt_;

    // half kick
    for (std::size_t i = 0; i < vel_.size(); ++i) vel_[i] += half_dt * force_[i];

    // magnetic rotation over the full step (identity at B = 0), exact
    // gyro-phase for the 2D plane normal field
    if (b_field_ != 0.0) {
        const double theta = -b_field_ * dt_; // omega_c = qB/m, q = m = 1
        const double c = std::cos(theta), s = std::sin(theta);
        for (int i = 0; i < n_; ++i) {
            double& vx = vel_[std::size_t(i) * 2 + 0];
            double& vy = vel_[std::size_t(i) * 2 + 1];
            const double nx = c * vx - s * vy;
            const double ny = s * vx + c * vy;
            vx = nx;
            vy = ny;
        }
    }

    // drift + wrap
    const double half_box = 0.5 * box_;
    double step_max_d2 = 0.0;
    for (int i = 0; i < n_; ++i) {
        double d2 = 0.0;
        for (int k = 0; k < dim_; ++k) {
            const std::size_t idx = std::size_t(i) * dim_ + k;
            const double dx = dt_ * vel_[idx];
            if (std::abs(dx) > half_box)
                throw NumericalError("integration blow-up: particle " + std::to_string(i) +
                                     " moved more than half the box in one step (reduce dt)");
            d2 += dx * dx;
            unwrapped_[idx] += dx;
            pos_[idx] += dx;
            pos_[idx] -= box_ * std::floor(pos_[idx] / box_);
        }
        if (d2 > step_max_d2) step_max_d2 = d2;
    }
    // Summing per-step maxima overestimates any particle's travel, so the
    // rebuild trigger is conservative.
    accum_disp_ += std::sqrt(step_max_d2);

    maybe_rebuild_list();
    compute_forces();

    // half kick
    for (std::size_t i = 0; i < vel_.size(); ++i) vel_[i] += half_dt * force_[i];

    if (thermostat_active && cfg_.thermostat.kind == ThermostatKind::Langevin) langevin_kick();
}

void Simulation::langevin_kick() {
    const double c1 = std::exp(-cfg_.thermostat.friction * dt_);
    const double c2 = std::sqrt(cfg_.temperature * (1.0 - c1 * c1));
    for (auto& v : vel_) v = c1 * v + c2 * rng_.normal();
}

void Simulation::step() { verlet_step(false); }

Trajectory Simulation::run() {
    // Equilibration with the configured thermostat.
    long rescale_counter = 0;
    for (long s = 0; s < cfg_.n_equil_steps; ++s) {
        verlet_step(true);
        if (cfg_.thermostat.kind == ThermostatKind::VelocityRescale &&
            ++rescale_counter >= cfg_.thermostat.interval) {
            rescale_to_temperature(cfg_.temperature);
            rescale_counter = 0;
        }
    }

    // Fine-tune passes pin the NVE time-averaged kinetic temperature to
    // the target before sampling begins. Rescaling sets the instantaneous
    // value only; probing the running mean over increasingly long NVE
    // stretches converges the post-rescale mean as well.
    if (cfg_.n_equil_steps > 0) {
        remove_net_momentum();
        rescale_to_temperature(cfg_.temperature);
        for (long probe : {500L, 1000L, 2000L, 4000L}) {
            probe = std::min(probe, std::max<long>(1, cfg_.n_equil_steps));
            double t_acc = 0.0;
            for (long s = 0; s < probe; ++s) {
                verlet_step(false);
                t_acc += instantaneous_temperature();
            }
            const double t_mean = t_acc / probe;
            const double lambda = std::sqrt(cfg_.temperature / t_mean);
            for (auto& v : vel_) v *= lambda;
        }
    }

    // NVE production sampling.
    Trajectory traj;
    traj.config = cfg_;
    traj.n_particles = n_;
    traj.dimension = dim_;
    traj.box_length = box_;
    const long n_samples = cfg_.n_prod_steps / cfg_.sample_stride + 1;
    const std::size_t width = std::size_t(n_) * dim_;
    traj.times.reserve(n_samples);
    traj.velocities.reserve(n_samples * width);
    if (cfg_.record_positions) traj.positions.reserve(n_samples * width);
    if (cfg_.record_energies) {
        traj.local_potentials.reserve(n_samples * std::size_t(n_));
        traj.kinetic_per_particle.reserve(n_samples * std::size_t(n_));
    }

    auto sample = [&](double t) {
        traj.times.push_back(t);
        traj.velocities.insert(traj.velocities.end(), vel_.begin(), vel_.end());
        if (cfg_.record_positions)
            traj.positions.insert(traj.positions.end(), unwrapped_.begin(), unwrapped_.end());
        if (cfg_.record_energies) {
            traj.local_potentials.insert(traj.local_potentials.end(), v_i_.begin(), v_i_.end());
            for (int i = 0; i < n_; ++i) {
                double k = 0.0;
                for (int c = 0; c < dim_; ++c) {
                    const double v = vel_[std::size_t(i) * dim_ + c];
                    k += v * v;
                }
                traj.kinetic_per_particle.push_back(0.5 * k);
            }
        }
    };

    sample(0.0);
    for (long s = 1; s <= cfg_.n_prod_steps; ++s) {
        verlet_step(false);
        if (s % cfg_.sample_stride == 0) sample(s * dt_);
    }
    return traj;
}

Trajectory run(const SimConfig& cfg) { return Simulation(cfg).run(); }

} // namespace pbound::mdsim
