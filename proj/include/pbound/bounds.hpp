#ifndef PBOUND_BOUNDS_HPP
#define PBOUND_BOUNDS_HPP

#include "pbound/mdsim.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace pbound::bounds {

// All inputs and outputs in SI.

double diffusion_bound_chaos(double mass_kg);                 // hbar / (2 pi m)
double lyapunov_bound(double temperature_K);                  // 2 pi kB T / hbar
double transport_bound_generic(double ydot_sq, double temperature_K);
double viscosity_bound(double number_density_per_m3);         // n h
double collision_time_viscosity(double number_density_per_m3, double temperature_K,
                                double tau_coll_s);           // n kB T tau
double kinematic_viscosity_bound(double mass_kg);             // h / m
double t_min_bound(double sigma_H_J);                         // hbar / (2 sigma)
double disorder_d_plus_bound(double mean_Ki_J, double sigma_V_J, double mass_kg,
                             int dimension);                  // hbar <K> / (8 m d sigma)

// Observable-dependent alternative constant, hbar / (2 sqrt(d) m);
// externally sourced, reported alongside the chaos bound for context.
double diffusion_bound_chaos_alt(double mass_kg, int dimension);

// Moment-based D+ bound:
// hbar kB T / (4 sqrt(3) m Q4) * max{ Q4/Q2, 3^(1/4) },
// Q2 = <dV^2>^(1/2), Q4 = <dV^4>^(1/4).
double diffusion_bound_moment(double var_V_J2, double fourth_V_J4, double mass_kg,
                              double temperature_K);
double diffusion_bound_moment(const mdsim::MomentStats& moments, double mass_kg,
                              double temperature_K);

struct MbCheckResult {
    double estimate = 0.0;       // Monte-Carlo <h m / p^2>
    double std_error = 0.0;
    double expected = 0.0;       // h / (kB T)
    double z = 0.0;
    std::uint64_t n_samples = 0;
};

// Plain Monte-Carlo average of h*m/|p|^2 over 3D Maxwell-Boltzmann
// momenta. Note the integrand has an infinite second moment (tail index
// 3/2 from p -> 0), so the reported standard error is a typical-case
// statistic rather than a CLT guarantee.
MbCheckResult mb_inverse_p2_check(double mass_kg, double temperature_K,
                                  std::uint64_t n_samples, std::uint64_t seed);

// Three-valued comparison of a measured transport value against a bound,
// using the caller-supplied uncertainty.
enum class Verdict { Satisfied, Violated, WithinError };
Verdict compare_to_bound(double measured, double measured_error, double bound);
std::string verdict_name(Verdict v);

// Bundle of every evaluator with all inputs supplied; fields left
// unset by cmd_bounds when their inputs are absent.
struct BoundSet {
    std::optional<double> d_bound_chaos;
    std::optional<double> d_bound_chaos_alt;
    std::optional<double> d_bound_moment;
    std::optional<double> eta_bound;
    std::optional<double> nu_bound;
    std::optional<double> tau_planck;
    std::optional<double> lambda_T;
    std::optional<double> lyapunov_max;
    std::optional<double> t_min;
    std::optional<double> d_plus_disorder;
};

} // namespace pbound::bounds

#endif
