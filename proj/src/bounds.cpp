#include "pbound/bounds.hpp"

#include "pbound/rng.hpp"
#include "pbound/units.hpp"

#include <cmath>
#include <stdexcept>

namespace pbound::bounds {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

void require_positive(double x, const char* what) {
    if (!(x > 0.0)) throw std::domain_error(std::string(what) + " must be > 0");
}
} // namespace

double diffusion_bound_chaos(double mass_kg) {
    require_positive(mass_kg, "mass");
    return constants.hbar / (two_pi * mass_kg);
}

double diffusion_bound_chaos_alt(double mass_kg, int dimension) {
    require_positive(mass_kg, "mass");
    if (dimension < 1 || dimension > 3) throw std::domain_error("dimension must be 1..3");
    return constants.hbar / (2.0 * std::sqrt(double(dimension)) * mass_kg);
}

double lyapunov_bound(double temperature_K) {
    require_positive(temperature_K, "temperature");
    return two_pi * constants.kB * temperature_K / constants.hbar;
}

double transport_bound_generic(double ydot_sq, double temperature_K) {
    if (ydot_sq < 0.0) throw std::domain_error("mean-square rate must be >= 0");
    require_positive(temperature_K, "temperature");
    return constants.hbar * ydot_sq / (two_pi * constants.kB * temperature_K);
}

double viscosity_bound(double number_density_per_m3) {
    require_positive(number_density_per_m3, "number density");
    return number_density_per_m3 * constants.h;
}

double collision_time_viscosity(double number_density_per_m3, double temperature_K,
                                double tau_coll_s) {
    require_positive(number_density_per_m3, "number density");
    require_positive(temperature_K, "temperature");
    require_positive(tau_coll_s, "collision time");
    return number_density_per_m3 * constants.kB * temperature_K * tau_coll_s;
}

double kinematic_viscosity_bound(double mass_kg) {
    require_positive(mass_kg, "mass");
    return constants.h / mass_kg;
}

double t_min_bound(double sigma_H_J) {
    require_positive(sigma_H_J, "energy standard deviation");
    return constants.hbar / (2.0 * sigma_H_J);
}

double disorder_d_plus_bound(double mean_Ki_J, double sigma_V_J, double mass_kg,
                             int dimension) {
    require_positive(mean_Ki_J, "mean kinetic energy");
    require_positive(sigma_V_J, "potential standard deviation");
    require_positive(mass_kg, "mass");
    if (dimension < 1 || dimension > 3) throw std::domain_error("dimension must be 1..3");
    return constants.hbar * mean_Ki_J / (8.0 * mass_kg * dimension * sigma_V_J);
}

double diffusion_bound_moment(double var_V_J2, double fourth_V_J4, double mass_kg,
                              double temperature_K) {
    require_positive(var_V_J2, "potential variance");
    require_positive(fourth_V_J4, "potential fourth moment");
    require_positive(mass_kg, "mass");
    require_positive(temperature_K, "temperature");
    const double q2 = std::sqrt(var_V_J2);
    const double q4 = std::pow(fourth_V_J4, 0.25);
    const double branch = std::max(q4 / q2, std::pow(3.0, 0.25));
    return constants.hbar * constants.kB * temperature_K /
           (4.0 * std::sqrt(3.0) * mass_kg * q4) * branch;
}

double diffusion_bound_moment(const mdsim::MomentStats& moments, double mass_kg,
                              double temperature_K) {
    return diffusion_bound_moment(moments.var_Vi, moments.fourth_Vi, mass_kg, temperature_K);
}

MbCheckResult mb_inverse_p2_check(double mass_kg, double temperature_K,
                                  std::uint64_t n_samples, std::uint64_t seed) {
    require_positive(mass_kg, "mass");
    require_positive(temperature_K, "temperature");
    if (n_samples < 10000) throw std::domain_error("n_samples must be >= 1e4");

    const double sigma_p = std::sqrt(mass_kg * constants.kB * temperature_K);
    Rng rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        const double px = sigma_p * rng.normal();
        const double py = sigma_p * rng.normal();
        const double pz = sigma_p * rng.normal();
        const double y = constants.h * mass_kg / (px * px + py * py + pz * pz);
        sum += y;
        sum_sq += y * y;
    }
    MbCheckResult r;
    r.n_samples = n_samples;
    r.estimate = sum / double(n_samples);
    const double var = (sum_sq / double(n_samples) - r.estimate * r.estimate) *
                       double(n_samples) / double(n_samples - 1);
    r.std_error = std::sqrt(var / double(n_samples));
    r.expected = constants.h / (constants.kB * temperature_K);
    r.z = (r.estimate - r.expected) / r.std_error;
    return r;
}

Verdict compare_to_bound(double measured, double measured_error, double bound) {
    if (measured - 2.0 * measured_error >= bound) return Verdict::Satisfied;
    if (measured + 2.0 * measured_error < bound) return Verdict::Violated;
    return Verdict::WithinError;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Satisfied: return "satisfied";
        case Verdict::Violated: return "violated";
        case Verdict::WithinError: return "within-error";
    }
    return "?";
}

} // namespace pbound::bounds
