#include "pbound/units.hpp"

#include <cmath>
#include <stdexcept>

namespace pbound {

double planckian_time(double temperature_K) {
    if (!(temperature_K > 0.0))
        throw std::domain_error("planckian_time: temperature must be > 0");
    return constants.hbar / (constants.kB * temperature_K);
}

double thermal_de_broglie(double mass_kg, double temperature_K) {
    if (!(mass_kg > 0.0))
        throw std::domain_error("thermal_de_broglie: mass must be > 0");
    if (!(temperature_K > 0.0))
        throw std::domain_error("thermal_de_broglie: temperature must be > 0");
    const double hbar = constants.hbar;
    return std::sqrt(2.0 * std::numbers::pi * hbar * hbar /
                     (mass_kg * constants.kB * temperature_K));
}

Dimension dimension_of(Unit u) {
    switch (u) {
        case Unit::Second:
        case Unit::Picosecond: return Dimension::Time;
        case Unit::Meter:
        case Unit::Angstrom:
        case Unit::Nanometer: return Dimension::Length;
        case Unit::Kilogram:
        case Unit::Amu: return Dimension::Mass;
        case Unit::Kelvin: return Dimension::Temperature;
        case Unit::Pascal:
        case Unit::Kilopascal:
        case Unit::Megapascal:
        case Unit::Atmosphere: return Dimension::Pressure;
        case Unit::PascalSecond:
        case Unit::MillipascalSecond:
        case Unit::MicropascalSecond: return Dimension::Viscosity;
        case Unit::SquareMeterPerSecond: return Dimension::Diffusivity;
        case Unit::PerCubicMeter:
        case Unit::MolPerLiter: return Dimension::NumberDensity;
        case Unit::KgPerCubicMeter:
        case Unit::GramPerCubicCentimeter: return Dimension::MassDensity;
        case Unit::Joule: return Dimension::Energy;
    }
    throw std::logic_error("dimension_of: unhandled unit");
}

double si_factor(Unit u) {
    switch (u) {
        case Unit::Second: return 1.0;
        case Unit::Picosecond: return 1e-12;
        case Unit::Meter: return 1.0;
        case Unit::Angstrom: return 1e-10;
        case Unit::Nanometer: return 1e-9;
        case Unit::Kilogram: return 1.0;
        case Unit::Amu: return constants.amu;
        case Unit::Kelvin: return 1.0;
        case Unit::Pascal: return 1.0;
        case Unit::Kilopascal: return 1e3;
        case Unit::Megapascal: return 1e6;
        case Unit::Atmosphere: return 101325.0;
        case Unit::PascalSecond: return 1.0;
        case Unit::MillipascalSecond: return 1e-3;
        case Unit::MicropascalSecond: return 1e-6;
        case Unit::SquareMeterPerSecond: return 1.0;
        case Unit::PerCubicMeter: return 1.0;
        case Unit::MolPerLiter: return 1e3 * constants.avogadro;
        case Unit::KgPerCubicMeter: return 1.0;
        case Unit::GramPerCubicCentimeter: return 1e3;
        case Unit::Joule: return 1.0;
    }
    throw std::logic_error("si_factor: unhandled unit");
}

std::string unit_name(Unit u) {
    switch (u) {
        case Unit::Second: return "s";
        case Unit::Picosecond: return "ps";
        case Unit::Meter: return "m";
        case Unit::Angstrom: return "A";
        case Unit::Nanometer: return "nm";
        case Unit::Kilogram: return "kg";
        case Unit::Amu: return "amu";
        case Unit::Kelvin: return "K";
        case Unit::Pascal: return "Pa";
        case Unit::Kilopascal: return "kPa";
        case Unit::Megapascal: return "MPa";
        case Unit::Atmosphere: return "atm";
        case Unit::PascalSecond: return "Pa.s";
        case Unit::MillipascalSecond: return "mPa.s";
        case Unit::MicropascalSecond: return "uPa.s";
        case Unit::SquareMeterPerSecond: return "m2/s";
        case Unit::PerCubicMeter: return "1/m3";
        case Unit::MolPerLiter: return "mol/L";
        case Unit::KgPerCubicMeter: return "kg/m3";
        case Unit::GramPerCubicCentimeter: return "g/cm3";
        case Unit::Joule: return "J";
    }
    throw std::logic_error("unit_name: unhandled unit");
}

Quantity convert(const Quantity& q, Unit target) {
    if (dimension_of(q.unit) != dimension_of(target))
        throw std::domain_error("convert: " + unit_name(q.unit) + " -> " +
                                unit_name(target) + " crosses dimensions");
    return Quantity{q.value * si_factor(q.unit) / si_factor(target), target};
}

Quantity convert_density(const Quantity& q, Unit target, double molar_mass_kg_mol) {
    const Dimension from = dimension_of(q.unit);
    const Dimension to = dimension_of(target);
    if (from == to) return convert(q, target);
    const bool density_pair =
        (from == Dimension::MassDensity && to == Dimension::NumberDensity) ||
        (from == Dimension::NumberDensity && to == Dimension::MassDensity);
    if (!density_pair)
        throw std::domain_error("convert_density: " + unit_name(q.unit) + " -> " +
                                unit_name(target) + " is not a density pair");
    if (!(molar_mass_kg_mol > 0.0))
        throw std::domain_error("convert_density: molar mass must be > 0");
    const double particle_mass = molar_mass_kg_mol / constants.avogadro;
    const double si = q.value * si_factor(q.unit);
    const double si_target = (to == Dimension::NumberDensity) ? si / particle_mass
                                                              : si * particle_mass;
    return Quantity{si_target / si_factor(target), target};
}

Quantity operator+(const Quantity& a, const Quantity& b) {
    if (dimension_of(a.unit) != dimension_of(b.unit))
        throw std::domain_error("quantity addition across dimensions");
    return Quantity{a.value + convert(b, a.unit).value, a.unit};
}

Quantity operator-(const Quantity& a, const Quantity& b) {
    if (dimension_of(a.unit) != dimension_of(b.unit))
        throw std::domain_error("quantity subtraction across dimensions");
    return Quantity{a.value - convert(b, a.unit).value, a.unit};
}

} // namespace pbound
