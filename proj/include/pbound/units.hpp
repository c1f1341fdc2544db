#ifndef PBOUND_UNITS_HPP
#define PBOUND_UNITS_HPP

#include <numbers>
#include <string>

namespace pbound {

// CODATA-2018 constants. h, kB, NA are exact by SI definition; hbar is
// derived so that h == 2*pi*hbar holds to machine precision.
struct PhysicalConstants {
    double hbar;     // J s
    double h;        // J s
    double kB;       // J/K
    double amu;      // kg
    double avogadro; // 1/mol
};

constexpr PhysicalConstants codata2018() {
    constexpr double h = 6.62607015e-34;
    return PhysicalConstants{
        h / (2.0 * std::numbers::pi),
        h,
        1.380649e-23,
        1.66053906660e-27,
        6.02214076e23,
    };
}

inline constexpr PhysicalConstants constants = codata2018();
inline constexpr const char* constants_version = "CODATA-2018";

// tau_P = hbar / (kB T)
double planckian_time(double temperature_K);

// lambda_T = sqrt(2 pi hbar^2 / (m kB T))
double thermal_de_broglie(double mass_kg, double temperature_K);

//======================================================================
// Tagged quantities. Used at module boundaries and file I/O; numeric
// kernels work on raw doubles in SI or reduced units.
//======================================================================

enum class Dimension {
    Time,
    Length,
    Mass,
    Temperature,
    Pressure,
    Viscosity,
    Diffusivity,
    NumberDensity,
    MassDensity,
    Energy,
};

enum class Unit {
    Second,
    Picosecond,
    Meter,
    Angstrom,
    Nanometer,
    Kilogram,
    Amu,
    Kelvin,
    Pascal,
    Kilopascal,
    Megapascal,
    Atmosphere,
    PascalSecond,
    MillipascalSecond,
    MicropascalSecond,
    SquareMeterPerSecond,
    PerCubicMeter,
    MolPerLiter, // amount density; converts to 1/m^3 via Avogadro
    KgPerCubicMeter,
    GramPerCubicCentimeter,
    Joule,
};

Dimension dimension_of(Unit u);
double si_factor(Unit u); // multiplier to the SI base unit of its dimension
std::string unit_name(Unit u);

struct Quantity {
    double value;
    Unit unit;

    double in_si() const { return value * si_factor(unit); }
};

// Same-dimension conversion; cross-dimension requests throw.
Quantity convert(const Quantity& q, Unit target);

// Density-family conversion (mass density <-> number density) needs the
// molar mass (kg/mol).
Quantity convert_density(const Quantity& q, Unit target, double molar_mass_kg_mol);

Quantity operator+(const Quantity& a, const Quantity& b);
Quantity operator-(const Quantity& a, const Quantity& b);

} // namespace pbound

#endif
