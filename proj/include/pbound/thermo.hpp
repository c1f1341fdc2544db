#ifndef PBOUND_THERMO_HPP
#define PBOUND_THERMO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pbound::thermo {

struct FluidSpec {
    std::string name;
    double molar_mass = 0.0;       // kg/mol
    double kinetic_diameter = 0.0; // m (Breck registry)

    double molecular_radius() const { return 0.5 * kinetic_diameter; }
    double particle_mass() const; // kg
};

enum class Phase { Liquid, Vapor, Supercritical, Unknown };
std::string phase_name(Phase p);
Phase parse_phase(const std::string& s);

struct StateRecord {
    double T = 0.0;            // K
    double P = 0.0;            // MPa
    double mass_density = 0.0; // kg/m^3
    double viscosity = 0.0;    // Pa s
    Phase phase = Phase::Unknown;

    double number_density(const FluidSpec& fluid) const; // 1/m^3
};

enum class ScanMode { Isobaric, Isothermal };

struct IsoDataset {
    FluidSpec fluid;
    ScanMode mode = ScanMode::Isobaric;
    double fixed_value = 0.0; // K (isothermal) or MPa (isobaric)
    std::vector<StateRecord> records; // sorted by the varying coordinate
};

struct ParseResult {
    IsoDataset dataset;
    int dropped_rows = 0; // rows without a viscosity value
};

// Self-describing fluid CSV: "# fluid/mode/fixed" headers, a column header
// row carrying unit tags in brackets, then data rows. See the repo docs
// for the exact format.
ParseResult parse_fluid_table(std::istream& in, const FluidSpec& fluid, ScanMode mode,
                              double fixed_value);
ParseResult parse_fluid_table_file(const std::string& path,
                                   const std::vector<FluidSpec>& registry);

// Registry CSV: name, molar mass (g/mol), kinetic diameter (Angstrom).
std::vector<FluidSpec> load_registry(const std::string& path);
const FluidSpec& find_fluid(const std::vector<FluidSpec>& registry, const std::string& name);

// Stokes-Einstein: D = kB T / (6 pi eta R).
double ser_diffusion(double temperature_K, double viscosity_Pa_s, double radius_m);

enum class ScanQuantity { DSer, Eta, EtaOverNh, Nu };
std::string quantity_name(ScanQuantity q);

struct ScanResult {
    ScanQuantity quantity;
    std::optional<Phase> phase_filter;
    double min_value = 0.0;
    double ratio_to_bound = 0.0;
    double at_T = 0.0;
    double at_P = 0.0;
    bool violated = false; // ratio < 1
};

// Grid minimum of the quantity over the (optionally phase-filtered)
// records; no interpolation.
ScanResult scan_minimum(const IsoDataset& ds, ScanQuantity quantity,
                        std::optional<Phase> phase_filter);

// When the source file carries no phase column, label records by the
// largest density discontinuity along the scan axis (higher-density side
// is liquid); Unknown when no clear split exists.
void label_phases_by_density_split(IsoDataset& ds);

} // namespace pbound::thermo

#endif
