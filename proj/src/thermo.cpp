#include "pbound/thermo.hpp"

#include "pbound/bounds.hpp"
#include "pbound/errors.hpp"
#include "pbound/units.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pbound::thermo {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

} // namespace

double FluidSpec::particle_mass() const { return molar_mass / constants.avogadro; }

std::string phase_name(Phase p) {
    switch (p) {
        case Phase::Liquid: return "liquid";
        case Phase::Vapor: return "vapor";
        case Phase::Supercritical: return "supercritical";
        case Phase::Unknown: return "unknown";
    }
    return "?";
}

Phase parse_phase(const std::string& s) {
    const std::string v = lower(trim(s));
    if (v == "liquid") return Phase::Liquid;
    if (v == "vapor" || v == "gas") return Phase::Vapor;
    if (v == "supercritical") return Phase::Supercritical;
    if (v.empty() || v == "unknown") return Phase::Unknown;
    throw ValidationError("unknown phase label: '" + s + "'");
}

double StateRecord::number_density(const FluidSpec& fluid) const {
    return mass_density / fluid.particle_mass();
}

double ser_diffusion(double temperature_K, double viscosity_Pa_s, double radius_m) {
    if (!(temperature_K > 0.0)) throw std::domain_error("ser_diffusion: T must be > 0");
    if (!(viscosity_Pa_s > 0.0)) throw std::domain_error("ser_diffusion: eta must be > 0");
    if (!(radius_m > 0.0)) throw std::domain_error("ser_diffusion: R must be > 0");
    return constants.kB * temperature_K /
           (6.0 * std::numbers::pi * viscosity_Pa_s * radius_m);
}

std::string quantity_name(ScanQuantity q) {
    switch (q) {
        case ScanQuantity::DSer: return "d_ser";
        case ScanQuantity::Eta: return "eta";
        case ScanQuantity::EtaOverNh: return "eta_over_nh";
        case ScanQuantity::Nu: return "nu";
    }
    return "?";
}

//======================================================================
// Parsing
//======================================================================

namespace {

// Column header cells look like "Temperature [K]"; the bracket tag picks
// the unit.
struct Column {
    enum class Kind { Temperature, Pressure, Density, Viscosity, Phase, Ignore } kind;
    Unit unit = Unit::Kelvin;
    bool molar_density = false; // mol/L needs the molar mass
};

Column parse_column_header(const std::string& cell) {
    const std::string low = lower(cell);
    std::string tag;
    const auto lb = cell.find('['), rb = cell.find(']');
    if (lb != std::string::npos && rb != std::string::npos && rb > lb)
        tag = lower(trim(cell.substr(lb + 1, rb - lb - 1)));

    Column col{Column::Kind::Ignore, Unit::Kelvin, false};
    if (low.rfind("temperature", 0) == 0) {
        col.kind = Column::Kind::Temperature;
        if (tag.empty() || tag == "k") col.unit = Unit::Kelvin;
        else throw ValidationError("unknown temperature unit tag '" + tag + "'");
    } else if (low.rfind("pressure", 0) == 0) {
        col.kind = Column::Kind::Pressure;
        if (tag == "mpa" || tag.empty()) col.unit = Unit::Megapascal;
        else if (tag == "kpa") col.unit = Unit::Kilopascal;
        else if (tag == "pa") col.unit = Unit::Pascal;
        else if (tag == "atm") col.unit = Unit::Atmosphere;
        else throw ValidationError("unknown pressure unit tag '" + tag + "'");
    } else if (low.rfind("density", 0) == 0) {
        col.kind = Column::Kind::Density;
        if (tag == "kg/m3" || tag.empty()) col.unit = Unit::KgPerCubicMeter;
        else if (tag == "g/cm3") col.unit = Unit::GramPerCubicCentimeter;
        else if (tag == "mol/l") { col.unit = Unit::MolPerLiter; col.molar_density = true; }
        else throw ValidationError("unknown density unit tag '" + tag + "'");
    } else if (low.rfind("viscosity", 0) == 0) {
        col.kind = Column::Kind::Viscosity;
        if (tag == "pa.s" || tag == "pa*s" || tag.empty()) col.unit = Unit::PascalSecond;
        else if (tag == "mpa.s" || tag == "mpa*s") col.unit = Unit::MillipascalSecond;
        else if (tag == "upa.s" || tag == "upa*s") col.unit = Unit::MicropascalSecond;
        else throw ValidationError("unknown viscosity unit tag '" + tag + "'");
    } else if (low.rfind("phase", 0) == 0) {
        col.kind = Column::Kind::Phase;
    }
    return col;
}

} // namespace

ParseResult parse_fluid_table(std::istream& in, const FluidSpec& fluid, ScanMode mode,
                              double fixed_value) {
    ParseResult result;
    result.dataset.fluid = fluid;
    result.dataset.mode = mode;
    result.dataset.fixed_value = fixed_value;

    std::string line;
    std::vector<Column> columns;
    bool have_header = false;
    bool any_phase_column = false;
    int line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto cells = split_csv(t);
        if (!have_header) {
            for (const auto& c : cells) columns.push_back(parse_column_header(c));
            const auto has = [&](Column::Kind k) {
                return std::any_of(columns.begin(), columns.end(),
                                   [&](const Column& c) { return c.kind == k; });
            };
            if (!has(Column::Kind::Temperature))
                throw ValidationError("fluid table: missing required column 'Temperature'");
            if (!has(Column::Kind::Pressure))
                throw ValidationError("fluid table: missing required column 'Pressure'");
            if (!has(Column::Kind::Density))
                throw ValidationError("fluid table: missing required column 'Density'");
            if (!has(Column::Kind::Viscosity))
                throw ValidationError("fluid table: missing required column 'Viscosity'");
            any_phase_column = has(Column::Kind::Phase);
            have_header = true;
            continue;
        }

        if (cells.size() < columns.size())
            throw ValidationError("fluid table line " + std::to_string(line_no) +
                                  ": expected " + std::to_string(columns.size()) + " cells");
        StateRecord rec;
        bool has_viscosity = false;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const Column& col = columns[c];
            const std::string& cell = cells[c];
            if (col.kind == Column::Kind::Phase) {
                rec.phase = parse_phase(cell);
                continue;
            }
            if (col.kind == Column::Kind::Ignore) continue;
            if (cell.empty()) {
                if (col.kind == Column::Kind::Viscosity) continue; // dropped below
                throw ValidationError("fluid table line " + std::to_string(line_no) +
                                      ": empty required cell");
            }
            double value;
            try {
                value = std::stod(cell);
            } catch (const std::exception&) {
                throw ValidationError("fluid table line " + std::to_string(line_no) +
                                      ": bad number '" + cell + "'");
            }
            switch (col.kind) {
                case Column::Kind::Temperature:
                    rec.T = Quantity{value, col.unit}.in_si();
                    break;
                case Column::Kind::Pressure:
                    rec.P = convert(Quantity{value, col.unit}, Unit::Megapascal).value;
                    break;
                case Column::Kind::Density:
                    rec.mass_density =
                        col.molar_density
                            ? convert_density(Quantity{value, col.unit},
                                              Unit::KgPerCubicMeter, fluid.molar_mass).value
                            : convert(Quantity{value, col.unit}, Unit::KgPerCubicMeter).value;
                    break;
                case Column::Kind::Viscosity:
                    rec.viscosity = convert(Quantity{value, col.unit}, Unit::PascalSecond).value;
                    has_viscosity = true;
                    break;
                default: break;
            }
        }
        if (!has_viscosity) {
            ++result.dropped_rows;
            continue;
        }
        if (!(rec.T > 0.0) || !(rec.P > 0.0) || !(rec.mass_density > 0.0) ||
            !(rec.viscosity > 0.0))
            throw ValidationError("fluid table line " + std::to_string(line_no) +
                                  ": non-positive state value");
        result.dataset.records.push_back(rec);
    }
    if (!have_header) throw ValidationError("fluid table: no column header row");

    auto& recs = result.dataset.records;
    const bool isobaric = (mode == ScanMode::Isobaric);
    std::sort(recs.begin(), recs.end(), [&](const StateRecord& a, const StateRecord& b) {
        return isobaric ? a.T < b.T : a.P < b.P;
    });
    for (const auto& r : recs) {
        const double fixed = isobaric ? r.P : r.T;
        if (std::abs(fixed - fixed_value) > 1e-3 * std::abs(fixed_value))
            throw ValidationError("fluid table: fixed coordinate varies by more than 0.1% (" +
                                  std::to_string(fixed) + " vs " +
                                  std::to_string(fixed_value) + ")");
    }
    for (std::size_t i = 1; i < recs.size(); ++i) {
        const double a = isobaric ? recs[i - 1].T : recs[i - 1].P;
        const double b = isobaric ? recs[i].T : recs[i].P;
        if (!(b > a))
            throw ValidationError("fluid table: duplicate scan coordinate " + std::to_string(b));
    }
    if (!any_phase_column) label_phases_by_density_split(result.dataset);
    return result;
}

ParseResult parse_fluid_table_file(const std::string& path,
                                   const std::vector<FluidSpec>& registry) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open fluid table: " + path);

    // Leading "# key: value" metadata names the fluid, mode and fixed value.
    std::string fluid_name, mode_str, fixed_str;
    std::string line;
    auto pos = in.tellg();
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty()) { pos = in.tellg(); continue; }
        if (t[0] != '#') break;
        const auto colon = t.find(':');
        if (colon != std::string::npos) {
            const std::string key = lower(trim(t.substr(1, colon - 1)));
            const std::string val = trim(t.substr(colon + 1));
            if (key == "fluid") fluid_name = val;
            else if (key == "mode") mode_str = lower(val);
            else if (key == "fixed") fixed_str = val;
        }
        pos = in.tellg();
    }
    if (fluid_name.empty() || mode_str.empty() || fixed_str.empty())
        throw ValidationError(path + ": missing '# fluid:', '# mode:' or '# fixed:' header");

    const FluidSpec& fluid = find_fluid(registry, fluid_name);
    ScanMode mode;
    if (mode_str == "isobaric") mode = ScanMode::Isobaric;
    else if (mode_str == "isothermal") mode = ScanMode::Isothermal;
    else throw ValidationError(path + ": mode must be isobaric or isothermal");

    // "0.101325 MPa" or "63.15 K"
    std::stringstream fs(fixed_str);
    double fixed_num;
    std::string fixed_unit;
    fs >> fixed_num >> fixed_unit;
    if (!fs || fixed_unit.empty())
        throw ValidationError(path + ": fixed header needs '<value> <unit>'");
    const std::string fu = lower(fixed_unit);
    if (mode == ScanMode::Isobaric) {
        if (fu == "mpa") {}
        else if (fu == "atm") fixed_num = convert(Quantity{fixed_num, Unit::Atmosphere},
                                                  Unit::Megapascal).value;
        else if (fu == "kpa") fixed_num = convert(Quantity{fixed_num, Unit::Kilopascal},
                                                  Unit::Megapascal).value;
        else throw ValidationError(path + ": fixed pressure unit must be MPa/kPa/atm");
    } else if (fu != "k") {
        throw ValidationError(path + ": fixed temperature unit must be K");
    }

    in.clear();
    in.seekg(pos);
    return parse_fluid_table(in, fluid, mode, fixed_num);
}

std::vector<FluidSpec> load_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open registry: " + path);
    std::vector<FluidSpec> out;
    std::string line;
    bool header_skipped = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!header_skipped) { header_skipped = true; continue; }
        auto cells = split_csv(t);
        if (cells.size() < 3)
            throw ValidationError(path + " line " + std::to_string(line_no) +
                                  ": expected name,molar_mass,kinetic_diameter");
        FluidSpec f;
        f.name = cells[0];
        f.molar_mass = std::stod(cells[1]) * 1e-3;        // g/mol -> kg/mol
        f.kinetic_diameter = std::stod(cells[2]) * 1e-10; // Angstrom -> m
        if (!(f.molar_mass > 0.0) || !(f.kinetic_diameter > 0.0))
            throw ValidationError(path + ": non-positive registry entry for " + f.name);
        out.push_back(f);
    }
    return out;
}

const FluidSpec& find_fluid(const std::vector<FluidSpec>& registry, const std::string& name) {
    for (const auto& f : registry)
        if (f.name == name) return f;
    throw ValidationError("fluid missing from registry: " + name);
}

//======================================================================
// Scans
//======================================================================

void label_phases_by_density_split(IsoDataset& ds) {
    auto& recs = ds.records;
    if (recs.size() < 2) {
        for (auto& r : recs) r.phase = Phase::Unknown;
        return;
    }
    double best_ratio = 1.0;
    std::size_t split = 0;
    for (std::size_t i = 1; i < recs.size(); ++i) {
        const double hi = std::max(recs[i - 1].mass_density, recs[i].mass_density);
        const double lo = std::min(recs[i - 1].mass_density, recs[i].mass_density);
        if (lo <= 0.0) continue;
        if (hi / lo > best_ratio) {
            best_ratio = hi / lo;
            split = i;
        }
    }
    if (best_ratio < 2.0) { // no discontinuity: ambiguous
        for (auto& r : recs) r.phase = Phase::Unknown;
        return;
    }
    const bool first_side_denser = recs[split - 1].mass_density > recs[split].mass_density;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const bool first_side = i < split;
        const bool dense = first_side == first_side_denser;
        recs[i].phase = dense ? Phase::Liquid : Phase::Vapor;
    }
}

ScanResult scan_minimum(const IsoDataset& ds, ScanQuantity quantity,
                        std::optional<Phase> phase_filter) {
    const FluidSpec& fluid = ds.fluid;
    if (quantity == ScanQuantity::DSer && !(fluid.kinetic_diameter > 0.0))
        throw ValidationError("scan_minimum: d_ser needs a kinetic diameter for " + fluid.name);

    const double m = fluid.particle_mass();
    auto evaluate = [&](const StateRecord& r) {
        switch (quantity) {
            case ScanQuantity::DSer:
                return ser_diffusion(r.T, r.viscosity, fluid.molecular_radius());
            case ScanQuantity::Eta:
                return r.viscosity;
            case ScanQuantity::EtaOverNh:
                return r.viscosity / bounds::viscosity_bound(r.number_density(fluid));
            case ScanQuantity::Nu:
                return r.viscosity / r.mass_density;
        }
        return 0.0;
    };

    const StateRecord* best = nullptr;
    double best_val = 0.0;
    for (const auto& r : ds.records) {
        if (phase_filter && r.phase != *phase_filter) continue;
        const double v = evaluate(r);
        if (!best || v < best_val) {
            best = &r;
            best_val = v;
        }
    }
    if (!best)
        throw ValidationError("scan_minimum: no records left after phase filter (" +
                              (phase_filter ? phase_name(*phase_filter) : "none") + ") for " +
                              fluid.name);

    ScanResult res;
    res.quantity = quantity;
    res.phase_filter = phase_filter;
    res.min_value = best_val;
    res.at_T = best->T;
    res.at_P = best->P;
    switch (quantity) {
        case ScanQuantity::DSer:
            res.ratio_to_bound = best_val / bounds::diffusion_bound_chaos(m);
            break;
        case ScanQuantity::Eta:
            res.ratio_to_bound = best_val / bounds::viscosity_bound(best->number_density(fluid));
            break;
        case ScanQuantity::EtaOverNh:
            res.ratio_to_bound = best_val; // already in units of the bound
            break;
        case ScanQuantity::Nu:
            res.ratio_to_bound = best_val / bounds::kinematic_viscosity_bound(m);
            break;
    }
    res.violated = res.ratio_to_bound < 1.0;
    return res;
}

} // namespace pbound::thermo
