#include "pbound/report.hpp"

#include "pbound/bounds.hpp"
#include "pbound/errors.hpp"
#include "pbound/units.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace pbound::thermo {

namespace {

constexpr double one_atm_mpa = 0.101325;

bool is_one_atm(double p_mpa) { return std::abs(p_mpa - one_atm_mpa) <= 0.005 * one_atm_mpa; }

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

struct TableSpec {
    const char* id;
    const char* title;
    ScanQuantity quantity;
    ScanMode mode;
    std::optional<Phase> phase;
    bool at_one_atm;
};

// Audit table set: D_SER minima (isobaric liquid/vapor,
// isothermal vapor), viscosity minima per phase and scan mode, the
// eta/(n h) isothermal-liquid table, and kinematic-viscosity minima.
const TableSpec table_specs[] = {
    {"table1", "minimum SER diffusion constant, isobaric (1 atm), liquid",
     ScanQuantity::DSer, ScanMode::Isobaric, Phase::Liquid, true},
    {"table2", "minimum SER diffusion constant, isobaric (1 atm), vapor",
     ScanQuantity::DSer, ScanMode::Isobaric, Phase::Vapor, true},
    {"table3", "minimum SER diffusion constant, isothermal, vapor",
     ScanQuantity::DSer, ScanMode::Isothermal, Phase::Vapor, false},
    {"table4", "minimum shear viscosity, isothermal, liquid",
     ScanQuantity::Eta, ScanMode::Isothermal, Phase::Liquid, false},
    {"table5", "minimum shear viscosity, isobaric (1 atm), liquid",
     ScanQuantity::Eta, ScanMode::Isobaric, Phase::Liquid, true},
    {"table6", "minimum shear viscosity, isothermal, vapor",
     ScanQuantity::Eta, ScanMode::Isothermal, Phase::Vapor, false},
    {"table7", "minimum shear viscosity, isobaric (1 atm), vapor",
     ScanQuantity::Eta, ScanMode::Isobaric, Phase::Vapor, true},
    {"table8", "minimum eta/(n h), isothermal, liquid",
     ScanQuantity::EtaOverNh, ScanMode::Isothermal, Phase::Liquid, false},
    {"table9", "minimum kinematic viscosity, isobaric",
     ScanQuantity::Nu, ScanMode::Isobaric, std::nullopt, false},
};

bool dataset_has_phase(const IsoDataset& ds, Phase p) {
    return std::any_of(ds.records.begin(), ds.records.end(),
                       [&](const StateRecord& r) { return r.phase == p; });
}

} // namespace

BoundReport build_report(const std::vector<IsoDataset>& datasets,
                         const std::vector<FluidSpec>& registry) {
    BoundReport report;
    if (datasets.empty()) {
        report.warnings.push_back("no datasets supplied; report is empty");
        for (const auto& spec : table_specs)
            report.tables.push_back(ReportTable{spec.id, spec.title, spec.quantity, spec.mode,
                                                spec.phase, spec.at_one_atm, {}});
        return report;
    }

    // Registry order, then ascending fixed coordinate.
    std::vector<const IsoDataset*> ordered;
    for (const auto& ds : datasets) {
        find_fluid(registry, ds.fluid.name); // throws when a fluid is unregistered
        ordered.push_back(&ds);
    }
    auto registry_index = [&](const std::string& name) {
        for (std::size_t i = 0; i < registry.size(); ++i)
            if (registry[i].name == name) return i;
        return registry.size();
    };
    std::stable_sort(ordered.begin(), ordered.end(),
                     [&](const IsoDataset* a, const IsoDataset* b) {
                         const auto ia = registry_index(a->fluid.name);
                         const auto ib = registry_index(b->fluid.name);
                         if (ia != ib) return ia < ib;
                         if (a->mode != b->mode) return a->mode == ScanMode::Isobaric;
                         return a->fixed_value < b->fixed_value;
                     });

    for (const auto& spec : table_specs) {
        ReportTable table{spec.id, spec.title, spec.quantity, spec.mode, spec.phase,
                          spec.at_one_atm, {}};
        for (const IsoDataset* ds : ordered) {
            if (ds->mode != spec.mode) continue;
            if (spec.at_one_atm && !is_one_atm(ds->fixed_value)) continue;
            if (spec.phase && !dataset_has_phase(*ds, *spec.phase)) continue;
            const ScanResult res = scan_minimum(*ds, spec.quantity, spec.phase);
            table.rows.push_back(ReportRow{ds->fluid.name, res.min_value, res.ratio_to_bound,
                                           res.at_T, res.at_P, res.violated});
        }
        report.tables.push_back(std::move(table));
    }

    // Fig-style ratio curves: every state point in units of the bound.
    for (const IsoDataset* ds : ordered) {
        PlotSeries eta_series{ds->fluid.name, ds->mode, ds->fixed_value, "eta_over_nh", {}, {}};
        PlotSeries d_series{ds->fluid.name, ds->mode, ds->fixed_value, "d_ser_over_bound", {}, {}};
        const double d_bound = bounds::diffusion_bound_chaos(ds->fluid.particle_mass());
        for (const auto& r : ds->records) {
            const double axis = (ds->mode == ScanMode::Isobaric) ? r.T : r.P;
            eta_series.axis.push_back(axis);
            eta_series.ratio.push_back(r.viscosity /
                                       bounds::viscosity_bound(r.number_density(ds->fluid)));
            d_series.axis.push_back(axis);
            d_series.ratio.push_back(
                ser_diffusion(r.T, r.viscosity, ds->fluid.molecular_radius()) / d_bound);
        }
        report.plots.push_back(std::move(eta_series));
        report.plots.push_back(std::move(d_series));
    }
    return report;
}

std::vector<std::string> write_report(const BoundReport& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    fs::create_directories(out_dir);
    fs::create_directories(fs::path(out_dir) / "figdata");

    for (const auto& table : report.tables) {
        const fs::path csv_path = fs::path(out_dir) / (table.id + "_" +
                                                       quantity_name(table.quantity) + ".csv");
        std::ofstream csv(csv_path);
        csv << "# " << table.title << "\n";
        csv << "system,min_value,ratio,T_K,P_MPa,violated\n";
        for (const auto& row : table.rows)
            csv << row.system << ',' << fmt("%.4g", row.min_value) << ','
                << fmt("%.4g", row.ratio) << ',' << fmt("%.4g", row.T) << ','
                << fmt("%.4g", row.P) << ',' << (row.violated ? "true" : "false") << "\n";
        written.push_back(csv_path.string());

        nlohmann::json j;
        j["table"] = table.id;
        j["title"] = table.title;
        j["quantity"] = quantity_name(table.quantity);
        j["mode"] = table.mode == ScanMode::Isobaric ? "isobaric" : "isothermal";
        j["phase"] = table.phase ? phase_name(*table.phase) : "all";
        j["rows"] = nlohmann::json::array();
        for (const auto& row : table.rows)
            j["rows"].push_back({{"system", row.system},
                                 {"min_value", row.min_value},
                                 {"ratio", row.ratio},
                                 {"T_K", row.T},
                                 {"P_MPa", row.P},
                                 {"violated", row.violated}});
        const fs::path json_path = csv_path.parent_path() / (csv_path.stem().string() + ".json");
        std::ofstream js(json_path);
        js << j.dump(2) << "\n";
        written.push_back(json_path.string());
    }

    for (const auto& plot : report.plots) {
        const std::string mode = plot.mode == ScanMode::Isobaric ? "isobaric" : "isothermal";
        const std::string tag = fmt("%.6g", plot.fixed_value) +
                                (plot.mode == ScanMode::Isobaric ? "MPa" : "K");
        const fs::path path = fs::path(out_dir) / "figdata" /
                              (plot.fluid + "_" + mode + "_" + tag + "_" + plot.quantity + ".csv");
        std::ofstream f(path);
        f << (plot.mode == ScanMode::Isobaric ? "T_K" : "P_MPa") << ",ratio_to_bound\n";
        for (std::size_t i = 0; i < plot.axis.size(); ++i)
            f << fmt("%.10g", plot.axis[i]) << ',' << fmt("%.10g", plot.ratio[i]) << "\n";
        written.push_back(path.string());
    }
    return written;
}

} // namespace pbound::thermo
