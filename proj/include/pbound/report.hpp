#ifndef PBOUND_REPORT_HPP
#define PBOUND_REPORT_HPP

#include "pbound/thermo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pbound::thermo {

struct ReportRow {
    std::string system;
    double min_value = 0.0;
    double ratio = 0.0;
    double T = 0.0; // K
    double P = 0.0; // MPa
    bool violated = false;
};

struct ReportTable {
    std::string id;    // "table1" .. "table9"
    std::string title;
    ScanQuantity quantity;
    ScanMode mode;
    std::optional<Phase> phase;
    bool at_one_atm = false; // isobaric tables restricted to atmospheric data
    std::vector<ReportRow> rows;
};

struct PlotSeries {
    std::string fluid;
    ScanMode mode;
    double fixed_value = 0.0;
    std::string quantity; // "eta_over_nh" or "d_ser_over_bound"
    std::vector<double> axis;   // T (isobaric) or P (isothermal)
    std::vector<double> ratio;  // value in units of the bound
};

struct BoundReport {
    std::vector<ReportTable> tables;
    std::vector<PlotSeries> plots;
    std::vector<std::string> warnings;
};

// Assembles the audit tables and the per-state ratio
// curves. Datasets are grouped by table shape; fluids ordered as in the
// registry, then by fixed coordinate.
BoundReport build_report(const std::vector<IsoDataset>& datasets,
                         const std::vector<FluidSpec>& registry);

// One CSV (4 significant digits) and one
// full-precision JSON per table, plus figdata/ plot CSVs. Deterministic:
// identical inputs give byte-identical files.
std::vector<std::string> write_report(const BoundReport& report, const std::string& out_dir);

} // namespace pbound::thermo

#endif
