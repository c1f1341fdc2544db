#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pbound/bounds.hpp"
#include "pbound/errors.hpp"
#include "pbound/report.hpp"
#include "pbound/thermo.hpp"
#include "pbound/units.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pbound;
using namespace pbound::thermo;

namespace {

const std::string data_dir = PBOUND_DATA_DIR;

FluidSpec argon() { return FluidSpec{"Ar", 39.948e-3, 3.40e-10}; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const ReportTable& table_by_id(const BoundReport& rep, const std::string& id) {
    for (const auto& t : rep.tables)
        if (t.id == id) return t;
    throw std::runtime_error("missing table " + id);
}

const ReportRow& row_for(const ReportTable& t, const std::string& system,
                         double p_mpa = -1.0) {
    for (const auto& r : t.rows)
        if (r.system == system && (p_mpa < 0.0 || std::abs(r.P - p_mpa) < 1e-9)) return r;
    throw std::runtime_error("missing row " + system + " in " + t.id);
}

} // namespace

TEST_CASE("ser diffusion") {
    // argon at its 1-atm melting point, Breck radius 1.70 Angstrom
    CHECK(ser_diffusion(83.81, 290.2e-6, 1.70e-10) ==
          doctest::Approx(1.2443188228953243e-9).epsilon(1e-12));
    CHECK(ser_diffusion(83.81, 290.2e-6, 1.70e-10) == doctest::Approx(1.244e-9).epsilon(1e-3));
    CHECK(ser_diffusion(100.0, 2.0e-4, 1e-10) ==
          doctest::Approx(0.5 * ser_diffusion(100.0, 1.0e-4, 1e-10)).epsilon(1e-13));
    CHECK(ser_diffusion(100.0, 1.0e-4, 2e-10) ==
          doctest::Approx(0.5 * ser_diffusion(100.0, 1.0e-4, 1e-10)).epsilon(1e-13));
    CHECK_THROWS_AS(ser_diffusion(-1.0, 1e-4, 1e-10), std::domain_error);
    CHECK_THROWS_AS(ser_diffusion(100.0, 0.0, 1e-10), std::domain_error);
}

TEST_CASE("ser homogeneity: scaling eta or R is interchangeable") {
    for (double c : {0.3, 2.0, 11.0}) {
        CHECK(ser_diffusion(77.0, c * 2.4e-4, 1.7e-10) ==
              doctest::Approx(ser_diffusion(77.0, 2.4e-4, c * 1.7e-10)).epsilon(1e-13));
    }
}

TEST_CASE("fluid table parsing") {
    SUBCASE("well-formed three-row file") {
        std::istringstream in(
            "Temperature [K],Pressure [MPa],Density [kg/m3],Viscosity [uPa.s],Phase\n"
            "90,0.101325,1378.6,239.6,liquid\n"
            "85.2,0.101325,1408.3,276.5,liquid\n"
            "87.3,0.101325,1395.4,260.3,liquid\n");
        const auto res = parse_fluid_table(in, argon(), ScanMode::Isobaric, 0.101325);
        REQUIRE(res.dataset.records.size() == 3);
        CHECK(res.dropped_rows == 0);
        CHECK(res.dataset.records[0].T == 85.2); // sorted by T
        CHECK(res.dataset.records[2].T == 90.0);
        CHECK(res.dataset.records[1].viscosity == doctest::Approx(260.3e-6).epsilon(1e-12));
    }

    SUBCASE("mol/L densities convert through the molar mass") {
        std::istringstream in(
            "Temperature [K],Pressure [MPa],Density [mol/L],Viscosity [uPa.s],Phase\n"
            "87.3,0.101325,34.9312,260.3,liquid\n");
        const auto res = parse_fluid_table(in, argon(), ScanMode::Isobaric, 0.101325);
        CHECK(res.dataset.records[0].mass_density ==
              doctest::Approx(34.9312 * 39.948).epsilon(1e-12));
    }

    SUBCASE("missing viscosity rows are dropped and counted") {
        std::istringstream in(
            "Temperature [K],Pressure [MPa],Density [kg/m3],Viscosity [uPa.s],Phase\n"
            "85.2,0.101325,1408.3,,liquid\n"
            "87.3,0.101325,1395.4,260.3,liquid\n");
        const auto res = parse_fluid_table(in, argon(), ScanMode::Isobaric, 0.101325);
        CHECK(res.dataset.records.size() == 1);
        CHECK(res.dropped_rows == 1);
    }

    SUBCASE("missing required column is named") {
        std::istringstream in(
            "Temperature [K],Pressure [MPa],Viscosity [uPa.s]\n"
            "87.3,0.101325,260.3\n");
        try {
            parse_fluid_table(in, argon(), ScanMode::Isobaric, 0.101325);
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("Density") != std::string::npos);
        }
    }

    SUBCASE("unknown unit tag is an error") {
        std::istringstream in(
            "Temperature [K],Pressure [bar],Density [kg/m3],Viscosity [uPa.s]\n"
            "87.3,1.0,1395.4,260.3\n");
        CHECK_THROWS_AS(parse_fluid_table(in, argon(), ScanMode::Isobaric, 0.101325),
                        ValidationError);
    }

    SUBCASE("fixed coordinate drift beyond 0.1% is an error") {
        std::istringstream in(
            "Temperature [K],Pressure [MPa],Density [kg/m3],Viscosity [uPa.s],Phase\n"
            "85.2,0.101325,1408.3,276.5,liquid\n"
            "87.3,0.103,1395.4,260.3,liquid\n");
        CHECK_THROWS_AS(parse_fluid_table(in, argon(), ScanMode::Isobaric, 0.101325),
                        ValidationError);
    }

    SUBCASE("pressure unit conversion applies to the scan axis") {
        std::istringstream in(
            "Temperature [K],Pressure [atm],Density [kg/m3],Viscosity [uPa.s],Phase\n"
            "87.3,1.0,1395.4,260.3,liquid\n");
        const auto res = parse_fluid_table(in, argon(), ScanMode::Isobaric, 0.101325);
        CHECK(res.dataset.records[0].P == doctest::Approx(0.101325).epsilon(1e-12));
    }
}

TEST_CASE("phase labeling by density discontinuity") {
    IsoDataset ds;
    ds.fluid = argon();
    ds.mode = ScanMode::Isobaric;
    ds.fixed_value = 0.101325;
    auto rec = [](double T, double rho) {
        StateRecord r;
        r.T = T;
        r.P = 0.101325;
        r.mass_density = rho;
        r.viscosity = 1e-5;
        return r;
    };
    SUBCASE("clear liquid-vapor split") {
        ds.records = {rec(85, 1408.0), rec(87, 1395.0), rec(90, 5.5), rec(100, 4.9)};
        label_phases_by_density_split(ds);
        CHECK(ds.records[0].phase == Phase::Liquid);
        CHECK(ds.records[1].phase == Phase::Liquid);
        CHECK(ds.records[2].phase == Phase::Vapor);
        CHECK(ds.records[3].phase == Phase::Vapor);
    }
    SUBCASE("smooth single-phase data stays unknown") {
        ds.records = {rec(300, 680.0), rec(350, 534.0), rec(400, 470.0)};
        label_phases_by_density_split(ds);
        for (const auto& r : ds.records) CHECK(r.phase == Phase::Unknown);
    }
}

TEST_CASE("scan minima") {
    const auto registry = load_registry(data_dir + "/kinetic_diameters.csv");
    const auto ar = parse_fluid_table_file(data_dir + "/fluids/ar_isobaric_1atm.csv", registry);

    SUBCASE("argon liquid SER diffusion minimum reproduces the reference ratio") {
        const ScanResult res = scan_minimum(ar.dataset, ScanQuantity::DSer, Phase::Liquid);
        CHECK(res.ratio_to_bound == doctest::Approx(4.916).epsilon(3e-3));
        CHECK(res.at_T == doctest::Approx(83.81));
        CHECK(!res.violated);
    }

    SUBCASE("argon liquid viscosity minimum") {
        const ScanResult res = scan_minimum(ar.dataset, ScanQuantity::Eta, Phase::Liquid);
        CHECK(res.min_value == doctest::Approx(260.3e-6).epsilon(1e-6));
        CHECK(res.ratio_to_bound == doctest::Approx(18.67).epsilon(5e-3));
        CHECK(res.at_T == doctest::Approx(87.3));
    }

    SUBCASE("helium vapor viscosity violation is flagged") {
        const auto he =
            parse_fluid_table_file(data_dir + "/fluids/he_isobaric_1atm.csv", registry);
        const ScanResult res = scan_minimum(he.dataset, ScanQuantity::Eta, Phase::Vapor);
        CHECK(res.ratio_to_bound == doctest::Approx(0.7397).epsilon(5e-3));
        CHECK(res.violated);
    }

    SUBCASE("single-record dataset returns that record") {
        IsoDataset one;
        one.fluid = argon();
        one.mode = ScanMode::Isobaric;
        one.fixed_value = 0.101325;
        StateRecord r;
        r.T = 87.3;
        r.P = 0.101325;
        r.mass_density = 1395.4;
        r.viscosity = 260.3e-6;
        r.phase = Phase::Liquid;
        one.records = {r};
        const ScanResult res = scan_minimum(one, ScanQuantity::Eta, std::nullopt);
        CHECK(res.min_value == doctest::Approx(260.3e-6));
        CHECK(res.at_T == 87.3);
    }

    SUBCASE("empty after phase filter is an error") {
        CHECK_THROWS_AS(scan_minimum(ar.dataset, ScanQuantity::Eta, Phase::Supercritical),
                        ValidationError);
    }

    SUBCASE("d_ser needs a kinetic diameter") {
        IsoDataset ds = ar.dataset;
        ds.fluid.kinetic_diameter = 0.0;
        CHECK_THROWS_AS(scan_minimum(ds, ScanQuantity::DSer, Phase::Liquid), ValidationError);
    }

    SUBCASE("phase-filtered minima never undercut the unfiltered minimum") {
        for (auto q : {ScanQuantity::DSer, ScanQuantity::Eta, ScanQuantity::Nu}) {
            const double all = scan_minimum(ar.dataset, q, std::nullopt).min_value;
            for (auto ph : {Phase::Liquid, Phase::Vapor}) {
                const double filtered = scan_minimum(ar.dataset, q, ph).min_value;
                CHECK(filtered >= all - 1e-15 * std::abs(all));
            }
        }
    }

    SUBCASE("eta/(n h) computed through the bound evaluator and directly agree") {
        for (const auto& r : ar.dataset.records) {
            const double n = r.number_density(ar.dataset.fluid);
            const double via_bound = r.viscosity / bounds::viscosity_bound(n);
            const double direct = r.viscosity / (n * constants.h);
            CHECK(via_bound == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("registry") {
    const auto registry = load_registry(data_dir + "/kinetic_diameters.csv");
    CHECK(registry.size() >= 10);
    const auto& ar = find_fluid(registry, "Ar");
    CHECK(ar.molar_mass == doctest::Approx(39.948e-3).epsilon(1e-12));
    CHECK(ar.kinetic_diameter == doctest::Approx(3.40e-10).epsilon(1e-12));
    CHECK(ar.molecular_radius() == doctest::Approx(1.70e-10).epsilon(1e-12));
    try {
        find_fluid(registry, "unobtainium");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("unobtainium") != std::string::npos);
    }
}

TEST_CASE("report building") {
    const auto registry = load_registry(data_dir + "/kinetic_diameters.csv");
    std::vector<IsoDataset> datasets;
    for (const char* name :
         {"ar_isobaric_1atm.csv", "he_isobaric_1atm.csv", "h2_isobaric_1atm.csv",
          "n2_isothermal_63p15K_vapor.csv", "n2_isothermal_63p15K_liquid.csv",
          "ar_isobaric_100MPa.csv", "h2_isobaric_50MPa.csv"})
        datasets.push_back(parse_fluid_table_file(data_dir + "/fluids/" + name, registry).dataset);

    const BoundReport rep = build_report(datasets, registry);
    REQUIRE(rep.tables.size() == 9);

    SUBCASE("audit-table rows come out right") {
        const auto& t1 = table_by_id(rep, "table1");
        CHECK(row_for(t1, "Ar").ratio == doctest::Approx(4.916).epsilon(3e-3));
        CHECK(row_for(t1, "He").ratio == doctest::Approx(1.286).epsilon(3e-3));
        CHECK(row_for(t1, "H2").ratio == doctest::Approx(0.5478).epsilon(3e-3));
        CHECK(row_for(t1, "H2").violated);

        const auto& t3 = table_by_id(rep, "table3");
        const auto& n2 = row_for(t3, "N2");
        CHECK(n2.ratio == doctest::Approx(161.0).epsilon(3e-3));
        CHECK(n2.T == doctest::Approx(63.15));
        CHECK(n2.P == doctest::Approx(0.01252));

        const auto& t5 = table_by_id(rep, "table5");
        CHECK(row_for(t5, "Ar").ratio == doctest::Approx(18.67).epsilon(5e-3));
        CHECK(row_for(t5, "He").ratio == doctest::Approx(0.2539).epsilon(5e-3));
        CHECK(row_for(t5, "He").violated);

        const auto& t7 = table_by_id(rep, "table7");
        CHECK(row_for(t7, "He").ratio == doctest::Approx(0.7397).epsilon(5e-3));
        CHECK(row_for(t7, "He").min_value == doctest::Approx(1.246e-6).epsilon(1e-3));

        const auto& t8 = table_by_id(rep, "table8");
        CHECK(row_for(t8, "N2").ratio == doctest::Approx(25.22).epsilon(5e-3));

        const auto& t9 = table_by_id(rep, "table9");
        CHECK(row_for(t9, "Ar", 100.0).ratio == doctest::Approx(7.684).epsilon(5e-3));
        CHECK(row_for(t9, "H2", 50.0).ratio == doctest::Approx(0.8147).epsilon(5e-3));
        CHECK(row_for(t9, "H2", 50.0).violated);
    }

    SUBCASE("fluids are ordered by the registry") {
        const auto& t9 = table_by_id(rep, "table9");
        REQUIRE(t9.rows.size() >= 2);
        // registry is alphabetical: Ar rows precede H2 rows
        std::size_t ar_idx = 0, h2_idx = 0;
        for (std::size_t i = 0; i < t9.rows.size(); ++i) {
            if (t9.rows[i].system == "Ar") ar_idx = i;
            if (t9.rows[i].system == "H2" && h2_idx == 0) h2_idx = i;
        }
        CHECK(ar_idx < h2_idx);
    }

    SUBCASE("plots carry one ratio per state point") {
        bool found = false;
        for (const auto& p : rep.plots) {
            if (p.fluid == "Ar" && p.quantity == "eta_over_nh" &&
                p.mode == ScanMode::Isobaric && std::abs(p.fixed_value - 0.101325) < 1e-9) {
                found = true;
                CHECK(p.axis.size() == 14); // all argon 1-atm rows
                for (double r : p.ratio) CHECK(r > 0.0);
            }
        }
        CHECK(found);
    }

    SUBCASE("empty dataset list gives an empty report with a warning") {
        const BoundReport empty = build_report({}, registry);
        CHECK(empty.tables.size() == 9);
        for (const auto& t : empty.tables) CHECK(t.rows.empty());
        CHECK(!empty.warnings.empty());
    }

    SUBCASE("unregistered fluid is an error") {
        IsoDataset ds = datasets[0];
        ds.fluid.name = "mystery";
        CHECK_THROWS_AS(build_report({ds}, registry), ValidationError);
    }

    SUBCASE("report regeneration is byte-identical") {
        namespace fs = std::filesystem;
        const auto tmp = fs::temp_directory_path() / "pbound_thermo_test";
        fs::remove_all(tmp);
        const auto files_a = write_report(rep, (tmp / "a").string());
        const auto files_b = write_report(rep, (tmp / "b").string());
        REQUIRE(files_a.size() == files_b.size());
        for (std::size_t i = 0; i < files_a.size(); ++i)
            CHECK(read_file(files_a[i]) == read_file(files_b[i]));
        fs::remove_all(tmp);
    }
}
