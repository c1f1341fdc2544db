#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pbound/rng.hpp"
#include "pbound/units.hpp"

#include <cmath>
#include <numbers>

using namespace pbound;

TEST_CASE("physical constants invariants") {
    CHECK(constants.hbar > 0.0);
    CHECK(constants.h > 0.0);
    CHECK(constants.kB > 0.0);
    CHECK(constants.amu > 0.0);
    CHECK(std::abs(constants.h - 2.0 * std::numbers::pi * constants.hbar) <=
          1e-12 * constants.h);
}

TEST_CASE("planckian time") {
    // hbar / (kB * 300); cross-checked by hand with CODATA-2018 values
    CHECK(planckian_time(300.0) == doctest::Approx(2.5460775274192462e-14).epsilon(1e-12));
    CHECK(planckian_time(300.0) / planckian_time(600.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(planckian_time(7.638232582257738e-12) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(planckian_time(0.0), std::domain_error);
    CHECK_THROWS_AS(planckian_time(-1.0), std::domain_error);
}

TEST_CASE("planckian time consistency with the chaos rate") {
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const double T = std::exp(rng.uniform(-5.0, 8.0));
        const double product =
            planckian_time(T) * (2.0 * std::numbers::pi * constants.kB * T / constants.hbar);
        CHECK(product == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-13));
    }
}

TEST_CASE("thermal de Broglie length") {
    const double m_ar = 39.948 * constants.amu;
    // direct evaluation of sqrt(2 pi hbar^2 / (m kB T)), argon at 83.81 K
    CHECK(thermal_de_broglie(m_ar, 83.81) ==
          doctest::Approx(3.0172025372335704e-11).epsilon(1e-12));
    const double base = thermal_de_broglie(m_ar, 50.0);
    CHECK(thermal_de_broglie(m_ar, 200.0) == doctest::Approx(0.5 * base).epsilon(1e-13));
    CHECK(thermal_de_broglie(4.0 * m_ar, 50.0) == doctest::Approx(0.5 * base).epsilon(1e-13));
    CHECK_THROWS_AS(thermal_de_broglie(-1.0, 300.0), std::domain_error);
    CHECK_THROWS_AS(thermal_de_broglie(m_ar, 0.0), std::domain_error);
}

TEST_CASE("unit conversion") {
    const Quantity eta{260.3, Unit::MicropascalSecond};
    CHECK(convert(eta, Unit::PascalSecond).value == doctest::Approx(2.603e-4).epsilon(1e-14));

    const Quantity atm{1.0, Unit::Atmosphere};
    CHECK(convert(atm, Unit::Megapascal).value == doctest::Approx(0.101325).epsilon(1e-14));

    // argon mass density -> number density via molar mass
    const Quantity rho{1395.4, Unit::KgPerCubicMeter};
    const auto n = convert_density(rho, Unit::PerCubicMeter, 39.948e-3);
    CHECK(n.value == doctest::Approx(1395.4 / (39.948e-3 / constants.avogadro)).epsilon(1e-13));
    CHECK(n.value == doctest::Approx(2.1035e28).epsilon(1e-4));
    // and back
    const auto back = convert_density(n, Unit::KgPerCubicMeter, 39.948e-3);
    CHECK(back.value == doctest::Approx(1395.4).epsilon(1e-13));

    // mol/L is an Avogadro rescale of 1/m^3
    const Quantity molar{1.0, Unit::MolPerLiter};
    CHECK(convert(molar, Unit::PerCubicMeter).value ==
          doctest::Approx(6.02214076e26).epsilon(1e-14));

    CHECK_THROWS_AS(convert(eta, Unit::Kelvin), std::domain_error);
    CHECK_THROWS_AS(convert_density(eta, Unit::PerCubicMeter, 0.039948), std::domain_error);
    CHECK_THROWS_AS(convert_density(rho, Unit::PerCubicMeter, 0.0), std::domain_error);
}

TEST_CASE("round-trip conversions reproduce the input to 1e-12") {
    Rng rng(23);
    const Unit pressure_units[] = {Unit::Pascal, Unit::Kilopascal, Unit::Megapascal,
                                   Unit::Atmosphere};
    const Unit viscosity_units[] = {Unit::PascalSecond, Unit::MillipascalSecond,
                                    Unit::MicropascalSecond};
    const Unit length_units[] = {Unit::Meter, Unit::Angstrom, Unit::Nanometer};
    for (int i = 0; i < 200; ++i) {
        const double v = std::exp(rng.uniform(-8.0, 8.0));
        auto check_pair = [&](Unit a, Unit b) {
            const Quantity q{v, a};
            const auto round = convert(convert(q, b), a);
            CHECK(round.value == doctest::Approx(v).epsilon(1e-12));
        };
        check_pair(pressure_units[i % 4], pressure_units[(i + 1) % 4]);
        check_pair(viscosity_units[i % 3], viscosity_units[(i + 1) % 3]);
        check_pair(length_units[i % 3], length_units[(i + 1) % 3]);
    }
}

TEST_CASE("quantity arithmetic rejects mismatched dimensions") {
    const Quantity t{1.0, Unit::Second};
    const Quantity p{1.0, Unit::Pascal};
    CHECK_THROWS_AS(t + p, std::domain_error);
    CHECK_THROWS_AS(t - p, std::domain_error);
    // the sum lands in the left operand's unit
    const Quantity t2 = Quantity{1.0, Unit::Second} + Quantity{500.0, Unit::Picosecond};
    CHECK(t2.unit == Unit::Second);
    CHECK(t2.value == doctest::Approx(1.0 + 5e-10).epsilon(1e-14));
}
