#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "isoeuler/eos.hpp"
#include "isoeuler/rh.hpp"

using Catch::Approx;
using isoeuler::IsentropicEos;
using isoeuler::ModifiedTaitParams;
using isoeuler::PolytropicParams;

namespace {
const ModifiedTaitParams kWater{3.214e-3, 7.0, 1.0};  // Zel'dovich-Raizer water
}

TEST_CASE("modified Tait pressure", "[eos]") {
    const auto eos = IsentropicEos::modified_tait(kWater);
    CHECK(eos.pressure(1.0) == 0.0);  // rho = rho_ref forces P = 0
    // independent evaluation of B((1.1)^7 - 1), frozen at 40-digit precision
    CHECK(eos.pressure(1.1) == Approx(3.0491767594e-3).epsilon(1e-12));
}

TEST_CASE("polytropic pressure", "[eos]") {
    const auto eos = IsentropicEos::polytropic({1.0, 2.0});
    CHECK(eos.pressure(2.0) == Approx(2.0).epsilon(1e-15));  // (1/2) 2^2
}

TEST_CASE("bulk modulus", "[eos]") {
    const auto tait = IsentropicEos::modified_tait(kWater);
    CHECK(tait.bulk_modulus(1.0) == Approx(2.2498e-2).epsilon(1e-14));  // gamma B

    const auto poly = IsentropicEos::polytropic({2.5, 3.0});
    for (double rho : {0.3, 1.0, 4.2})
        CHECK(poly.bulk_modulus(rho) == Approx(2.5 * std::pow(rho, 3.0)).epsilon(1e-14));

    const auto zero = IsentropicEos::zero_pressure();
    CHECK(zero.bulk_modulus(0.7) == 0.0);
}

TEST_CASE("sound speed", "[eos]") {
    const auto tait = IsentropicEos::modified_tait(kWater);
    // sqrt(7 * 3.214e-3 / 1), about 1.5 km/s for water
    CHECK(tait.sound_speed(1.0) == Approx(0.14999333318517860).epsilon(1e-14));

    CHECK(IsentropicEos::zero_pressure().sound_speed(1.0) == 0.0);
    CHECK(IsentropicEos::polytropic({1.0, 3.0}).sound_speed(1.0) == Approx(1.0));
}

TEST_CASE("specific internal energy", "[eos]") {
    const auto tait = IsentropicEos::modified_tait_noh_normalized(kWater, 1.0);
    CHECK(tait.sie(1.0) == Approx(0.0).margin(1e-18));

    const PolytropicParams pp{1.7, 2.5};
    const auto poly = IsentropicEos::polytropic(pp);
    for (double rho : {0.4, 1.0, 3.0})
        CHECK(poly.sie(rho) ==
              Approx(pp.A1 * std::pow(rho, pp.psi - 1.0) / (pp.psi * (pp.psi - 1.0)))
                  .epsilon(1e-14));
}

TEST_CASE("thermodynamic consistency rho^2 g' = f", "[eos]") {
    // centered finite difference of g against f(rho)/rho^2
    auto check = [](const IsentropicEos& eos) {
        std::mt19937 rng(1234);
        std::uniform_real_distribution<double> d(0.2, 5.0);
        for (int i = 0; i < 100; ++i) {
            const double rho = d(rng);
            const double h = 1e-6 * rho;
            const double gp = (eos.sie(rho + h) - eos.sie(rho - h)) / (2.0 * h);
            const double lhs = rho * rho * gp;
            const double f = eos.pressure(rho);
            CHECK(std::abs(lhs - f) <= 1e-6 * std::max(1.0, std::abs(f)));
        }
    };
    check(IsentropicEos::modified_tait(kWater));
    check(IsentropicEos::polytropic({1.3, 3.5}));
    check(IsentropicEos::zero_pressure());
}

TEST_CASE("entropy invariant", "[eos]") {
    const auto tait = IsentropicEos::modified_tait(kWater);
    for (double rho : {0.5, 1.0, 2.7})
        CHECK(tait.entropy_invariant(rho, tait.pressure(rho)) == 0.0);
    // P = 0 off the isentrope: -f(1.2) = -B(1.2^7 - 1)
    CHECK(tait.entropy_invariant(1.2, 0.0) == Approx(-8.3023430912e-3).epsilon(1e-12));

    // the solved stagnation-shock state lies on the isentrope by construction
    const auto shock = isoeuler::solve_noh_shock_tait(kWater, 1.0, 0.1);
    CHECK(std::abs(tait.entropy_invariant(shock.rho2, shock.P2)) <= 1e-12);
}

TEST_CASE("bulk modulus identity over random densities", "[eos]") {
    auto check = [](const IsentropicEos& eos) {
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> d(0.05, 20.0);
        for (int i = 0; i < 1000; ++i) {
            const double rho = d(rng);
            const double ks = eos.bulk_modulus(rho);
            CHECK(std::abs(rho * eos.pressure_derivative(rho) - ks) <=
                  1e-12 * std::max(1.0, ks));
        }
    };
    check(IsentropicEos::modified_tait(kWater));
    check(IsentropicEos::polytropic({0.8, 2.2}));
    check(IsentropicEos::zero_pressure());
}

TEST_CASE("Tait positivity for B gamma > 0", "[eos]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(1e-3, 100.0);
    const auto water = IsentropicEos::modified_tait(kWater);
    const auto neg = IsentropicEos::modified_tait({-1e-3, -3.0, 1.0});  // bubble-style
    for (int i = 0; i < 1000; ++i) {
        const double rho = d(rng);
        CHECK(water.bulk_modulus(rho) > 0.0);
        CHECK(neg.bulk_modulus(rho) > 0.0);
    }
}

TEST_CASE("polytropic EOS is of ideal-gas type", "[eos]") {
    const PolytropicParams pp{2.0, 3.0};
    const auto eos = IsentropicEos::polytropic(pp);
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> d(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double rho = d(rng);
        const double P = eos.pressure(rho);
        const double rhs = (pp.psi - 1.0) * rho * eos.sie(rho);
        CHECK(std::abs(P - rhs) <= 1e-13 * std::abs(P));
    }
}

TEST_CASE("parameter validation", "[eos]") {
    CHECK_THROWS_AS(IsentropicEos::modified_tait({1.0, 1.0, 1.0}),
                    std::invalid_argument);  // gamma = 1
    CHECK_THROWS_AS(IsentropicEos::modified_tait({1.0, 0.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(IsentropicEos::modified_tait({-1.0, 7.0, 1.0}),
                    std::invalid_argument);  // B gamma < 0
    CHECK_THROWS_AS(IsentropicEos::modified_tait({1.0, 7.0, -1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(IsentropicEos::polytropic({1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(IsentropicEos::polytropic({-1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("density domain errors", "[eos]") {
    const auto eos = IsentropicEos::modified_tait(kWater);
    CHECK_THROWS_AS(eos.pressure(0.0), std::domain_error);
    CHECK_THROWS_AS(eos.pressure(-1.0), std::domain_error);
    CHECK_THROWS_AS(eos.sie(1e10), std::domain_error);

    const auto narrow = IsentropicEos::custom(
        [](double) { return 0.0; }, [](double) { return 0.0; },
        [](double) { return 0.0; }, 0.0, {0.5, 2.0});
    CHECK_THROWS_AS(narrow.pressure(0.4), std::domain_error);
    CHECK_NOTHROW(narrow.pressure(1.0));
}

TEST_CASE("JSON round trip", "[eos]") {
    const auto tait = IsentropicEos::modified_tait(kWater, 0.25);
    const auto tait2 = IsentropicEos::from_json(tait.to_json());
    CHECK(tait2.kind() == "tait");
    CHECK(tait2.pressure(1.3) == tait.pressure(1.3));
    CHECK(tait2.sie(1.3) == tait.sie(1.3));

    const auto poly = IsentropicEos::polytropic({0.7, 2.4});
    const auto poly2 = IsentropicEos::from_json(poly.to_json());
    CHECK(poly2.pressure(2.0) == poly.pressure(2.0));

    const auto zero = IsentropicEos::zero_pressure(0.5);
    const auto zero2 = IsentropicEos::from_json(zero.to_json());
    CHECK(zero2.sie(1.0) == 0.5);

    CHECK_THROWS_AS(IsentropicEos::from_json({{"type", "mie"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        IsentropicEos::from_json(
            {{"type", "tait"}, {"B", 1.0}, {"gamma", 7.0}, {"rho_ref", 1.0}, {"x", 1}}),
        std::invalid_argument);
}
