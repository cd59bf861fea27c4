#include "isoeuler/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace isoeuler {

namespace {

constexpr double kEqualTol = 1e-12;

// Scale for the relative equality tests; a1 != 0 keeps it positive.
double tuple_scale(double a1, double a2, double a3) {
    return std::max({std::abs(a1), std::abs(a2), std::abs(a3)});
}

std::optional<double> ratio(double num, double den) {
    if (den == 0.0) return std::nullopt;
    return num / den;
}

}  // namespace

std::string_view case_name(SymmetryCase c) {
    switch (c) {
        case SymmetryCase::I: return "I";
        case SymmetryCase::II: return "II";
        case SymmetryCase::III: return "III";
        case SymmetryCase::IV: return "IV";
    }
    return "?";
}

std::string_view case_admissible_eos(SymmetryCase c) {
    switch (c) {
        case SymmetryCase::I:
            return "power-law bulk modulus K_S = A1 rho^psi (ideal-gas type P = (psi-1) rho I)";
        case SymmetryCase::II:
            return "pressureless: K_S = 0, P = 0, I = I0";
        case SymmetryCase::III:
            return "pressureless: K_S = 0, P = 0, I = 0";
        case SymmetryCase::IV:
            return "arbitrary K_S (purely kinematic r-t scaling)";
    }
    return "?";
}

std::pair<ScalingExponents, PowerLawExponents> derive_exponents(double a1, double a2,
                                                                double a3) {
    if (a1 == 0.0)
        throw std::invalid_argument("derive_exponents: a1 = 0 (degenerate time scaling)");
    ScalingExponents s{a1, a2, a3};
    PowerLawExponents p;
    p.sigma = ratio(a2 - a1, a1);
    p.psi = ratio(s.a5(), a3);
    p.alpha = ratio(a2, a1);
    p.zeta = ratio(a3, a2);
    p.lambda = ratio(s.a5(), a2);
    p.beta = ratio(a2 - a1, a2);
    p.tau = ratio(s.a6(), a2);
    return {s, p};
}

SymmetryCase classify(double a1, double a2, double a3) {
    if (a1 == 0.0)
        throw std::invalid_argument("classify: a1 = 0 (degenerate time scaling)");
    const double scale = tuple_scale(a1, a2, a3);
    const bool a1_eq_a2 = std::abs(a1 - a2) <= kEqualTol * scale;
    const bool a3_zero = std::abs(a3) <= kEqualTol * scale;
    if (a1_eq_a2) return a3_zero ? SymmetryCase::IV : SymmetryCase::II;
    return a3_zero ? SymmetryCase::III : SymmetryCase::I;
}

double ks_determining_residual(const IsentropicEos& eos, double a1, double a2,
                               double a3, double rho) {
    const double h = 1e-6 * rho;
    const double ksp =
        (eos.bulk_modulus(rho + h) - eos.bulk_modulus(rho - h)) / (2.0 * h);
    return a3 * rho * ksp - (a3 + 2.0 * a2 - 2.0 * a1) * eos.bulk_modulus(rho);
}

ShockTrajectory shock_trajectory(double a1, double a2, double D0, double t) {
    if (a1 == 0.0)
        throw std::invalid_argument("shock_trajectory: a1 = 0");
    if (!(t > 0.0))
        throw std::domain_error("shock_trajectory: t must be positive");
    const double sigma = (a2 - a1) / a1;
    const double D = D0 * std::pow(t, sigma);
    if (sigma <= -1.0)
        throw std::domain_error(
            "shock_trajectory: sigma <= -1, trajectory non-integrable from t = 0");
    return {D, D0 * std::pow(t, sigma + 1.0) / (sigma + 1.0)};
}

nlohmann::json exponent_report(double a1, double a2, double a3) {
    auto [s, p] = derive_exponents(a1, a2, a3);
    auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    return {{"a", {a1, a2, a3}},
            {"case", std::string(case_name(classify(a1, a2, a3)))},
            {"exponents",
             {{"sigma", opt(p.sigma)},
              {"psi", opt(p.psi)},
              {"alpha", opt(p.alpha)},
              {"zeta", opt(p.zeta)},
              {"lambda", opt(p.lambda)},
              {"beta", opt(p.beta)},
              {"tau", opt(p.tau)}}}};
}

}  // namespace isoeuler
