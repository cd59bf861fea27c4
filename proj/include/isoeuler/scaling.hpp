#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include <nlohmann/json_fwd.hpp>

#include "isoeuler/eos.hpp"

namespace isoeuler {

// The three free scaling constants of the group generator. The remaining
// constants are fixed by invariance of the flow equations and jump
// conditions and are always derived, never stored:
//   a4 = a2 - a1          (velocity scales as r/t)
//   a5 = a3 + 2a2 - 2a1   (pressure scales as density times r^2/t^2)
//   a6 = 2a2 - 2a1        (specific energy scales as r^2/t^2)
struct ScalingExponents {
    double a1, a2, a3;
    double a4() const { return a2 - a1; }
    double a5() const { return a3 + 2.0 * a2 - 2.0 * a1; }
    double a6() const { return 2.0 * a2 - 2.0 * a1; }
};

// Power-law exponents built from ratios of scaling constants. An exponent
// is absent when its denominator vanishes.
struct PowerLawExponents {
    std::optional<double> sigma;   // (a2-a1)/a1, shock velocity exponent
    std::optional<double> psi;     // (a3+2a2-2a1)/a3, bulk-modulus power
    std::optional<double> alpha;   // a2/a1, similarity variable xi = r/t^alpha
    std::optional<double> zeta;    // a3/a2, rho = r^zeta w
    std::optional<double> lambda;  // (a3+2a2-2a1)/a2, P = r^lambda m
    std::optional<double> beta;    // (a2-a1)/a2, u = r^beta j
    std::optional<double> tau;     // (2a2-2a1)/a2, I = r^tau h
};

// The four admissible classes of scale-invariant isentropic EOS.
enum class SymmetryCase { I, II, III, IV };

std::string_view case_name(SymmetryCase c);  // "I".."IV"
// Short description of the admissible EOS for the case.
std::string_view case_admissible_eos(SymmetryCase c);

// Derived constants for a scaling tuple. Requires a1 != 0 (degenerate time
// scaling otherwise); ratios with zero denominators are reported absent.
std::pair<ScalingExponents, PowerLawExponents> derive_exponents(double a1, double a2,
                                                                double a3);

// Classify (a1,a2,a3) into Cases I-IV. Equality of constants is tested to
// relative tolerance 1e-12; Case I is the complement of II-IV (a1 != a2 and
// a3 != 0). Requires a1 != 0.
SymmetryCase classify(double a1, double a2, double a3);

// Residual of the determining ODE for the bulk modulus,
//   a3 rho K_S'(rho) - (a3 + 2a2 - 2a1) K_S(rho),
// with K_S' by centered difference (step 1e-6 rho). Vanishes iff the EOS
// admits the given scaling.
double ks_determining_residual(const IsentropicEos& eos, double a1, double a2,
                               double a3, double rho);

struct ShockTrajectory {
    double velocity;  // D(t) = D0 t^sigma
    double position;  // integral of D from 0 to t
};

// Scale-invariant shock trajectory. Requires t > 0 and a1 != 0; the position
// integral exists from t = 0 only for sigma > -1.
ShockTrajectory shock_trajectory(double a1, double a2, double D0, double t);

// JSON report: {"a":[...], "case":"I..IV", "exponents":{"sigma":..., ...}}
// with absent exponents as null.
nlohmann::json exponent_report(double a1, double a2, double a3);

}  // namespace isoeuler
