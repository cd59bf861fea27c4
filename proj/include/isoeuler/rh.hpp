#pragma once

#include <utility>

#include "isoeuler/eos.hpp"

namespace isoeuler {

// States on either side of a discontinuity moving with velocity D.
// Subscript 1 is unshocked, 2 shocked. Densities g/cm^3, velocities cm/us.
struct JumpState {
    double rho1, u1;
    double rho2, u2;
    double D;
};

// Mass and momentum jump residuals for an isentropic EOS:
//   (u1 - D) rho1 - (u2 - D) rho2
//   f(rho1) + rho1 (u1 - D) u1 - f(rho2) - rho2 (u2 - D) u2
// Both vanish on an admissible discontinuity.
std::pair<double, double> jump_residuals(const IsentropicEos& eos,
                                         const JumpState& s);

struct NohShockState {
    double rho2;  // shocked density, > rho0
    double D0;    // constant shock speed, rho0 u0 / (rho2 - rho0)
    double P2;    // f(rho2)
    double I2;    // sie(rho2)
    double residual;        // transcendental residual / max(|f(rho2)|, rho0 u0^2)
    bool multiple_roots;    // bracket scan saw more than one sign change
};

// Solve f(rho2) = f(rho0) + rho0 u0^2 / (1 - rho0/rho2) for the smallest
// root rho2 > rho0 (planar stagnation shock). Bracketing starts at
// [rho0(1+1e-9), 2 rho0] and doubles the upper bound up to 1e6 rho0; the
// root is refined by a bisection/secant hybrid and polished by Newton.
// Requires rho0 > 0, u0 > 0, and K_S(rho0) > 0; throws BracketError when no
// sign change is found.
NohShockState solve_noh_shock(const IsentropicEos& eos, double rho0, double u0);

// Modified-Tait specialization. The SIE offset is chosen so that
// I(rho0) = 0 in the unshocked fluid.
NohShockState solve_noh_shock_tait(const ModifiedTaitParams& p, double rho0,
                                   double u0);

// Classical full-Euler (energy-equation) planar Noh state for an ideal gas,
// used as a contrast oracle: the compression ratio (gamma+1)/(gamma-1) is
// independent of u0, unlike the unbounded isentropic-EOS result.
struct IdealGasNohState {
    double rho2;  // rho0 (gamma+1)/(gamma-1)
    double D0;    // u0 (gamma-1)/2
    double P2;    // rho0 u0^2 (gamma+1)/2
    double I2;    // u0^2/2
};

IdealGasNohState ideal_gas_noh_reference(double gamma, double rho0, double u0);

}  // namespace isoeuler
