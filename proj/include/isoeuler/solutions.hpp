#pragma once

#include <string_view>

#include "isoeuler/eos.hpp"
#include "isoeuler/rh.hpp"
#include "isoeuler/scaling.hpp"

namespace isoeuler {

enum class FlowRegion { Unshocked, Shocked, Bubble };

std::string_view region_name(FlowRegion r);

struct FlowSample {
    double u;    // cm/us
    double rho;  // g/cm^3
    double P;    // Mbar
    double I;    // Mbar cm^3/g
    FlowRegion region;
};

// Shock-free expanding-bubble solution: u = -r/t with a modified Tait EOS
// whose exponent is locked to the geometry, gamma = (n-3)/(n+1). Requires
// B < 0 so that omega = B gamma / rho_ref^gamma is positive. The solution
// occupies 0 < r/t <= xi0 where xi0 is the zero-pressure surface; the fields
// are evaluated on the expanding branch t > 0.
class BubbleSolution {
public:
    BubbleSolution(int n, double B, double rho_ref, double I0 = 0.0);

    int geometry() const { return n_; }
    double gamma() const { return gamma_; }
    double omega() const { return omega_; }    // B gamma / rho_ref^gamma
    double w0() const { return w0_; }          // ((1-gamma)/omega)^(1/(gamma-1))
    double xi0() const { return xi0_; }        // zero-pressure surface r/t
    const IsentropicEos& eos() const { return eos_; }

    // Piecewise-valid evaluator; throws outside 0 < r/t <= xi0 or for t <= 0.
    FlowSample fields(double r, double t) const;

    // Raw self-similar profiles as functions of xi = r/t, with no domain
    // clamp. Outside (0, xi0] the pressure is negative and the profile has
    // no physical meaning.
    double velocity_profile(double xi) const { return -xi; }
    double density_profile(double xi) const;   // w0 xi^(2/(gamma-1))
    double pressure_profile(double xi) const;
    double sie_profile(double xi) const;

private:
    int n_;
    double gamma_, omega_, w0_, xi0_;
    IsentropicEos eos_;
};

// Classical 1D planar Noh solution for an isentropic EOS: an inflow of
// speed u0 stagnates against the wall at r = 0, driving a constant-speed
// shock r_s = D0 t with piecewise-constant states on either side.
class NohSolution {
public:
    NohSolution(const IsentropicEos& eos, double rho0, double u0);

    double rho0() const { return rho0_; }
    double u0() const { return u0_; }
    const NohShockState& shock() const { return shock_; }
    const IsentropicEos& eos() const { return eos_; }

    // The shock line r = D0 t returns the shocked state by convention.
    FlowSample fields(double r, double t) const;

private:
    IsentropicEos eos_;
    double rho0_, u0_;
    double P1_, I1_;  // unshocked pressure/SIE, f(rho0) and sie(rho0)
    NohShockState shock_;
};

// The symmetry constraints forced by the Noh boundary data: constant inflow
// velocity requires a2 = a1 and constant initial density requires a3 = 0,
// i.e. Case IV with alpha = 1, beta = zeta = 0 and a constant shock speed
// (sigma = 0). Any K_S is admissible.
struct NohSymmetryReport {
    SymmetryCase symmetry_case;  // always Case IV
    double alpha, beta, zeta, sigma;
    std::string_view eos_constraint;
};

NohSymmetryReport noh_symmetry_constraints(double u0, double rho0);

}  // namespace isoeuler
