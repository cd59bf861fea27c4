#include "isoeuler/rh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "isoeuler/errors.hpp"

namespace isoeuler {

std::pair<double, double> jump_residuals(const IsentropicEos& eos,
                                         const JumpState& s) {
    if (!(s.rho1 > 0.0) || !(s.rho2 > 0.0))
        throw std::domain_error("jump_residuals: densities must be positive");
    const double mass = (s.u1 - s.D) * s.rho1 - (s.u2 - s.D) * s.rho2;
    const double mom = eos.pressure(s.rho1) + s.rho1 * (s.u1 - s.D) * s.u1 -
                       eos.pressure(s.rho2) - s.rho2 * (s.u2 - s.D) * s.u2;
    return {mass, mom};
}

namespace {

// g(rho2) = f(rho2) - f(rho0) - rho0 u0^2 / (1 - rho0/rho2).
// As rho2 -> rho0+ the last term diverges, so g -> -inf; for a bulk modulus
// growing with density g eventually turns positive, guaranteeing a bracket.
struct NohResidualFn {
    const IsentropicEos& eos;
    double rho0, u0;
    double operator()(double rho2) const {
        return eos.pressure(rho2) - eos.pressure(rho0) -
               rho0 * u0 * u0 / (1.0 - rho0 / rho2);
    }
    double derivative(double rho2) const {
        const double s = 1.0 - rho0 / rho2;
        return eos.pressure_derivative(rho2) +
               rho0 * u0 * u0 * rho0 / (rho2 * rho2 * s * s);
    }
};

// Bisection/secant hybrid on a sign-changing bracket, to a relative
// interval of 1e-14.
double refine_root(const NohResidualFn& g, double lo, double hi, double glo,
                   double ghi) {
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
        double mid = lo + (hi - lo) * glo / (glo - ghi);  // secant estimate
        const double third = (hi - lo) / 3.0;
        mid = std::clamp(mid, lo + 0.01 * third, hi - 0.01 * third);
        if (it % 2 == 1) mid = 0.5 * (lo + hi);  // keep bisection convergence
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

NohShockState solve_noh_shock(const IsentropicEos& eos, double rho0, double u0) {
    if (!(rho0 > 0.0))
        throw std::domain_error("solve_noh_shock: rho0 must be positive");
    if (!(u0 > 0.0))
        throw std::invalid_argument("solve_noh_shock: u0 must be positive (no shock)");
    if (!(eos.bulk_modulus(rho0) > 0.0))
        throw std::domain_error("solve_noh_shock: K_S(rho0) must be positive");

    const NohResidualFn g{eos, rho0, u0};

    const double lo0 = rho0 * (1.0 + 1e-9);
    const double rho_max = std::min(1e6 * rho0, eos.validity().hi * (1.0 - 1e-12));
    double lo = lo0, glo = g(lo);
    if (glo > 0.0)
        throw BracketError("solve_noh_shock: residual positive at rho0(1+1e-9)");
    double hi = 2.0 * rho0, ghi = g(hi);
    while (ghi < 0.0) {
        if (hi >= rho_max) {
            std::ostringstream os;
            os << "solve_noh_shock: no sign change up to rho_max = " << rho_max;
            throw BracketError(os.str());
        }
        lo = hi;
        glo = ghi;
        hi = std::min(2.0 * hi, rho_max);
        ghi = g(hi);
    }

    // Scan the full bracket for additional roots; keep the leftmost one.
    bool multiple = false;
    {
        const int kScan = 256;
        double prev = lo0, gprev = g(prev);
        int changes = 0;
        double first_lo = lo, first_glo = glo, first_hi = hi, first_ghi = ghi;
        for (int i = 1; i <= kScan; ++i) {
            const double x = lo0 + (hi - lo0) * i / kScan;
            const double gx = g(x);
            if ((gx < 0.0) != (gprev < 0.0) || gx == 0.0) {
                if (++changes == 1) {
                    first_lo = prev;
                    first_glo = gprev;
                    first_hi = x;
                    first_ghi = gx;
                }
            }
            prev = x;
            gprev = gx;
        }
        multiple = changes > 1;
        if (changes >= 1) {
            lo = first_lo;
            glo = first_glo;
            hi = first_hi;
            ghi = first_ghi;
        }
    }

    double rho2 = refine_root(g, lo, hi, glo, ghi);

    // Newton polish; g is monotone increasing for K_S > 0 so this is safe.
    for (int it = 0; it < 4; ++it) {
        const double gp = g.derivative(rho2);
        if (!(gp > 0.0)) break;
        const double step = g(rho2) / gp;
        const double next = rho2 - step;
        if (!(next > rho0) || !std::isfinite(next)) break;
        rho2 = next;
        if (std::abs(step) < 1e-16 * rho2) break;
    }

    NohShockState out;
    out.rho2 = rho2;
    out.D0 = rho0 * u0 / (rho2 - rho0);
    out.P2 = eos.pressure(rho2);
    out.I2 = eos.sie(rho2);
    out.residual =
        std::abs(g(rho2)) / std::max(std::abs(eos.pressure(rho2)), rho0 * u0 * u0);
    out.multiple_roots = multiple;
    return out;
}

NohShockState solve_noh_shock_tait(const ModifiedTaitParams& p, double rho0,
                                   double u0) {
    const IsentropicEos eos = IsentropicEos::modified_tait_noh_normalized(p, rho0);
    return solve_noh_shock(eos, rho0, u0);
}

IdealGasNohState ideal_gas_noh_reference(double gamma, double rho0, double u0) {
    if (!(gamma > 1.0))
        throw std::invalid_argument("ideal_gas_noh_reference: gamma must exceed 1");
    return {rho0 * (gamma + 1.0) / (gamma - 1.0), u0 * (gamma - 1.0) / 2.0,
            0.5 * rho0 * u0 * u0 * (gamma + 1.0), 0.5 * u0 * u0};
}

}  // namespace isoeuler
