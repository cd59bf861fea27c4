#include "isoeuler/solutions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace isoeuler {

std::string_view region_name(FlowRegion r) {
    switch (r) {
        case FlowRegion::Unshocked: return "unshocked";
        case FlowRegion::Shocked: return "shocked";
        case FlowRegion::Bubble: return "bubble";
    }
    return "?";
}

namespace {

double bubble_gamma(int n) {
    if (n < 0 || n > 2)
        throw std::invalid_argument("BubbleSolution: geometry n must be 0, 1, or 2");
    return (n - 3.0) / (n + 1.0);
}

}  // namespace

BubbleSolution::BubbleSolution(int n, double B, double rho_ref, double I0)
    : n_(n),
      gamma_(bubble_gamma(n)),
      eos_(IsentropicEos::zero_pressure()) {
    if (!(B < 0.0))
        throw std::invalid_argument(
            "BubbleSolution: B must be negative (omega = B gamma / rho_ref^gamma > 0)");
    if (!(rho_ref > 0.0))
        throw std::invalid_argument("BubbleSolution: rho_ref must be positive");

    omega_ = B * gamma_ / std::pow(rho_ref, gamma_);
    w0_ = std::pow((1.0 - gamma_) / omega_, 1.0 / (gamma_ - 1.0));
    // Zero-pressure surface: P(xi0) = 0, equivalently rho(xi0) = rho_ref.
    xi0_ = std::pow(rho_ref / w0_, (gamma_ - 1.0) / 2.0);
    eos_ = IsentropicEos::modified_tait({B, gamma_, rho_ref}, I0);
}

double BubbleSolution::density_profile(double xi) const {
    return w0_ * std::pow(xi, 2.0 / (gamma_ - 1.0));
}

double BubbleSolution::pressure_profile(double xi) const {
    return eos_.pressure(density_profile(xi));
}

double BubbleSolution::sie_profile(double xi) const {
    return eos_.sie(density_profile(xi));
}

FlowSample BubbleSolution::fields(double r, double t) const {
    if (t == 0.0)
        throw std::domain_error("BubbleSolution: fields unbounded at t = 0");
    if (!(t > 0.0))
        throw std::domain_error("BubbleSolution: evaluated on the expanding branch t > 0");
    const double xi = r / t;
    if (!(xi > 0.0))
        throw std::domain_error("BubbleSolution: requires r > 0");
    if (xi > xi0_) {
        std::ostringstream os;
        os << "BubbleSolution: r/t = " << xi << " outside the bubble (xi0 = " << xi0_
           << ")";
        throw std::domain_error(os.str());
    }
    const double rho = density_profile(xi);
    return {-xi, rho, eos_.pressure(rho), eos_.sie(rho), FlowRegion::Bubble};
}

NohSolution::NohSolution(const IsentropicEos& eos, double rho0, double u0)
    : eos_(eos),
      rho0_(rho0),
      u0_(u0),
      P1_(eos.pressure(rho0)),
      I1_(eos.sie(rho0)),
      shock_(solve_noh_shock(eos, rho0, u0)) {}

FlowSample NohSolution::fields(double r, double t) const {
    if (!(t > 0.0))
        throw std::domain_error("NohSolution: fields defined for t > 0");
    if (r < 0.0)
        throw std::domain_error("NohSolution: requires r >= 0");
    if (r > shock_.D0 * t)
        return {-u0_, rho0_, P1_, I1_, FlowRegion::Unshocked};
    return {0.0, shock_.rho2, shock_.P2, shock_.I2, FlowRegion::Shocked};
}

NohSymmetryReport noh_symmetry_constraints(double u0, double rho0) {
    if (!(u0 > 0.0) || !(rho0 > 0.0))
        throw std::invalid_argument("noh_symmetry_constraints: u0, rho0 must be positive");
    // Invariance of u + u0 = 0 forces a2 = a1; invariance of rho - rho0 = 0
    // then forces a3 = 0: Case IV, with identity field scaling and D = const.
    return {SymmetryCase::IV, 1.0, 0.0, 0.0, 0.0,
            case_admissible_eos(SymmetryCase::IV)};
}

}  // namespace isoeuler
