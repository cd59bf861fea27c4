#pragma once

#include <functional>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

namespace isoeuler {

// Units throughout: density in g/cm^3, pressure in Mbar, length in cm,
// time in us. Velocity is then cm/us and specific energy Mbar cm^3/g,
// which makes P/rho and u^2 directly comparable with no conversion
// factors.

// Parameters of the modified Tait EOS, P = B[(rho/rho_ref)^gamma - 1].
// B and gamma must have the same sign (B*gamma > 0) so the bulk modulus
// stays positive; gamma = 1 is excluded because the SIE integral divides
// by gamma - 1.
struct ModifiedTaitParams {
    double B;        // Mbar
    double gamma;    // dimensionless
    double rho_ref;  // g/cm^3
};

// Power-law bulk modulus family, K_S = A1 rho^psi, giving
// P = (A1/psi) rho^psi and I = A1 rho^(psi-1) / (psi (psi-1)).
// The zero integration constants make P = (psi-1) rho I hold exactly.
struct PolytropicParams {
    double A1;   // Mbar (cm^3/g)^psi
    double psi;  // dimensionless, > 1
};

struct DensityInterval {
    double lo;  // g/cm^3, > 0
    double hi;  // g/cm^3
    bool contains(double rho) const { return rho > lo && rho < hi; }
};

// An isentrope-valid equation of state: pressure as a function of density
// alone, P = f(rho), with the specific internal energy recovered from
// dI = f(rho)/rho^2 drho as I = g(rho) + I0.
//
// Immutable after construction; all member functions are pure and safe to
// call concurrently.
class IsentropicEos {
public:
    using Fn = std::function<double(double)>;

    static IsentropicEos modified_tait(const ModifiedTaitParams& p, double I0 = 0.0);
    // Same, with I0 chosen so that I(rho0) = 0.
    static IsentropicEos modified_tait_noh_normalized(const ModifiedTaitParams& p,
                                                      double rho0);
    static IsentropicEos polytropic(const PolytropicParams& p);
    static IsentropicEos zero_pressure(double I0 = 0.0);
    // Arbitrary user-supplied isentrope. Not serializable.
    static IsentropicEos custom(Fn f, Fn fprime, Fn g, double I0,
                                DensityInterval validity);

    // P = f(rho)
    double pressure(double rho) const;
    // f'(rho)
    double pressure_derivative(double rho) const;
    // K_S = rho f'(rho)
    double bulk_modulus(double rho) const;
    // c = sqrt(K_S / rho); requires K_S >= 0
    double sound_speed(double rho) const;
    // I = g(rho) + I0
    double sie(double rho) const;
    // P - f(rho); vanishes iff the state lies on this isentrope
    double entropy_invariant(double rho, double P) const;

    double sie_offset() const { return I0_; }
    const DensityInterval& validity() const { return validity_; }
    std::string_view kind() const;

    const ModifiedTaitParams* tait_params() const;
    const PolytropicParams* polytropic_params() const;

    nlohmann::json to_json() const;
    static IsentropicEos from_json(const nlohmann::json& j);

private:
    enum class Kind { Tait, Polytropic, Zero, Custom };

    IsentropicEos(Kind kind, Fn f, Fn fprime, Fn g, double I0,
                  DensityInterval validity);

    void require_valid(double rho) const;

    Kind kind_;
    Fn f_, fprime_, g_;
    double I0_;
    DensityInterval validity_;
    ModifiedTaitParams tait_{};
    PolytropicParams poly_{};
};

}  // namespace isoeuler
