#include "isoeuler/eos.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace isoeuler {

namespace {

constexpr double kDefaultRhoLo = 1e-9;
constexpr double kDefaultRhoHi = 1e9;

[[noreturn]] void bad_density(double rho, const DensityInterval& iv) {
    std::ostringstream os;
    os << "density " << rho << " outside EOS validity interval (" << iv.lo
       << ", " << iv.hi << ")";
    throw std::domain_error(os.str());
}

}  // namespace

IsentropicEos::IsentropicEos(Kind kind, Fn f, Fn fprime, Fn g, double I0,
                             DensityInterval validity)
    : kind_(kind),
      f_(std::move(f)),
      fprime_(std::move(fprime)),
      g_(std::move(g)),
      I0_(I0),
      validity_(validity) {
    if (!(validity_.lo > 0.0) || !(validity_.hi > validity_.lo))
        throw std::invalid_argument("EOS validity interval must satisfy 0 < lo < hi");
}

IsentropicEos IsentropicEos::modified_tait(const ModifiedTaitParams& p, double I0) {
    if (!(p.rho_ref > 0.0))
        throw std::invalid_argument("modified Tait: rho_ref must be positive");
    if (p.gamma == 0.0 || p.gamma == 1.0)
        throw std::invalid_argument("modified Tait: gamma must not be 0 or 1");
    if (!(p.B * p.gamma > 0.0))
        throw std::invalid_argument("modified Tait: B*gamma must be positive (K_S > 0)");

    const double B = p.B, gamma = p.gamma, rho_ref = p.rho_ref;
    auto f = [=](double rho) { return B * (std::pow(rho / rho_ref, gamma) - 1.0); };
    auto fp = [=](double rho) {
        return B * gamma / rho_ref * std::pow(rho / rho_ref, gamma - 1.0);
    };
    // g = (f(rho) + gamma B) / ((gamma - 1) rho), the antiderivative of f/rho^2
    auto g = [=, f_inner = f](double rho) {
        return (f_inner(rho) + gamma * B) / ((gamma - 1.0) * rho);
    };
    IsentropicEos eos(Kind::Tait, f, fp, g, I0, {kDefaultRhoLo, kDefaultRhoHi});
    eos.tait_ = p;
    return eos;
}

IsentropicEos IsentropicEos::modified_tait_noh_normalized(const ModifiedTaitParams& p,
                                                          double rho0) {
    if (!(rho0 > 0.0))
        throw std::invalid_argument("modified Tait: rho0 must be positive");
    // I0 = -(f(rho0) + gamma B)/((gamma - 1) rho0) so that I(rho0) = 0
    const double f0 = p.B * (std::pow(rho0 / p.rho_ref, p.gamma) - 1.0);
    const double I0 = -(f0 + p.gamma * p.B) / ((p.gamma - 1.0) * rho0);
    return modified_tait(p, I0);
}

IsentropicEos IsentropicEos::polytropic(const PolytropicParams& p) {
    if (!(p.A1 > 0.0))
        throw std::invalid_argument("polytropic: A1 must be positive");
    if (!(p.psi > 1.0))
        throw std::invalid_argument("polytropic: psi must exceed 1");

    const double A1 = p.A1, psi = p.psi;
    auto f = [=](double rho) { return A1 / psi * std::pow(rho, psi); };
    auto fp = [=](double rho) { return A1 * std::pow(rho, psi - 1.0); };
    auto g = [=](double rho) {
        return A1 / (psi * (psi - 1.0)) * std::pow(rho, psi - 1.0);
    };
    IsentropicEos eos(Kind::Polytropic, f, fp, g, 0.0, {kDefaultRhoLo, kDefaultRhoHi});
    eos.poly_ = p;
    return eos;
}

IsentropicEos IsentropicEos::zero_pressure(double I0) {
    auto zero = [](double) { return 0.0; };
    return IsentropicEos(Kind::Zero, zero, zero, zero, I0,
                         {kDefaultRhoLo, kDefaultRhoHi});
}

IsentropicEos IsentropicEos::custom(Fn f, Fn fprime, Fn g, double I0,
                                    DensityInterval validity) {
    if (!f || !fprime || !g)
        throw std::invalid_argument("custom EOS requires f, f', and g");
    return IsentropicEos(Kind::Custom, std::move(f), std::move(fprime), std::move(g),
                         I0, validity);
}

void IsentropicEos::require_valid(double rho) const {
    if (!(rho > 0.0) || !validity_.contains(rho)) bad_density(rho, validity_);
}

double IsentropicEos::pressure(double rho) const {
    require_valid(rho);
    return f_(rho);
}

double IsentropicEos::pressure_derivative(double rho) const {
    require_valid(rho);
    return fprime_(rho);
}

double IsentropicEos::bulk_modulus(double rho) const {
    require_valid(rho);
    return rho * fprime_(rho);
}

double IsentropicEos::sound_speed(double rho) const {
    const double ks = bulk_modulus(rho);
    if (ks < 0.0)
        throw std::domain_error("sound speed undefined: K_S < 0 (non-hyperbolic state)");
    return std::sqrt(ks / rho);
}

double IsentropicEos::sie(double rho) const {
    require_valid(rho);
    return g_(rho) + I0_;
}

double IsentropicEos::entropy_invariant(double rho, double P) const {
    require_valid(rho);
    return P - f_(rho);
}

std::string_view IsentropicEos::kind() const {
    switch (kind_) {
        case Kind::Tait: return "tait";
        case Kind::Polytropic: return "polytropic";
        case Kind::Zero: return "zero";
        case Kind::Custom: return "custom";
    }
    return "custom";
}

const ModifiedTaitParams* IsentropicEos::tait_params() const {
    return kind_ == Kind::Tait ? &tait_ : nullptr;
}

const PolytropicParams* IsentropicEos::polytropic_params() const {
    return kind_ == Kind::Polytropic ? &poly_ : nullptr;
}

nlohmann::json IsentropicEos::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case Kind::Tait:
            j = {{"type", "tait"},
                 {"B", tait_.B},
                 {"gamma", tait_.gamma},
                 {"rho_ref", tait_.rho_ref},
                 {"I0", I0_}};
            break;
        case Kind::Polytropic:
            j = {{"type", "polytropic"}, {"A1", poly_.A1}, {"psi", poly_.psi},
                 {"I0", I0_}};
            break;
        case Kind::Zero:
            j = {{"type", "zero"}, {"I0", I0_}};
            break;
        case Kind::Custom:
            throw std::invalid_argument("custom EOS is not serializable");
    }
    return j;
}

IsentropicEos IsentropicEos::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw std::invalid_argument("EOS spec must be an object with a \"type\" key");
    const std::string type = j.at("type").get<std::string>();

    auto check_keys = [&](std::initializer_list<const char*> allowed) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            bool known = it.key() == "type";
            for (const char* k : allowed) known = known || it.key() == k;
            if (!known)
                throw std::invalid_argument("unknown key '" + it.key() +
                                            "' in EOS spec of type '" + type + "'");
        }
    };

    const double I0 = j.value("I0", 0.0);
    if (type == "tait") {
        check_keys({"B", "gamma", "rho_ref", "I0"});
        return modified_tait({j.at("B").get<double>(), j.at("gamma").get<double>(),
                              j.at("rho_ref").get<double>()},
                             I0);
    }
    if (type == "polytropic") {
        check_keys({"A1", "psi", "I0"});
        if (I0 != 0.0)
            throw std::invalid_argument("polytropic EOS requires I0 = 0");
        return polytropic({j.at("A1").get<double>(), j.at("psi").get<double>()});
    }
    if (type == "zero") {
        check_keys({"I0"});
        return zero_pressure(I0);
    }
    throw std::invalid_argument("unknown EOS type '" + type + "'");
}

}  // namespace isoeuler
