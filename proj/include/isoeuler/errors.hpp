#pragma once

#include <stdexcept>
#include <string>

namespace isoeuler {

// Raised when an ODE right-hand side or quadrature hits a singular locus.
// `where` is the coordinate (xi in similarity space, J in the Case-I
// autonomous plane) at which the denominator vanished.
class SingularLocusError : public std::runtime_error {
public:
    SingularLocusError(const std::string& msg, double where)
        : std::runtime_error(msg), where_(where) {}
    double where() const { return where_; }

private:
    double where_;
};

// Sonic locus: the quadrature/discriminant denominator vanished.
class SonicPointError : public SingularLocusError {
public:
    using SingularLocusError::SingularLocusError;
};

// Critical point of the autonomous system (both derivatives blow up).
class CriticalPointError : public SingularLocusError {
public:
    using SingularLocusError::SingularLocusError;
};

// Root bracketing failed (no sign change found within the scan limits).
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad or unknown key in a run configuration file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace isoeuler
