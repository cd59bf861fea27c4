#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "isoeuler/eos.hpp"
#include "isoeuler/errors.hpp"

namespace isoeuler {

// Exponents of the similarity change of variables
//   xi = r / t^alpha,  rho = r^zeta w(xi),  u = r^beta j(xi),
//   P = r^lambda m(xi),  I = r^tau h(xi).
struct SimilarityExponents {
    double alpha, beta, zeta, lambda, tau;
};

// Build the exponent set from the scaling constants. Requires a1 != 0 and
// a2 != 0 (all five ratios carry a1 or a2 denominators).
SimilarityExponents similarity_exponents(double a1, double a2, double a3);

// A point in similarity space. m and h are populated only when the physical
// pressure/SIE were supplied to the transform.
struct SimilarityState {
    double xi;
    double w;  // similarity density
    double j;  // similarity velocity
    std::optional<double> m;  // similarity pressure
    std::optional<double> h;  // similarity SIE
};

// Physical fields at (r, t) recovered from a similarity point.
struct PhysicalState {
    double t;
    double rho;
    double u;
    std::optional<double> P;
    std::optional<double> I;
};

// Transform (r,t,rho,u[,P,I]) -> (xi,w,j[,m,h]). Requires r > 0, t > 0.
SimilarityState to_similarity(double r, double t, double rho, double u,
                              const SimilarityExponents& e);
SimilarityState to_similarity(double r, double t, double rho, double u, double P,
                              double I, const SimilarityExponents& e);

// Inverse transform at radius r: recovers t from xi (requires alpha != 0)
// and the physical fields from (w, j[, m, h]).
PhysicalState from_similarity(const SimilarityState& s, double r,
                              const SimilarityExponents& e);

// -------------------------------------------------------------------------
// Reduced ODE system
//
// The mass and momentum reductions are mutually implicit in (w', j'); the
// pair is obtained by solving the underlying 2x2 linear system
//
//   xi (alpha xi^(1/alpha) - j) w' - xi w j'                = (zeta+beta+n) j w
//   -K xi w' + xi w^2 (alpha xi^(1/alpha) - j) j'           = K zeta w + beta w^2 j^2
//
// with K = r^(-zeta-2 beta) K_S[r^zeta w]. The r-dependence of K cancels
// for the four power-law symmetry classes; for a general K_S it does not,
// which is why r is an explicit argument.
// -------------------------------------------------------------------------

// Simultaneous solve; returns (dw/dxi, dj/dxi). Throws SonicPointError when
// the system determinant (the sonic discriminant) vanishes.
Eigen::Vector2d general_rhs(const SimilarityState& s, const SimilarityExponents& e,
                            int n, const IsentropicEos& eos, double r = 1.0);

// Sonic discriminant (alpha xi^(1/alpha) - j)^2 - K/w; the 2x2 system is
// singular exactly where this vanishes.
double sonic_discriminant(const SimilarityState& s, const SimilarityExponents& e,
                          int n, const IsentropicEos& eos, double r = 1.0);

// The two reductions taken one at a time, each with the other derivative
// supplied. These are the forms in which the equations decouple under a
// velocity ansatz (e.g. j = -xi with j' = -1).
double mass_rhs_wprime(const SimilarityState& s, const SimilarityExponents& e, int n,
                       double jprime);
double momentum_rhs_jprime(const SimilarityState& s, const SimilarityExponents& e,
                           const IsentropicEos& eos, double r, double wprime);

// -------------------------------------------------------------------------
// Case I autonomous system
//
// Under j = xi^(a1/a2) J, w = xi^(a1 a3 / ((a2-a1) a2)) W and the power-law
// bulk modulus K_S = A1 rho^psi, the reduced system becomes autonomous:
//   xi W' = Delta1 / Delta,   xi J' = Delta2 / Delta,
// equivalently dW/dJ = Delta1/Delta2 with the quadrature
// dln(xi)/dJ = Delta/Delta2.
// -------------------------------------------------------------------------

struct CaseITransformedState {
    double J;
    double W;
};

// j = xi^(a1/a2) J and w = xi^q W with q = a1 a3 / ((a2 - a1) a2).
CaseITransformedState case1_transform(double xi, double w, double j, double a1,
                                      double a2, double a3);
// Inverse: (w, j) at the given xi.
std::pair<double, double> case1_untransform(const CaseITransformedState& s, double xi,
                                            double a1, double a2, double a3);

struct DeltaSystem {
    double delta;   // sonic discriminant (alpha - J)^2 - A1 W^(psi-1)
    double delta1;  // numerator of xi W'
    double delta2;  // numerator of xi J'
};

DeltaSystem case1_delta(const CaseITransformedState& s, double a1, double a2,
                        double a3, double A1, int n);

struct CaseIDerivatives {
    double dW_dJ;      // Delta1 / Delta2
    double dlnxi_dJ;   // Delta  / Delta2
    bool at_sonic_locus;  // Delta ~ 0: quadrature singular
};

// Throws CriticalPointError when Delta2 vanishes (both derivatives blow up).
CaseIDerivatives case1_delta_rhs(const CaseITransformedState& s, double a1, double a2,
                                 double a3, double A1, int n);

// Case II closed form: w = w0 (xi - j0)^n xi^(-n), j = j0. Pole at xi = 0.
std::pair<double, double> case2_closed_form(double xi, double j0, double w0, int n);

// -------------------------------------------------------------------------
// Adaptive embedded Runge-Kutta integration (Dormand-Prince 5(4))
// -------------------------------------------------------------------------

enum class HaltReason { ReachedEnd, SonicPoint, CriticalPoint, StepUnderflow };

std::string_view halt_reason_name(HaltReason r);

struct TrajectoryPoint {
    double xi, w, j;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    HaltReason reason = HaltReason::ReachedEnd;
    double terminal_xi = 0.0;
    std::string message;
};

struct IntegrateOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double singular_xi_tol = 1e-12;  // bisection refinement of a singular xi
    std::size_t max_steps = 1000000;
};

using OdeRhs = std::function<Eigen::Vector2d(double xi, const Eigen::Vector2d& y)>;
// Sign change of the guard along the trajectory marks a singular locus.
using OdeGuard = std::function<double(double xi, const Eigen::Vector2d& y)>;

// Integrate y' = rhs(xi, y) from initial.xi to xi_end (either direction).
// Halts cleanly when the guard changes sign or the right-hand side throws
// SingularLocusError, refining the terminal xi by bisection; persistent
// step-size underflow yields a partial trajectory with a diagnostic.
Trajectory integrate(const OdeRhs& rhs, const OdeGuard& guard,
                     const SimilarityState& initial, double xi_end,
                     const IntegrateOptions& opts = {});

}  // namespace isoeuler
