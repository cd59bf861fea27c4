#include "isoeuler/similarity.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace isoeuler {

namespace {

constexpr double kXiFloor = 1e-300;  // below this xi^(1/alpha) over/underflows

void require_positive_rt(double r, double t) {
    if (!(r > 0.0)) throw std::domain_error("similarity transform requires r > 0");
    if (!(t > 0.0)) throw std::domain_error("similarity transform requires t > 0");
}

void require_xi(double xi) {
    if (std::abs(xi) < kXiFloor)
        throw std::domain_error("similarity RHS: |xi| below representable floor");
    if (!(xi > 0.0))
        throw std::domain_error("similarity RHS requires xi > 0");
}

}  // namespace

SimilarityExponents similarity_exponents(double a1, double a2, double a3) {
    if (a1 == 0.0 || a2 == 0.0)
        throw std::invalid_argument("similarity_exponents: a1 and a2 must be nonzero");
    return {a2 / a1, (a2 - a1) / a2, a3 / a2, (a3 + 2.0 * a2 - 2.0 * a1) / a2,
            (2.0 * a2 - 2.0 * a1) / a2};
}

SimilarityState to_similarity(double r, double t, double rho, double u,
                              const SimilarityExponents& e) {
    require_positive_rt(r, t);
    return {r / std::pow(t, e.alpha), rho * std::pow(r, -e.zeta),
            u * std::pow(r, -e.beta), std::nullopt, std::nullopt};
}

SimilarityState to_similarity(double r, double t, double rho, double u, double P,
                              double I, const SimilarityExponents& e) {
    SimilarityState s = to_similarity(r, t, rho, u, e);
    s.m = P * std::pow(r, -e.lambda);
    s.h = I * std::pow(r, -e.tau);
    return s;
}

PhysicalState from_similarity(const SimilarityState& s, double r,
                              const SimilarityExponents& e) {
    if (!(r > 0.0)) throw std::domain_error("from_similarity requires r > 0");
    if (e.alpha == 0.0)
        throw std::domain_error("from_similarity: alpha = 0, t not recoverable from xi");
    PhysicalState p;
    p.t = std::pow(r / s.xi, 1.0 / e.alpha);
    p.rho = std::pow(r, e.zeta) * s.w;
    p.u = std::pow(r, e.beta) * s.j;
    if (s.m) p.P = std::pow(r, e.lambda) * *s.m;
    if (s.h) p.I = std::pow(r, e.tau) * *s.h;
    return p;
}

namespace {

// Shared pieces of the reduced system at a similarity point.
struct ReducedTerms {
    double x;  // alpha xi^(1/alpha)
    double K;  // r^(-zeta-2beta) K_S[r^zeta w]
};

ReducedTerms reduced_terms(const SimilarityState& s, const SimilarityExponents& e,
                           const IsentropicEos& eos, double r) {
    require_xi(s.xi);
    const double x = e.alpha * std::pow(s.xi, 1.0 / e.alpha);
    const double K = std::pow(r, -e.zeta - 2.0 * e.beta) *
                     eos.bulk_modulus(std::pow(r, e.zeta) * s.w);
    return {x, K};
}

}  // namespace

double sonic_discriminant(const SimilarityState& s, const SimilarityExponents& e,
                          int, const IsentropicEos& eos, double r) {
    const auto [x, K] = reduced_terms(s, e, eos, r);
    const double rel = x - s.j;
    return rel * rel - K / s.w;
}

Eigen::Vector2d general_rhs(const SimilarityState& s, const SimilarityExponents& e,
                            int n, const IsentropicEos& eos, double r) {
    const auto [x, K] = reduced_terms(s, e, eos, r);
    const double xi = s.xi, w = s.w, j = s.j;
    const double d = xi * (x - j);

    Eigen::Matrix2d M;
    M << d, -xi * w,
        -K * xi, w * w * d;
    Eigen::Vector2d b;
    b << (e.zeta + e.beta + n) * j * w,
        K * e.zeta * w + e.beta * w * w * j * j;

    const double det = M.determinant();
    const double scale = w * w * d * d + std::abs(K) * xi * xi * w +
                         std::numeric_limits<double>::min();
    if (std::abs(det) <= 1e-13 * scale) {
        std::ostringstream os;
        os << "sonic/critical point: reduced system singular at xi = " << xi;
        throw SonicPointError(os.str(), xi);
    }
    return M.inverse() * b;
}

double mass_rhs_wprime(const SimilarityState& s, const SimilarityExponents& e, int n,
                       double jprime) {
    require_xi(s.xi);
    const double x = e.alpha * std::pow(s.xi, 1.0 / e.alpha);
    const double den = s.xi * (x - s.j);
    if (std::abs(den) <= 1e-14 * std::abs(s.xi) * (std::abs(x) + std::abs(s.j)))
        throw SonicPointError("mass reduction singular: j = alpha xi^(1/alpha)", s.xi);
    return (s.xi * s.w * jprime + (e.zeta + e.beta + n) * s.j * s.w) / den;
}

double momentum_rhs_jprime(const SimilarityState& s, const SimilarityExponents& e,
                           const IsentropicEos& eos, double r, double wprime) {
    const auto [x, K] = reduced_terms(s, e, eos, r);
    const double den = s.xi * s.w * s.w * (x - s.j);
    if (std::abs(den) <=
        1e-14 * std::abs(s.xi) * s.w * s.w * (std::abs(x) + std::abs(s.j)))
        throw SonicPointError("momentum reduction singular: j = alpha xi^(1/alpha)",
                              s.xi);
    return (K * (e.zeta * s.w + s.xi * wprime) + e.beta * s.w * s.w * s.j * s.j) / den;
}

// ---------------------------------------------------------------------------
// Case I autonomous system
// ---------------------------------------------------------------------------

namespace {

struct CaseIConstants {
    double alpha, beta, zeta;
    double p;    // a1/a2, the xi exponent of j
    double q;    // a1 a3 / ((a2-a1) a2), the xi exponent of w
    double psi;  // (a3 + 2a2 - 2a1)/a3
};

CaseIConstants case1_constants(double a1, double a2, double a3) {
    if (a1 == 0.0 || a2 == 0.0 || a3 == 0.0 || a1 == a2)
        throw std::invalid_argument(
            "Case I requires a1 != 0, a2 != 0, a3 != 0 and a1 != a2");
    return {a2 / a1,
            (a2 - a1) / a2,
            a3 / a2,
            a1 / a2,
            a1 * a3 / ((a2 - a1) * a2),
            (a3 + 2.0 * a2 - 2.0 * a1) / a3};
}

}  // namespace

CaseITransformedState case1_transform(double xi, double w, double j, double a1,
                                      double a2, double a3) {
    require_xi(xi);
    const auto c = case1_constants(a1, a2, a3);
    return {j * std::pow(xi, -c.p), w * std::pow(xi, -c.q)};
}

std::pair<double, double> case1_untransform(const CaseITransformedState& s, double xi,
                                            double a1, double a2, double a3) {
    require_xi(xi);
    const auto c = case1_constants(a1, a2, a3);
    return {std::pow(xi, c.q) * s.W, std::pow(xi, c.p) * s.J};
}

DeltaSystem case1_delta(const CaseITransformedState& s, double a1, double a2,
                        double a3, double A1, int n) {
    const auto c = case1_constants(a1, a2, a3);
    if (!(s.W > 0.0))
        throw std::domain_error("case1_delta requires W > 0 (fractional powers of W)");
    const double J = s.J, W = s.W;
    const double rel = c.alpha - J;
    const double Wp1 = std::pow(W, c.psi - 1.0);  // W^(psi-1)

    const double b1 = W * ((c.zeta + c.beta + n + c.p) * J - c.q * rel);
    const double b2 = A1 * (c.zeta + c.q) * Wp1 + c.beta * J * J - c.p * rel * J;

    DeltaSystem d;
    d.delta = rel * rel - A1 * Wp1;
    d.delta1 = b1 * rel + W * b2;
    d.delta2 = rel * b2 + A1 * (Wp1 / W) * b1;
    return d;
}

CaseIDerivatives case1_delta_rhs(const CaseITransformedState& s, double a1, double a2,
                                 double a3, double A1, int n) {
    const auto c = case1_constants(a1, a2, a3);
    const DeltaSystem d = case1_delta(s, a1, a2, a3, A1, n);

    const double rel = c.alpha - s.J;
    const double Wp1 = std::pow(s.W, c.psi - 1.0);
    // Delta2 -> 0 with Delta1 or Delta finite means both quotients blow up.
    const double scale2 = std::max(std::abs(d.delta1), std::abs(d.delta));
    if (std::abs(d.delta2) <= 1e-14 * scale2 + std::numeric_limits<double>::min())
        throw CriticalPointError("Case I critical point: Delta2 = 0", s.J);

    CaseIDerivatives out;
    out.dW_dJ = d.delta1 / d.delta2;
    out.dlnxi_dJ = d.delta / d.delta2;
    out.at_sonic_locus = std::abs(d.delta) <= 1e-12 * (rel * rel + std::abs(A1) * Wp1);
    return out;
}

std::pair<double, double> case2_closed_form(double xi, double j0, double w0, int n) {
    if (xi == 0.0)
        throw std::domain_error("case2_closed_form: pole at xi = 0");
    return {w0 * std::pow(xi - j0, n) * std::pow(xi, -n), j0};
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) with singular-locus detection
// ---------------------------------------------------------------------------

std::string_view halt_reason_name(HaltReason r) {
    switch (r) {
        case HaltReason::ReachedEnd: return "reached_end";
        case HaltReason::SonicPoint: return "sonic_point";
        case HaltReason::CriticalPoint: return "critical_point";
        case HaltReason::StepUnderflow: return "step_underflow";
    }
    return "?";
}

namespace {

using Vec2 = Eigen::Vector2d;

struct Dp5Stages {
    Vec2 y5;    // 5th-order solution
    Vec2 k7;    // FSAL derivative at the step end
    double err; // normalized embedded error estimate
};

// Butcher tableau of Dormand-Prince 5(4).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - bhat, for the embedded 4th-order error estimate
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

Dp5Stages dp5_try_step(const OdeRhs& rhs, double x, const Vec2& y, const Vec2& k1,
                       double h, const IntegrateOptions& o) {
    const Vec2 k2 = rhs(x + c2 * h, y + h * (a21 * k1));
    const Vec2 k3 = rhs(x + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Vec2 k4 = rhs(x + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec2 k5 =
        rhs(x + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec2 k6 =
        rhs(x + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vec2 y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec2 k7 = rhs(x + h, y5);
    const Vec2 errv =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double sc =
            o.abs_tol + o.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        const double q = errv[i] / sc;
        err += q * q;
    }
    err = std::sqrt(0.5 * err);
    if (!y5.allFinite() || !std::isfinite(err))
        throw SonicPointError("non-finite state during step", x + h);
    return {y5, k7, err};
}

// Advance from (x0, y0) to x1 with no event handling; used by the bisection
// refinement of a singular xi. Throws if the right-hand side fails inside.
Vec2 plain_advance(const OdeRhs& rhs, double x0, Vec2 y, double x1,
                   const IntegrateOptions& o) {
    if (x1 == x0) return y;
    double x = x0;
    double h = x1 - x0;
    Vec2 k1 = rhs(x, y);
    std::size_t steps = 0;
    while ((x1 - x) * (x1 - x0) > 0.0) {
        if (++steps > o.max_steps)
            throw std::runtime_error("plain_advance: step budget exhausted");
        if (std::abs(h) > std::abs(x1 - x)) h = x1 - x;
        const Dp5Stages st = dp5_try_step(rhs, x, y, k1, h, o);
        if (st.err <= 1.0) {
            x += h;
            y = st.y5;
            k1 = st.k7;
        }
        const double fac =
            std::clamp(0.9 * std::pow(std::max(st.err, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(x)))
            throw SonicPointError("step underflow inside refinement", x);
    }
    return y;
}

bool guard_flipped(double g_ref, double g) {
    if (!std::isfinite(g)) return true;
    return g_ref * g < 0.0;
}

}  // namespace

Trajectory integrate(const OdeRhs& rhs, const OdeGuard& guard,
                     const SimilarityState& initial, double xi_end,
                     const IntegrateOptions& opts) {
    Trajectory traj;
    double x = initial.xi;
    Vec2 y(initial.w, initial.j);
    traj.points.push_back({x, y[0], y[1]});

    if (xi_end == x) {
        traj.terminal_xi = x;
        return traj;
    }
    const double dir = xi_end > x ? 1.0 : -1.0;

    // The initial point must be regular; let failures propagate to the caller.
    Vec2 k1 = rhs(x, y);
    double g_prev = guard ? guard(x, y) : 1.0;
    double g_scale = std::abs(g_prev);  // natural size of the guard on this run

    // Bisection refinement of a singular xi inside (a, b): `a` is the last
    // state where the trajectory is computable and the guard keeps its sign.
    auto refine_boundary = [&](double a, Vec2 ya, double b, HaltReason reason,
                               const std::string& msg) {
        const double g_ref = guard ? guard(a, ya) : 1.0;
        while (std::abs(b - a) > opts.singular_xi_tol * std::max(1.0, std::abs(a))) {
            const double mid = 0.5 * (a + b);
            bool bad = false;
            Vec2 ym;
            try {
                ym = plain_advance(rhs, a, ya, mid, opts);
                if (guard && guard_flipped(g_ref, guard(mid, ym))) bad = true;
            } catch (const std::exception&) {
                bad = true;
            }
            if (bad) {
                b = mid;
            } else {
                a = mid;
                ya = ym;
            }
        }
        traj.points.push_back({a, ya[0], ya[1]});
        traj.terminal_xi = a;
        traj.reason = reason;
        traj.message = msg;
    };

    double h = dir * std::max(1e-6 * std::abs(xi_end - x),
                              1e-4 * std::max(std::abs(x), 1e-3));
    std::size_t steps = 0;
    std::size_t rejects_at_floor = 0;

    while ((xi_end - x) * dir > 0.0) {
        if (++steps > opts.max_steps) {
            traj.reason = HaltReason::StepUnderflow;
            traj.terminal_xi = x;
            traj.message = "step budget exhausted";
            return traj;
        }
        if ((x + h - xi_end) * dir > 0.0) h = xi_end - x;

        const double h_floor = 1e-14 * std::max(1.0, std::abs(x));
        bool failed = false;
        HaltReason fail_reason = HaltReason::SonicPoint;
        std::string fail_msg;
        Dp5Stages st{};
        try {
            st = dp5_try_step(rhs, x, y, k1, h, opts);
        } catch (const CriticalPointError& err) {
            failed = true;
            fail_reason = HaltReason::CriticalPoint;
            fail_msg = err.what();
        } catch (const SingularLocusError& err) {
            failed = true;
            fail_reason = HaltReason::SonicPoint;
            fail_msg = err.what();
        } catch (const std::domain_error& err) {
            // Left the admissible state space (e.g. density out of the EOS
            // validity interval); treat the domain boundary like a singular
            // locus and refine it.
            failed = true;
            fail_reason = HaltReason::SonicPoint;
            fail_msg = err.what();
        }

        if (failed) {
            if (std::abs(h) <= h_floor || ++rejects_at_floor > 200) {
                refine_boundary(x, y, x + h, fail_reason, fail_msg);
                return traj;
            }
            h *= 0.5;
            continue;
        }

        if (st.err <= 1.0) {
            // Accepted. Check the guard before committing.
            if (guard) {
                const double g_new = guard(x + h, st.y5);
                if (guard_flipped(g_prev, g_new)) {
                    refine_boundary(x, y, x + h, HaltReason::SonicPoint,
                                    "guard changed sign (singular locus)");
                    return traj;
                }
                g_prev = g_new;
                g_scale = std::max(g_scale, std::abs(g_new));
            }
            x += h;
            y = st.y5;
            k1 = st.k7;
            traj.points.push_back({x, y[0], y[1]});
            rejects_at_floor = 0;
        }
        const double fac =
            std::clamp(0.9 * std::pow(std::max(st.err, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (std::abs(h) < h_floor) {
            traj.terminal_xi = x;
            // A trajectory can run INTO the singular locus without the guard
            // ever changing sign; a vanishing guard at the stall point is the
            // sonic diagnosis, not a generic underflow.
            if (guard && std::abs(g_prev) <= 1e-6 * g_scale) {
                traj.reason = HaltReason::SonicPoint;
                traj.message = "step size underflow on the singular locus (guard ~ 0)";
            } else {
                traj.reason = HaltReason::StepUnderflow;
                traj.message = "step size underflow";
            }
            return traj;
        }
    }

    traj.terminal_xi = x;
    traj.reason = HaltReason::ReachedEnd;
    return traj;
}

}  // namespace isoeuler
