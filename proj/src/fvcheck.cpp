#include "isoeuler/fvcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace isoeuler::fv {

namespace {

struct CellState {
    double rho, u, P, c;
};

CellState primitive(const IsentropicEos& eos, double rho, double mom) {
    return {rho, mom / rho, eos.pressure(rho), eos.sound_speed(rho)};
}

std::pair<CellState, CellState> ghost_states(const Grid1D& g,
                                             const IsentropicEos& eos) {
    const int N = g.cells();
    const CellState first = primitive(eos, g.rho[0], g.mom[0]);
    const CellState last = primitive(eos, g.rho[N - 1], g.mom[N - 1]);
    switch (g.boundary.kind) {
        case Boundary::Periodic:
            return {last, first};
        case Boundary::ReflectiveWalls:
            return {{first.rho, -first.u, first.P, first.c},
                    {last.rho, -last.u, last.P, last.c}};
        case Boundary::NohWallInflow: {
            const double rho0 = g.boundary.rho0, u0 = g.boundary.u0;
            return {{first.rho, -first.u, first.P, first.c},
                    {rho0, -u0, eos.pressure(rho0), eos.sound_speed(rho0)}};
        }
        case Boundary::AnalyticDirichlet: {
            if (!g.boundary.analytic)
                throw std::invalid_argument(
                    "AnalyticDirichlet ghosts need an evaluator");
            const FlowSample a = g.boundary.analytic(g.r_lo - 0.5 * g.dr(), g.time);
            const FlowSample b = g.boundary.analytic(g.r_hi + 0.5 * g.dr(), g.time);
            return {{a.rho, a.u, a.P, eos.sound_speed(a.rho)},
                    {b.rho, b.u, b.P, eos.sound_speed(b.rho)}};
        }
    }
    throw std::logic_error("unreachable boundary kind");
}

// Two-wave HLL flux for (rho, rho u) with P = f(rho).
Eigen::Vector2d hll_flux(const CellState& L, const CellState& R) {
    const Eigen::Vector2d FL(L.rho * L.u, L.rho * L.u * L.u + L.P);
    const Eigen::Vector2d FR(R.rho * R.u, R.rho * R.u * R.u + R.P);
    const double sL = std::min(L.u - L.c, R.u - R.c);
    const double sR = std::max(L.u + L.c, R.u + R.c);
    if (sL >= 0.0) return FL;
    if (sR <= 0.0) return FR;
    const Eigen::Vector2d UL(L.rho, L.rho * L.u);
    const Eigen::Vector2d UR(R.rho, R.rho * R.u);
    return (sR * FL - sL * FR + sL * sR * (UR - UL)) / (sR - sL);
}

}  // namespace

double Grid1D::cell_volume(int i) const {
    const double a = face(i), b = face(i + 1);
    const int m = n_geom + 1;
    return (std::pow(b, m) - std::pow(a, m)) / m;
}

double Grid1D::total_mass() const {
    double mass = 0.0;
    for (int i = 0; i < cells(); ++i) mass += rho[i] * cell_volume(i);
    return mass;
}

double stable_dt(const Grid1D& g, const IsentropicEos& eos) {
    if (!(g.cfl > 0.0) || g.cfl > 0.9)
        throw std::invalid_argument("Grid1D: CFL number must lie in (0, 0.9]");
    const auto [inner, outer] = ghost_states(g, eos);
    double smax = std::max(std::abs(inner.u) + inner.c, std::abs(outer.u) + outer.c);
    for (int i = 0; i < g.cells(); ++i) {
        const CellState s = primitive(eos, g.rho[i], g.mom[i]);
        smax = std::max(smax, std::abs(s.u) + s.c);
    }
    if (smax == 0.0) smax = 1e-300;
    return g.cfl * g.dr() / smax;
}

Grid1D step(const Grid1D& g, const IsentropicEos& eos, double dt) {
    const int N = g.cells();
    if (N < 2) throw std::invalid_argument("Grid1D: need at least 2 cells");
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");

    const auto [inner, outer] = ghost_states(g, eos);

    // CFL precondition over cells and ghosts.
    double smax = std::abs(inner.u) + inner.c;
    smax = std::max(smax, std::abs(outer.u) + outer.c);
    std::vector<CellState> cs(N);
    for (int i = 0; i < N; ++i) {
        if (!(g.rho[i] > 0.0)) {
            std::ostringstream os;
            os << "step: nonpositive density in cell " << i << " at r = "
               << g.center(i) << " (rho = " << g.rho[i] << ")";
            throw std::runtime_error(os.str());
        }
        cs[i] = primitive(eos, g.rho[i], g.mom[i]);
        smax = std::max(smax, std::abs(cs[i].u) + cs[i].c);
    }
    if (dt * smax / g.dr() > 0.9 * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "step: CFL violation, dt*smax/dr = " << dt * smax / g.dr() << " > 0.9";
        throw std::invalid_argument(os.str());
    }

    // Face fluxes, N+1 of them.
    std::vector<Eigen::Vector2d> flux(N + 1);
    flux[0] = hll_flux(inner, cs[0]);
    for (int i = 1; i < N; ++i) flux[i] = hll_flux(cs[i - 1], cs[i]);
    flux[N] = hll_flux(cs[N - 1], outer);

    Grid1D out = g;
    const int n = g.n_geom;
    for (int i = 0; i < N; ++i) {
        const double Am = std::pow(g.face(i), n);      // face areas r^n
        const double Ap = std::pow(g.face(i + 1), n);
        const double V = g.cell_volume(i);
        out.rho[i] = g.rho[i] - dt / V * (Ap * flux[i + 1][0] - Am * flux[i][0]);
        out.mom[i] = g.mom[i] - dt / V * (Ap * flux[i + 1][1] - Am * flux[i][1]) +
                     dt * n * cs[i].P / g.center(i);
        if (!(out.rho[i] > 0.0)) {
            std::ostringstream os;
            os << "step: positivity loss in cell " << i << " at r = " << g.center(i)
               << " (rho = " << out.rho[i] << ", t = " << g.time << ")";
            throw std::runtime_error(os.str());
        }
    }
    out.time = g.time + dt;
    return out;
}

Grid1D advance(Grid1D g, const IsentropicEos& eos, double t_target) {
    while (g.time < t_target * (1.0 - 1e-15)) {
        const double dt = std::min(stable_dt(g, eos), t_target - g.time);
        g = step(g, eos, dt);
    }
    return g;
}

L1Norms l1_error(const Grid1D& g, const IsentropicEos& eos,
                 const AnalyticFields& exact) {
    L1Norms n{0.0, 0.0, 0.0};
    for (int i = 0; i < g.cells(); ++i) {
        const FlowSample ex = exact(g.center(i), g.time);
        const double V = g.cell_volume(i);
        const double u = g.mom[i] / g.rho[i];
        n.rho += std::abs(g.rho[i] - ex.rho) * V;
        n.u += std::abs(u - ex.u) * V;
        n.P += std::abs(eos.pressure(g.rho[i]) - ex.P) * V;
    }
    return n;
}

NohRunReport run_noh(const IsentropicEos& eos, double rho0, double u0, int N,
                     double t_final, double r_hi, double cfl) {
    Grid1D g;
    g.n_geom = 0;  // curvilinear Noh needs an EOS with constant pressure at
                   // non-constant density and is not supported here
    g.r_lo = 0.0;
    g.r_hi = r_hi;
    g.rho = Eigen::ArrayXd::Constant(N, rho0);
    g.mom = Eigen::ArrayXd::Constant(N, -rho0 * u0);
    g.cfl = cfl;
    g.boundary = {Boundary::NohWallInflow, rho0, u0, {}};

    g = advance(std::move(g), eos, t_final);

    const NohSolution exact(eos, rho0, u0);
    NohRunReport rep{g, {}, 0.0, 0.0, 0.0};
    rep.l1 = l1_error(g, eos, [&](double r, double t) { return exact.fields(r, t); });

    // Density-jump midpoint: first crossing of (rho2 + rho0)/2 from the wall.
    const double mid = 0.5 * (exact.shock().rho2 + rho0);
    double pos = 0.0;
    for (int i = 0; i + 1 < g.cells(); ++i) {
        if (g.rho[i] >= mid && g.rho[i + 1] < mid) {
            const double frac = (g.rho[i] - mid) / (g.rho[i] - g.rho[i + 1]);
            pos = g.center(i) + frac * g.dr();
            break;
        }
    }
    rep.shock_position = pos;
    rep.shock_speed = pos / t_final;
    rep.shock_position_error_cells =
        std::abs(pos - exact.shock().D0 * t_final) / g.dr();
    return rep;
}

BubbleRunReport run_bubble(const BubbleSolution& sol, int N, double t0,
                           double t_final, double r_lo, double r_hi, double cfl) {
    const AnalyticFields exact = [sol](double r, double t) {
        return sol.fields(r, t);
    };
    Grid1D g;
    g.n_geom = sol.geometry();
    g.r_lo = r_lo;
    g.r_hi = r_hi;
    g.rho = Eigen::ArrayXd(N);
    g.mom = Eigen::ArrayXd(N);
    for (int i = 0; i < N; ++i) {
        const FlowSample s = exact(g.center(i), t0);
        g.rho[i] = s.rho;
        g.mom[i] = s.rho * s.u;
    }
    g.time = t0;
    g.cfl = cfl;
    g.boundary = {Boundary::AnalyticDirichlet, 0.0, 0.0, exact};

    g = advance(std::move(g), sol.eos(), t_final);
    BubbleRunReport rep{g, l1_error(g, sol.eos(), exact)};
    return rep;
}

}  // namespace isoeuler::fv
