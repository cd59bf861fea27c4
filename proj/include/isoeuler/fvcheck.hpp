#pragma once

#include <functional>

#include <Eigen/Core>

#include "isoeuler/eos.hpp"
#include "isoeuler/solutions.hpp"

namespace isoeuler::fv {

// Analytic reference evaluator used for initialization, Dirichlet ghost
// data, and error norms.
using AnalyticFields = std::function<FlowSample(double r, double t)>;

enum class Boundary {
    Periodic,
    ReflectiveWalls,   // mirrored ghosts with negated velocity at both ends
    NohWallInflow,     // wall at r_lo, fixed inflow state (rho0, -u0) at r_hi
    AnalyticDirichlet  // ghosts from an analytic solution at the current time
};

struct BoundarySpec {
    Boundary kind = Boundary::Periodic;
    double rho0 = 0.0, u0 = 0.0;  // NohWallInflow
    AnalyticFields analytic;      // AnalyticDirichlet
};

// Uniform 1D grid of cell-averaged (rho, rho u) in planar/cylindrical/
// spherical geometry. Pressure is never an independent unknown; it is
// evaluated from rho through the EOS wherever needed, so the entropy
// invariant P - f(rho) is zero by construction.
struct Grid1D {
    int n_geom = 0;                 // 0, 1, 2
    double r_lo = 0.0, r_hi = 1.0;  // cm
    Eigen::ArrayXd rho;             // g/cm^3, one entry per cell
    Eigen::ArrayXd mom;             // rho u, g/(cm^2 us)
    double time = 0.0;              // us
    double cfl = 0.5;               // <= 0.9
    BoundarySpec boundary;

    int cells() const { return static_cast<int>(rho.size()); }
    double dr() const { return (r_hi - r_lo) / cells(); }
    double face(int i) const { return r_lo + i * dr(); }
    double center(int i) const { return r_lo + (i + 0.5) * dr(); }
    // Geometric cell volume, (r_{i+1}^{n+1} - r_i^{n+1}) / (n+1).
    double cell_volume(int i) const;
    double total_mass() const;
};

// Largest stable time step, cfl * dr / max(|u| + c).
double stable_dt(const Grid1D& g, const IsentropicEos& eos);

// One explicit conservative update with a two-wave (HLL) flux; the momentum
// geometric source n P / r is added unsplit at cell centers. Rejects steps
// violating the CFL bound of 0.9 and aborts on positivity loss.
Grid1D step(const Grid1D& g, const IsentropicEos& eos, double dt);

// Repeated steps up to exactly t_target.
Grid1D advance(Grid1D g, const IsentropicEos& eos, double t_target);

struct L1Norms {
    double rho, u, P;  // volume-weighted L1 against the analytic fields
};

L1Norms l1_error(const Grid1D& g, const IsentropicEos& eos,
                 const AnalyticFields& exact);

struct NohRunReport {
    Grid1D grid;
    L1Norms l1;
    double shock_position;             // density-jump midpoint at t_final
    double shock_speed;                // shock_position / t_final
    double shock_position_error_cells; // |position - D0 t| / dr
};

NohRunReport run_noh(const IsentropicEos& eos, double rho0, double u0, int N,
                     double t_final, double r_hi = 0.5, double cfl = 0.8);

struct BubbleRunReport {
    Grid1D grid;
    L1Norms l1;
};

BubbleRunReport run_bubble(const BubbleSolution& sol, int N, double t0,
                           double t_final, double r_lo, double r_hi,
                           double cfl = 0.8);

}  // namespace isoeuler::fv
