#pragma once

#include <vector>

#include "fade/functionals.hpp"
#include "fade/grid.hpp"

namespace fade {

struct SolverConfig {
    double dt = 2e-3;            ///< time step
    double t_end = 3.0;          ///< final rescaled time
    double newton_tol = 1e-13;   ///< nonlinear residual tolerance (scaled by cell measure)
    int newton_max_iter = 30;
    double theta = 1.0;          ///< implicitness, in [1/2, 1]
    int diag_every = 25;         ///< diagnostics cadence in steps
    bool store_fields = true;    ///< keep the field at every diagnostic time

    void validate() const;
};

/// Time history of a quotient-equation run: diagnostic times, stored fields,
/// and the functional reports at those times.
struct Trajectory {
    std::vector<double> times;
    std::vector<RadialField> fields;
    std::vector<EntropyReport> reports;
};

/// Integrates the quotient-form rescaled equation
///   w_t = (1/V) div[ w V grad( (m/(m-1)) (w^{m-1}-1) V^{m-1} ) ],  V = V_{D*},
/// by a theta-implicit finite-volume scheme in divergence form with harmonic
/// face mobilities, zero flux at r = 0, and w = 1 clamped at r_max. Newton
/// iteration runs each step to newton_tol, retrying with dt/2 on stagnation.
/// Throws sandwich_error if w drifts past the initial envelope, and
/// convergence_error if Newton fails even after step halving.
Trajectory simulate(const RadialField& w0, const SandwichBounds& bounds, const Exponents& exps,
                    const SolverConfig& cfg);

/// Entropy-production identity defect per diagnostic interval:
/// |F(t2) - F(t1) + int I dt| / max(int I dt, floor), trapezoidal int I.
std::vector<double> entropy_production_residual(const Trajectory& traj, double floor = 1e-300);

/// Worst pointwise excursion of the stored fields outside [W0, W1].
double sandwich_check(const Trajectory& traj, const SandwichBounds& bounds);

/// Max drift of the relative mass over the stored reports.
double mass_drift(const Trajectory& traj);

}  // namespace fade
