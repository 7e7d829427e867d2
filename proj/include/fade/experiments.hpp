#pragma once

#include "fade/config.hpp"
#include "fade/functionals.hpp"
#include "fade/grid.hpp"
#include "fade/profiles.hpp"
#include "fade/solver.hpp"

namespace fade {

/// Everything needed to run one quotient-equation experiment.
struct Problem {
    Exponents exps;
    GridPtr grid;
    SandwichBounds bounds;
    RadialField w0;
};

GridPtr make_grid(const ExperimentConfig& c);

/// Unique D in [D1, D0] with zero relative mass against v0 (bisection on the
/// monotone map D -> int(v0 - V_D)). Requires m > m_star.
double select_dstar(const RadialField& v0, double D0, double D1, const Exponents& e);

/// Mass-balanced average of the two barrier profiles, the standard
/// non-stationary sandwiched initial datum: v0 = (V_{D0} + V_{D1}) / 2.
RadialField averaged_initial_data(GridPtr grid, double D0, double D1, const Exponents& e);

/// Assembles the experiment described by the config: grid, D* (selected by
/// mass balance when config.Dstar == 0), sandwich bounds and w0.
Problem build_problem(const ExperimentConfig& c);

/// Random admissible quotient: w = 1 + a (1+r^2)^{-1} bump(r), scaled to stay
/// inside [W0, W1]; tails match the |w-1| = O(r^{-2}) law.
RadialField random_admissible_quotient(const SandwichBounds& b, const Exponents& e, GridPtr grid,
                                       Rng& rng);

}  // namespace fade
