#include "fade/experiments.hpp"

#include <cmath>
#include <stdexcept>

namespace fade {

GridPtr make_grid(const ExperimentConfig& c) {
    double hint = -2.0 * (2.0 - c.m) / (1.0 - c.m);  // decay of Barenblatt differences
    return RadialGrid::graded(c.d, c.r_max, c.n, c.r_uniform, c.uniform_fraction, hint);
}

double select_dstar(const RadialField& v0, double D0, double D1, const Exponents& e) {
    if (!(e.m > e.m_star))
        throw regime_error("select_dstar: mass balance needs m > m_star; use explicit Dstar");
    auto mass = [&](double D) { return relative_mass(v0, D, e).value; };
    double lo = D1, hi = D0;
    double flo = mass(lo), fhi = mass(hi);
    // int(v0 - V_D) is increasing in D; V_{D1} >= v0 >= V_{D0} gives the bracket
    if (flo > 0.0 || fhi < 0.0)
        throw convergence_error("select_dstar: relative mass does not change sign on [D1, D0]");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mass(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * hi) break;
    }
    return 0.5 * (lo + hi);
}

RadialField averaged_initial_data(GridPtr grid, double D0, double D1, const Exponents& e) {
    return RadialField::sample(std::move(grid), [&](double r) {
        return 0.5 * (barenblatt_profile(D0, e, r) + barenblatt_profile(D1, e, r));
    });
}

Problem build_problem(const ExperimentConfig& c) {
    c.validate();
    Problem p;
    p.exps = derive_exponents(c.m, c.d);
    p.grid = make_grid(c);
    RadialField v0 = averaged_initial_data(p.grid, c.D0, c.D1, p.exps);
    double Ds = (c.Dstar > 0.0) ? c.Dstar : select_dstar(v0, c.D0, c.D1, p.exps);
    p.bounds = SandwichBounds::make(c.D0, c.D1, Ds, p.exps);
    p.w0 = quotient_field(v0, Ds, p.exps);
    return p;
}

RadialField random_admissible_quotient(const SandwichBounds& b, const Exponents& e, GridPtr grid,
                                       Rng& rng) {
    double rc = rng.uniform(0.3, 5.0);
    double s = rng.uniform(0.4, 2.5);
    double headroom = std::min(1.0 - b.W0, b.W1 - 1.0);
    double a = rng.uniform(0.05, 0.8 * headroom);
    if (rng.uniform() < 0.5) a = -a;
    RadialField w = RadialField::sample(grid, [&](double r) {
        double bump = std::exp(-0.5 * (r - rc) * (r - rc) / (s * s));
        return 1.0 + a / (1.0 + r * r) * bump;
    });
    (void)e;
    return w;
}

}  // namespace fade
