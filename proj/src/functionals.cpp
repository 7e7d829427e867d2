#include "fade/functionals.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fade/profiles.hpp"

namespace fade {

namespace {

// [(w-1) - (w^m - 1)/m] / (1-m), written in s = w-1 and series-expanded for
// small |s| where the direct form loses all significant digits.
double entropy_density(double s, double m) {
    if (std::fabs(s) < 1e-4) {
        double c2 = 0.5;
        double c3 = (m - 2.0) / 6.0;
        double c4 = (m - 2.0) * (m - 3.0) / 24.0;
        double c5 = (m - 2.0) * (m - 3.0) * (m - 4.0) / 120.0;
        return s * s * (c2 + s * (c3 + s * (c4 + s * c5)));
    }
    return (s - std::expm1(m * std::log1p(s)) / m) / (1.0 - m);
}

}  // namespace

SandwichBounds SandwichBounds::make(double D0, double D1, double Dstar, const Exponents& e) {
    if (!(D1 > 0.0 && D0 >= Dstar && Dstar >= D1))
        throw std::domain_error("SandwichBounds: need 0 < D1 <= Dstar <= D0");
    SandwichBounds b;
    b.D0 = D0;
    b.D1 = D1;
    b.Dstar = Dstar;
    b.W0 = std::pow(Dstar / D0, 1.0 / (1.0 - e.m));
    b.W1 = std::pow(Dstar / D1, 1.0 / (1.0 - e.m));
    return b;
}

Measured relative_entropy(const RadialField& w, const SandwichBounds& b, const Exponents& e) {
    const RadialGrid& g = w.grid();
    RadialField f(w.grid_ptr());
    for (int i = 0; i < w.size(); ++i) {
        if (!(w[i] > 0.0)) throw std::domain_error("relative_entropy: w must be positive");
        double Vm = std::pow(barenblatt_profile(b.Dstar, e, g.node(i)), e.m);
        f[i] = entropy_density(w[i] - 1.0, e.m) * Vm;
    }
    return integrate(f);
}

RadialField linearization_variable(const RadialField& w, double Dstar, const Exponents& e) {
    RadialField g(w.grid_ptr());
    for (int i = 0; i < w.size(); ++i) {
        double Vm1 = Dstar + e.profile_b() * w.grid().node(i) * w.grid().node(i);  // V^{m-1}
        g[i] = (w[i] - 1.0) * Vm1;
    }
    // admissible class for m < m_star vanishes at the origin; the r = 0 node
    // carries no quadrature weight, so this only marks class membership
    if (e.subcritical_hardy() && w.grid().node(0) == 0.0) g[0] = 0.0;
    return g;
}

Measured relative_fisher(const RadialField& w, const SandwichBounds& b, const Exponents& e) {
    const RadialGrid& g = w.grid();
    const double m = e.m;
    // phi = (w^{m-1} - 1) V^{m-1} = v^{m-1} - V^{m-1}
    RadialField phi(w.grid_ptr());
    for (int i = 0; i < w.size(); ++i) {
        if (!(w[i] > 0.0)) throw std::domain_error("relative_fisher: w must be positive");
        double Vm1 = b.Dstar + e.profile_b() * g.node(i) * g.node(i);
        phi[i] = std::expm1((m - 1.0) * std::log(w[i])) * Vm1;
    }
    RadialField dphi = radial_gradient(phi);
    RadialField f(w.grid_ptr());
    for (int i = 0; i < w.size(); ++i) {
        double V = barenblatt_profile(b.Dstar, e, g.node(i));
        f[i] = dphi[i] * dphi[i] * w[i] * V;
    }
    Measured out = integrate(f);
    double c = m / ((m - 1.0) * (m - 1.0));
    out.value *= c;
    out.error *= c;
    return out;
}

Measured linearized_entropy(const RadialField& g, double Dstar, const Exponents& e) {
    if (e.subcritical_hardy() && g[0] != 0.0)
        throw std::domain_error(
            "linearized_entropy: for m < m_star the admissible class has g(0) = 0");
    RadialField f(g.grid_ptr());
    for (int i = 0; i < g.size(); ++i) {
        double V = barenblatt_profile(Dstar, e, g.grid().node(i));
        f[i] = 0.5 * g[i] * g[i] * std::pow(V, 2.0 - e.m);
    }
    return integrate(f);
}

Measured linearized_fisher(const RadialField& g, double Dstar, const Exponents& e) {
    RadialField dg = radial_gradient(g);
    RadialField f(g.grid_ptr());
    for (int i = 0; i < g.size(); ++i) {
        double V = barenblatt_profile(Dstar, e, g.grid().node(i));
        f[i] = dg[i] * dg[i] * V;
    }
    Measured out = integrate(f);
    out.value *= e.m;
    out.error *= e.m;
    return out;
}

EquivalenceBounds entropy_equivalence_bounds(const RadialField& w, const SandwichBounds& b,
                                             const Exponents& e) {
    const double tol = 1e-12 * (1.0 + b.W1);
    for (int i = 0; i < w.size(); ++i)
        if (w[i] < b.W0 - tol || w[i] > b.W1 + tol)
            throw sandwich_error("entropy_equivalence_bounds: w[" + std::to_string(i) +
                                 "] = " + std::to_string(w[i]) + " outside [W0, W1] = [" +
                                 std::to_string(b.W0) + ", " + std::to_string(b.W1) + "]");
    RadialField f(w.grid_ptr());
    for (int i = 0; i < w.size(); ++i) {
        double s = w[i] - 1.0;
        double Vm = std::pow(barenblatt_profile(b.Dstar, e, w.grid().node(i)), e.m);
        f[i] = s * s * Vm;
    }
    Measured q = integrate(f);
    double cl = 0.5 * std::pow(b.W1, e.m - 2.0);
    double cu = 0.5 * std::pow(b.W0, e.m - 2.0);
    return {{cl * q.value, cl * q.error}, {cu * q.value, cu * q.error}};
}

BetaConstants beta_constants(const SandwichBounds& b, const Exponents& e) {
    BetaConstants c;
    double a1 = std::pow(b.W1, 2.0 * (2.0 - e.m));
    double a0 = std::pow(b.W0, 2.0 * (2.0 - e.m));
    c.beta1 = a1 / b.W0;
    c.beta2 = 2.0 * e.d * (1.0 - e.m) * (a1 / a0 - 1.0);
    return c;
}

double gamma_admissible_ratio(const Exponents& e, double C_md) {
    double lambda = e.m / C_md;
    return std::pow(1.0 + lambda / (e.d * (1.0 - e.m)), 1.0 / (2.0 * (2.0 - e.m)));
}

std::optional<double> gamma_rate(const SandwichBounds& b, const Exponents& e, double C_md) {
    if (!(C_md > 0.0)) throw std::domain_error("gamma_rate: C_md must be positive");
    double ratio = std::pow(b.W1 / b.W0, 2.0 * (2.0 - e.m));
    double num = e.m - C_md * e.d * (1.0 - e.m) * (ratio - 1.0);
    if (!(num > 0.0)) return std::nullopt;
    double den = C_md * std::pow(b.W0, e.m - 3.0) * std::pow(b.W1, 2.0 * (2.0 - e.m));
    return 2.0 * num / den;
}

Measured relative_mass(const RadialField& v, double Dstar, const Exponents& e) {
    RadialField f(v.grid_ptr());
    for (int i = 0; i < v.size(); ++i)
        f[i] = v[i] - barenblatt_profile(Dstar, e, v.grid().node(i));
    return integrate(f);
}

EntropyReport entropy_report(double t, const RadialField& w, const SandwichBounds& b,
                             const Exponents& e) {
    EntropyReport r;
    r.t = t;
    r.F = relative_entropy(w, b, e).value;
    r.I = relative_fisher(w, b, e).value;
    RadialField g = linearization_variable(w, b.Dstar, e);
    r.E_lin = linearized_entropy(g, b.Dstar, e).value;
    r.I_lin = linearized_fisher(g, b.Dstar, e).value;
    RadialField v(w.grid_ptr());
    for (int i = 0; i < w.size(); ++i)
        v[i] = w[i] * barenblatt_profile(b.Dstar, e, w.grid().node(i));
    r.rel_mass = relative_mass(v, b.Dstar, e).value;
    r.w_min = w.min();
    r.w_max = w.max();
    return r;
}

}  // namespace fade
