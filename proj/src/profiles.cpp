#include "fade/profiles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fade {

double barenblatt_profile(double D, const Exponents& e, double r) {
    if (!(D > 0.0)) throw std::domain_error("barenblatt_profile: D must be positive");
    if (!(r >= 0.0)) throw std::domain_error("barenblatt_profile: r must be >= 0");
    return std::pow(D + e.profile_b() * r * r, -1.0 / (1.0 - e.m));
}

double barenblatt_profile(const ProfileParams& p, double r) {
    return barenblatt_profile(p.D, p.exps, r);
}

double barenblatt_profile_deriv(double D, const Exponents& e, double r) {
    double V = barenblatt_profile(D, e, r);
    return -(r / e.m) * std::pow(V, 2.0 - e.m);
}

double scale_radius(const ProfileParams& p, double tau) {
    const Exponents& e = p.exps;
    switch (e.regime()) {
        case Regime::Critical:
            return std::exp(tau + p.T);
        case Regime::Supercritical: {
            double c = e.d * (e.m - e.m_c);
            if (!(tau + p.T > 0.0))
                throw regime_error("scale_radius: supercritical branch needs tau > -T = " +
                                   std::to_string(-p.T) + ", got tau = " + std::to_string(tau));
            return std::pow(c * (tau + p.T), 1.0 / c);
        }
        case Regime::Subcritical: {
            double c = e.d * (e.m_c - e.m);
            if (!(tau < p.T))
                throw regime_error("scale_radius: subcritical branch needs tau < T = " +
                                   std::to_string(p.T) + " (extinction), got tau = " +
                                   std::to_string(tau));
            return std::pow(c * (p.T - tau), -1.0 / c);
        }
    }
    throw std::logic_error("scale_radius: unreachable");
}

double barenblatt_solution(const ProfileParams& p, double tau, double r) {
    double R = scale_radius(p, tau);
    return std::pow(R, -p.exps.d) * barenblatt_profile(p, r / R);
}

RescaledSnapshot rescale_snapshot_exact(const RadialField& u, const ProfileParams& p, double tau) {
    double R = scale_radius(p, tau);
    double R0 = scale_radius(p, 0.0);
    double Rd = std::pow(R, p.exps.d);
    const RadialGrid& g = u.grid();
    std::vector<double> nodes(g.nodes());
    for (double& r : nodes) r /= R;
    auto scaled = RadialGrid::from_nodes(g.dimension(), std::move(nodes), g.tail_exponent_hint());
    std::vector<double> vals(u.values());
    for (double& v : vals) v *= Rd;
    RescaledSnapshot out{RadialField(scaled, std::move(vals)), std::log(R / R0)};
    return out;
}

RescaledSnapshot rescale_snapshot(const RadialField& u, const ProfileParams& p, double tau) {
    RescaledSnapshot exact = rescale_snapshot_exact(u, p, tau);
    return {exact.v.resample(u.grid_ptr()), exact.t};
}

RadialField unrescale_snapshot(const RadialField& v, const ProfileParams& p, double tau) {
    double R = scale_radius(p, tau);
    double Rd = std::pow(R, -p.exps.d);
    const RadialGrid& g = v.grid();
    std::vector<double> nodes(g.nodes());
    for (double& r : nodes) r *= R;
    auto scaled = RadialGrid::from_nodes(g.dimension(), std::move(nodes), g.tail_exponent_hint());
    std::vector<double> vals(v.values());
    for (double& y : vals) y *= Rd;
    return RadialField(scaled, std::move(vals)).resample(v.grid_ptr());
}

RadialField quotient_field(const RadialField& v, double Dstar, const Exponents& e) {
    std::vector<double> w(static_cast<size_t>(v.size()));
    for (int i = 0; i < v.size(); ++i) {
        if (v[i] < 0.0) throw std::domain_error("quotient_field: v must be non-negative");
        w[static_cast<size_t>(i)] = v[i] / barenblatt_profile(Dstar, e, v.grid().node(i));
    }
    return RadialField(v.grid_ptr(), std::move(w));
}

RadialField barenblatt_field(GridPtr g, double D, const Exponents& e) {
    return RadialField::sample(std::move(g),
                               [&](double r) { return barenblatt_profile(D, e, r); });
}

}  // namespace fade
