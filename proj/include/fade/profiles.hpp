#pragma once

#include "fade/exponents.hpp"
#include "fade/grid.hpp"

namespace fade {

/// Parameters of a Barenblatt (m > m_c) or pseudo-Barenblatt (m <= m_c)
/// self-similar solution. For m < m_c, T is the extinction time.
struct ProfileParams {
    double D = 1.0;  ///< profile scale, > 0
    double T = 0.0;  ///< time offset / extinction time, >= 0
    Exponents exps;
};

/// Stationary profile V_D(r) = (D + (1-m)/(2m) r^2)^(-1/(1-m)).
double barenblatt_profile(const ProfileParams& p, double r);
double barenblatt_profile(double D, const Exponents& e, double r);

/// d/dr of the stationary profile, -(r/m) V_D(r)^(2-m).
double barenblatt_profile_deriv(double D, const Exponents& e, double r);

/// Scale factor R(tau) of the self-similar change of variables; the branch is
/// selected by the regime of m vs m_c. Throws regime_error when tau is outside
/// the branch's validity window (tau > -T supercritical, tau < T subcritical).
double scale_radius(const ProfileParams& p, double tau);

/// Self-similar solution U_{D,T}(tau, r) = R(tau)^{-d} V_D(r / R(tau)).
double barenblatt_solution(const ProfileParams& p, double tau, double r);

/// Result of moving a snapshot to self-similar variables.
struct RescaledSnapshot {
    RadialField v;  ///< rescaled field on the same grid as the input
    double t = 0.0; ///< rescaled time log(R(tau)/R(0))
};

/// Applies the self-similar change of variables to a snapshot u(tau, .):
/// t = log(R(tau)/R(0)) and v(x) = R^d u(R x), resampled onto u's grid by
/// monotone cubic interpolation (power-law extrapolation past the last node).
RescaledSnapshot rescale_snapshot(const RadialField& u, const ProfileParams& p, double tau);

/// Same change of variables without resampling: the returned field lives on
/// the input grid scaled by 1/R(tau), so values are exact (no interpolation).
RescaledSnapshot rescale_snapshot_exact(const RadialField& u, const ProfileParams& p, double tau);

/// Inverse of rescale_snapshot: recovers u(tau, .) on v's grid.
RadialField unrescale_snapshot(const RadialField& v, const ProfileParams& p, double tau);

/// Pointwise quotient w = v / V_{Dstar}.
RadialField quotient_field(const RadialField& v, double Dstar, const Exponents& e);

/// Samples V_D on a grid.
RadialField barenblatt_field(GridPtr g, double D, const Exponents& e);

}  // namespace fade
