#pragma once

#include <optional>
#include <vector>

#include "fade/functionals.hpp"
#include "fade/solver.hpp"
#include "fade/spectral.hpp"

namespace fade {

/// Closed-form decay exponents implied by the spectral gap lambda_{m,d}.
struct RatePrediction {
    double lambda = 0.0;                ///< spectral gap
    std::optional<double> gamma_nl;     ///< certified nonlinear entropy rate
    double rate_F = 0.0;                ///< 2 lambda

    Exponents exps;

    /// L^q decay exponent, q > q_star (q-independent).
    double rate_Lq(double q) const;
    /// original-variables exponent alpha = lambda + d(q-1)/q
    double alpha_original(double q) const;
    /// C^j seminorm exponent 2 lambda / (d + 2(j+1))
    double rate_Cj(int j) const;
    /// relative-error exponent lambda(p) = (2p-d)(1-m) lambda / (p(d+2)(2-m)), p > d/2
    double rate_relerr(double p) const;
    /// entropy-to-norm conversion exponent gamma(q)
    double gamma_of_q(double q) const;
};

RatePrediction predict_rates(const Exponents& e, const SpectralResult& spectral,
                             const SandwichBounds& bounds);

/// Least-squares exponential fit of a positive series on a time window.
struct RateFit {
    double t_lo = 0.0;
    double t_hi = 0.0;
    double slope = 0.0;      ///< fitted d/dt log(value)
    double intercept = 0.0;
    double residual = 0.0;   ///< RMS of the log-linear fit
    int points = 0;
};

RateFit fit_exponential(const std::vector<double>& t, const std::vector<double>& value,
                        double t_lo, double t_hi);

/// Default fitting window: the last half of the trajectory past the first
/// time ||w - 1||_inf < 0.1.
std::pair<double, double> default_fit_window(const Trajectory& traj);

/// Weighted moment norm || |x|^theta (v - V_{D*}) ||_2, theta in [0, (2-m)/(1-m)).
Measured moment_norm(const RadialField& v, double Dstar, double theta, const Exponents& e);

/// kappa_theta = 2 sup_r r^{2 theta} (D + (1-m) r^2 / (2m))^{-(2-m)/(1-m)}.
double moment_kappa(double Dstar, double theta, const Exponents& e);

/// Moment bound K_theta sqrt(F[w]) with K_theta = sqrt(kappa_theta W1^{2-m}).
Measured moment_bound(const RadialField& v, const SandwichBounds& b, double theta,
                      const Exponents& e);

/// Both sides of the j = 0 interpolation estimate:
/// lhs = ||f||_inf, rhs = ||f||_{C^1}^{d/(d+2)} ||f||_2^{2/(d+2)}.
/// j = 1 uses the (C^2, L^2) pair analogously. Only j in {0, 1} supported.
struct InterpolationSides {
    double lhs = 0.0;
    double rhs = 0.0;
};
InterpolationSides interpolation_check(const RadialField& f, int j);

/// Certified per-time rate gamma(t) along a trajectory: the entropy -
/// entropy production constant evaluated with the observed sandwich
/// sigma0(t) = min w, sigma1(t) = max w in place of (W0, W1).
struct RateEnvelopePoint {
    double t = 0.0;
    double gamma = 0.0;      ///< certified rate; meaningful only when certified
    bool certified = false;
    double sigma0 = 1.0;
    double sigma1 = 1.0;
};
std::vector<RateEnvelopePoint> sharp_rate_envelope(const Trajectory& traj, const Exponents& e,
                                                   const SpectralResult& spectral);

/// Worst defect of log F(t2) - log F(t1) <= -int gamma dt over certified
/// diagnostic pairs (positive = violation beyond the allowed slack 0).
double rate_envelope_defect(const Trajectory& traj, const std::vector<RateEnvelopePoint>& env);

/// Initial quotient 1 + amplitude * phi V^{1-m}, where phi is the slowest
/// eigenmode of the linearized problem on this grid under the solver's
/// boundary conditions (outer Dirichlet) and zero relative mass. Data built
/// this way decays at the clean rate 2 lambda from t = 0.
RadialField slowest_mode_perturbation(const Exponents& e, double Dstar, GridPtr grid,
                                      double amplitude);

}  // namespace fade
