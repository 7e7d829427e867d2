#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fade/exponents.hpp"
#include "fade/grid.hpp"

namespace fade {

/// One-dimensional weight pair of the radial Hardy-Poincare problem in the
/// D-scaled variables: mu(r) = r^{d-1}(1+r^2)^{(2-m)/(m-1)},
/// nu(r) = r^{d-1}(1+r^2)^{1/(m-1)}. mu is integrable iff m > m_star.
struct SpectralWeights {
    double m = 0.0;
    int d = 0;

    double mu(double r) const;
    double nu(double r) const;
    double log_mu(double r) const;
    double log_nu(double r) const;
    bool mu_integrable() const;

    /// int_a^b mu dr (b may be huge); analytic series past the fitted range.
    double integral_mu(double a, double b) const;
    /// int_R^inf mu dr by binomial tail series; requires mu integrable.
    double integral_mu_tail(double R) const;
    /// int_a^b dr / nu.
    double integral_inv_nu(double a, double b) const;
};

/// lambda_{m,d} estimates and the two-sided envelope for C_{m,d} = m / lambda.
struct SpectralResult {
    double lambda_est = 0.0;              ///< radial gap from the discretized eigenproblem
    double lambda_err = 0.0;              ///< estimated absolute error (extent + resolution)
    double C_est = 0.0;                   ///< m / lambda_est
    double C_err = 0.0;
    std::optional<double> C_exact;        ///< closed form, m < m_star only
    std::optional<double> K_eta;          ///< Muckenhoupt constant at the median
    std::optional<double> eta;            ///< median of mu
    std::optional<double> lower_bound;    ///< Hardy-route lower bound on C
    std::optional<double> upper_bound;    ///< assembled upper bound on C
    double D_spread = 0.0;                ///< relative |lambda(D) - lambda(2D)| check
    std::string method_tags;
};

/// Optimal constant C_{m,d} = 8 m (1-m) / [(d-2)(m - m_star)]^2 of the
/// subcritical Hardy-type inequality. Requires d >= 5 and 0 < m < m_star.
double exact_gap_subcritical(const Exponents& e);

/// Optimal weighted Hardy constant kappa_alpha = 4 / (d + 2 alpha - 2)^2,
/// alpha != alpha_star = 1 - d/2.
double hardy_constant(double alpha, int d);

/// Rayleigh quotient of the Hardy optimality test family g_eps for the weight
/// |x|^{2 alpha}; decreases to 1/kappa_alpha as eps -> 0.
double hardy_rayleigh_quotient(double alpha, int d, double eps);

/// Median eta of mu: int_0^eta mu = 1/2 int_0^inf mu. Requires m > m_star.
double median_eta(const SpectralWeights& w);

/// Muckenhoupt-type constant K(zeta) = (2m/(1-m)) max{A(zeta), B(zeta)};
/// K(0) uses only the B part by convention. Finite for m in
/// (m_star, (d-2)/(d-1)]; throws regime_error outside.
double muckenhoupt_K(double zeta, const SpectralWeights& w);

/// A(zeta) and B(zeta) suprema separately (coarse log scan + golden section).
struct MuckenhouptParts {
    double A = 0.0;
    double B = 0.0;
    double r_at_A = 0.0;
    double r_at_B = 0.0;
};
MuckenhouptParts muckenhoupt_parts(double zeta, const SpectralWeights& w);

/// Two-sided envelope for C_{m,d}:
///   lower = 8 m (1-m) / [d - 4 - m (d-2)]^2           (any m != m_star),
///   upper = max{ 8 K(eta), 4m / ((1-m)(d-1)) }         (m in the K-finite range).
/// The classical Muckenhoupt two-sidedness gives K <= C_rad <= 4 K for the
/// radial constant, hence the factor 8 = 2 * 4 in the assembled bound.
struct GapEnvelope {
    double lower = 0.0;
    std::optional<double> upper;
    std::optional<double> K_eta;
    std::optional<double> eta;
};
GapEnvelope gap_envelope(const Exponents& e);

/// Log-spaced grid suited to the eigenproblem; extent grows with the regime's
/// truncation sensitivity and with the refine factor.
GridPtr spectral_grid(const Exponents& e, int refine = 1);

/// Smallest nonzero eigenvalue of the radial quadratic-form pencil
///   m int |h'|^2 V_D r^{d-1} dr  vs  int |h - hbar|^2 V_D^{2-m} r^{d-1} dr
/// by Sturm-sequence bisection on the tridiagonal pencil. The mu-weighted
/// mean is deflated for m > m_star; for m < m_star the test class is
/// compactly supported (outer Dirichlet) with no mean. Also runs at 2D for
/// the D-independence check and at half extent for the error estimate.
SpectralResult rayleigh_gap(const Exponents& e, double D, GridPtr grid);

/// Best available lambda_{m,d}: exact closed form when m < m_star (d >= 5),
/// otherwise the discretized Rayleigh value; envelope attached in both cases.
SpectralResult predicted_lambda(const Exponents& e, int refine = 1);

}  // namespace fade
