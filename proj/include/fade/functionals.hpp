#pragma once

#include <optional>

#include "fade/exponents.hpp"
#include "fade/grid.hpp"

namespace fade {

/// Barriers of the comparison sandwich V_{D0} <= v <= V_{D1} expressed for
/// the quotient w = v / V_{D*}: W0 = (D*/D0)^{1/(1-m)} <= 1 <= (D*/D1)^{1/(1-m)} = W1.
struct SandwichBounds {
    double D0 = 2.0;      ///< lower-barrier scale (largest D)
    double D1 = 0.5;      ///< upper-barrier scale (smallest D)
    double Dstar = 1.0;   ///< attracting profile scale, in [D1, D0]
    double W0 = 0.0;
    double W1 = 0.0;

    static SandwichBounds make(double D0, double D1, double Dstar, const Exponents& e);
    double width() const { return W1 - W0; }
};

/// Snapshot of every tracked functional at one rescaled time.
struct EntropyReport {
    double t = 0.0;
    double F = 0.0;         ///< relative entropy
    double I = 0.0;         ///< relative Fisher information
    double E_lin = 0.0;     ///< linearized entropy of g = (w-1) V^{m-1}
    double I_lin = 0.0;     ///< linearized Fisher of the same g
    double rel_mass = 0.0;  ///< integral of v - V_{D*}
    double w_min = 0.0;
    double w_max = 0.0;
};

/// F[w] = 1/(1-m) * int [(w-1) - (w^m-1)/m] V_{D*}^m dx.
/// Series-stabilized near w = 1 so the value stays accurate deep in the decay.
Measured relative_entropy(const RadialField& w, const SandwichBounds& b, const Exponents& e);

/// I[w] = m/(m-1)^2 * int |d/dr[(w^{m-1}-1) V^{m-1}]|^2 w V dx.
Measured relative_fisher(const RadialField& w, const SandwichBounds& b, const Exponents& e);

/// Linearized entropy 1/2 * int g^2 V^{2-m} dx.
/// For m < m_star the admissible class requires g(0) = 0.
Measured linearized_entropy(const RadialField& g, double Dstar, const Exponents& e);

/// Linearized Fisher m * int |grad g|^2 V dx.
Measured linearized_fisher(const RadialField& g, double Dstar, const Exponents& e);

/// The linearization variable g = (w-1) V_{D*}^{m-1}.
RadialField linearization_variable(const RadialField& w, double Dstar, const Exponents& e);

/// Two-sided entropy equivalence: 1/2 W1^{m-2} Q <= F[w] <= 1/2 W0^{m-2} Q
/// with Q = int |w-1|^2 V^m dx. Throws sandwich_error if w leaves [W0, W1].
struct EquivalenceBounds {
    Measured lower;
    Measured upper;
};
EquivalenceBounds entropy_equivalence_bounds(const RadialField& w, const SandwichBounds& b,
                                             const Exponents& e);

/// Constants of the Fisher-domination estimate
/// I_lin[g] <= beta1 I[w] + beta2 E_lin[g]:
/// beta1 = W1^{2(2-m)} / W0, beta2 = 2 d (1-m) ((W1/W0)^{2(2-m)} - 1).
struct BetaConstants {
    double beta1 = 1.0;
    double beta2 = 0.0;
};
BetaConstants beta_constants(const SandwichBounds& b, const Exponents& e);

/// Lower estimate of the entropy - entropy production constant gamma in
/// gamma F[w] <= I[w], given the Hardy-Poincare constant C_md. Returns
/// nullopt when the sandwich is too wide for the estimate to certify
/// (W1/W0 beyond the admissibility threshold).
std::optional<double> gamma_rate(const SandwichBounds& b, const Exponents& e, double C_md);

/// Admissibility threshold on W1/W0 for gamma_rate.
double gamma_admissible_ratio(const Exponents& e, double C_md);

/// Relative mass int (v - V_{D*}) dx. Divergent-tail error propagates from
/// the quadrature when the difference is not integrable (m <= m_star, D != D*).
Measured relative_mass(const RadialField& v, double Dstar, const Exponents& e);

/// Full diagnostic snapshot for the quotient w at rescaled time t.
EntropyReport entropy_report(double t, const RadialField& w, const SandwichBounds& b,
                             const Exponents& e);

}  // namespace fade
