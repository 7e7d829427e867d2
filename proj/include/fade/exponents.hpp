#pragma once

#include "fade/errors.hpp"

namespace fade {

/// Tolerance used to detect the critical diffusion exponent m = m_c.
inline constexpr double kCriticalTol = 1e-12;

enum class Regime { Supercritical, Critical, Subcritical };

/// Critical exponents of the fast diffusion equation u_t = Delta u^m on R^d,
/// all derived from (m, d).
struct Exponents {
    double m = 0.0;  ///< diffusion exponent, in (0, 1)
    int d = 0;       ///< space dimension, >= 3

    double m_c = 0.0;     ///< (d-2)/d, mass-conservation threshold
    double m_star = 0.0;  ///< (d-4)/(d-2), integrability threshold for profile differences
    double m_1 = 0.0;     ///< (d-1)/d
    double m_0 = 0.0;     ///< d/(d+2)
    double p_star = 0.0;  ///< d(1-m)/2
    double p_of_m = 0.0;  ///< d(1-m)/(2(2-m))
    double q_star = 0.0;  ///< 2d(1-m)/(2(2-m)+d(1-m))

    Regime regime() const {
        double diff = m - m_c;
        if (diff > kCriticalTol) return Regime::Supercritical;
        if (diff < -kCriticalTol) return Regime::Subcritical;
        return Regime::Critical;
    }

    /// True in the Hardy-type spectral regime (d >= 5 with m below m_star).
    bool subcritical_hardy() const { return d >= 5 && m < m_star; }

    /// (1-m)/(2m), the radial curvature coefficient of the Barenblatt profile.
    double profile_b() const { return (1.0 - m) / (2.0 * m); }
};

/// Computes every critical exponent from (m, d).
/// Throws std::domain_error unless 0 < m < 1 and d >= 3.
Exponents derive_exponents(double m, int d);

const char* regime_name(Regime r);

}  // namespace fade
