#include "fade/exponents.hpp"

#include <stdexcept>
#include <string>

namespace fade {

Exponents derive_exponents(double m, int d) {
    if (!(m > 0.0 && m < 1.0))
        throw std::domain_error("derive_exponents: m must lie in (0,1), got " + std::to_string(m));
    if (d < 3)
        throw std::domain_error("derive_exponents: d must be >= 3, got " + std::to_string(d));

    Exponents e;
    e.m = m;
    e.d = d;
    const double dd = static_cast<double>(d);
    e.m_c = (dd - 2.0) / dd;
    e.m_star = (dd - 4.0) / (dd - 2.0);
    e.m_1 = (dd - 1.0) / dd;
    e.m_0 = dd / (dd + 2.0);
    e.p_star = dd * (1.0 - m) / 2.0;
    e.p_of_m = dd * (1.0 - m) / (2.0 * (2.0 - m));
    e.q_star = 2.0 * dd * (1.0 - m) / (2.0 * (2.0 - m) + dd * (1.0 - m));
    return e;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Supercritical: return "supercritical";
        case Regime::Critical: return "critical";
        case Regime::Subcritical: return "subcritical";
    }
    return "unknown";
}

}  // namespace fade
