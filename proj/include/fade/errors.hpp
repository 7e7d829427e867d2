#pragma once

#include <stdexcept>
#include <string>

namespace fade {

/// Tail of an integrand decays too slowly for the requested integral.
struct divergent_tail_error : std::runtime_error {
    explicit divergent_tail_error(const std::string& what) : std::runtime_error(what) {}
};

/// Requested operation is not defined in the current (m, d) regime.
struct regime_error : std::domain_error {
    explicit regime_error(const std::string& what) : std::domain_error(what) {}
};

/// A field left its comparison sandwich [W0, W1] beyond tolerance.
struct sandwich_error : std::runtime_error {
    explicit sandwich_error(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative method (Newton, inverse iteration, bisection) failed to converge.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fade
