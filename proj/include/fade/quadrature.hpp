#pragma once

#include <functional>

namespace fade {

/// Adaptive Gauss-Kronrod (G7/K15) integration of f on [a, b].
/// Subdivides until the local error estimate satisfies the mixed tolerance.
double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-12, double abs_tol = 1e-300, int max_depth = 48);

/// Integrates f(r) on [a, b] after the substitution r = exp(u); suited to
/// integrands spread over many decades. Requires 0 < a < b.
double adaptive_quad_log(const std::function<double(double)>& f, double a, double b,
                         double rel_tol = 1e-12);

}  // namespace fade
