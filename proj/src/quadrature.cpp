#include "fade/quadrature.hpp"

#include <cmath>

#include "fade/errors.hpp"

namespace fade {

namespace {

// G7/K15 nodes and weights on [-1, 1]: {abscissa, gauss weight, kronrod weight}
constexpr double kNW[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529}};

struct GK {
    double value;
    double error;
};

GK gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double m = 0.5 * (b - a);
    double y0 = f(c);
    double g7 = kNW[0][1] * y0;
    double k15 = kNW[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        double dx = m * kNW[i][0];
        double yi = f(c + dx) + f(c - dx);
        g7 += kNW[i][1] * yi;
        k15 += kNW[i][2] * yi;
    }
    g7 *= m;
    k15 *= m;
    double err = std::fabs(g7 - k15);
    err = 200.0 * err * std::sqrt(200.0 * err);
    return {k15, err};
}

double recurse(const std::function<double(double)>& f, double a, double b, double rel_tol,
               double abs_tol, int depth) {
    GK r = gk15(f, a, b);
    if (depth <= 0 || r.error <= rel_tol * std::fabs(r.value) || r.error <= abs_tol)
        return r.value;
    double mid = 0.5 * (a + b);
    return recurse(f, a, mid, rel_tol, abs_tol, depth - 1) +
           recurse(f, mid, b, rel_tol, abs_tol, depth - 1);
}

}  // namespace

double adaptive_quad(const std::function<double(double)>& f, double a, double b, double rel_tol,
                     double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    return recurse(f, a, b, rel_tol, abs_tol, max_depth);
}

double adaptive_quad_log(const std::function<double(double)>& f, double a, double b,
                         double rel_tol) {
    if (!(a > 0.0 && b > a))
        throw std::domain_error("adaptive_quad_log: need 0 < a < b");
    auto g = [&](double u) {
        double r = std::exp(u);
        return f(r) * r;
    };
    return adaptive_quad(g, std::log(a), std::log(b), rel_tol);
}

}  // namespace fade
