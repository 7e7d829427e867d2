#include "fade/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fade/profiles.hpp"

namespace fade {

double RatePrediction::rate_Lq(double q) const {
    if (!(q > exps.q_star))
        throw std::domain_error("rate_Lq: requires q > q_star = " + std::to_string(exps.q_star));
    return lambda;
}

double RatePrediction::alpha_original(double q) const {
    return lambda + exps.d * (q - 1.0) / q;
}

double RatePrediction::rate_Cj(int j) const {
    if (j < 0) throw std::domain_error("rate_Cj: j must be >= 0");
    return 2.0 * lambda / (exps.d + 2.0 * (j + 1));
}

double RatePrediction::rate_relerr(double p) const {
    if (!(p >= 0.5 * exps.d))
        throw std::domain_error("rate_relerr: requires p >= d/2");
    return (2.0 * p - exps.d) * (1.0 - exps.m) * lambda / (p * (exps.d + 2.0) * (2.0 - exps.m));
}

double RatePrediction::gamma_of_q(double q) const {
    if (std::isinf(q)) return 1.0 / (exps.d + 2.0);
    if (q > exps.q_star && q <= 2.0) return 0.5;
    if (q > 2.0) return (q + exps.d) / (q * (exps.d + 2.0));
    throw std::domain_error("gamma_of_q: requires q > q_star");
}

RatePrediction predict_rates(const Exponents& e, const SpectralResult& spectral,
                             const SandwichBounds& bounds) {
    if (std::fabs(e.m - e.m_star) < 1e-12)
        throw regime_error("predict_rates: m = m_star is excluded");
    RatePrediction p;
    p.exps = e;
    p.lambda = spectral.lambda_est;
    p.rate_F = 2.0 * p.lambda;
    p.gamma_nl = gamma_rate(bounds, e, e.m / p.lambda);
    return p;
}

RateFit fit_exponential(const std::vector<double>& t, const std::vector<double>& value,
                        double t_lo, double t_hi) {
    if (t.size() != value.size())
        throw std::invalid_argument("fit_exponential: series length mismatch");
    if (!(t_hi > t_lo)) throw std::domain_error("fit_exponential: need t_hi > t_lo");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (!(value[i] > 0.0))
            throw std::domain_error("fit_exponential: series must be positive on the window");
        double y = std::log(value[i]);
        sx += t[i];
        sy += y;
        sxx += t[i] * t[i];
        sxy += t[i] * y;
        ++n;
    }
    if (n < 5)
        throw std::domain_error("fit_exponential: need at least 5 points in the window, got " +
                                std::to_string(n));
    double det = n * sxx - sx * sx;
    RateFit f;
    f.t_lo = t_lo;
    f.t_hi = t_hi;
    f.points = n;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy * sxx - sx * sxy) / det;
    double rss = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        double res = std::log(value[i]) - (f.intercept + f.slope * t[i]);
        rss += res * res;
    }
    f.residual = std::sqrt(rss / n);
    return f;
}

std::pair<double, double> default_fit_window(const Trajectory& traj) {
    if (traj.reports.size() < 2) throw std::domain_error("default_fit_window: empty trajectory");
    double t0 = traj.reports.back().t;
    for (const EntropyReport& r : traj.reports) {
        if (std::max(r.w_max - 1.0, 1.0 - r.w_min) < 0.1) {
            t0 = r.t;
            break;
        }
    }
    double t_end = traj.reports.back().t;
    return {t0 + 0.5 * (t_end - t0), t_end};
}

Measured moment_norm(const RadialField& v, double Dstar, double theta, const Exponents& e) {
    double top = (2.0 - e.m) / (1.0 - e.m);
    if (!(theta >= 0.0 && theta < top))
        throw std::domain_error("moment_norm: theta must lie in [0, (2-m)/(1-m))");
    RadialField f(v.grid_ptr());
    for (int i = 0; i < v.size(); ++i) {
        double dv = v[i] - barenblatt_profile(Dstar, e, v.grid().node(i));
        f[i] = dv * dv;
    }
    Measured s = integrate(f, 2.0 * theta);
    Measured out;
    out.value = std::sqrt(std::max(s.value, 0.0));
    out.error = (out.value > 0.0) ? 0.5 * s.error / out.value : std::sqrt(s.error);
    return out;
}

double moment_kappa(double Dstar, double theta, const Exponents& e) {
    double q = (2.0 - e.m) / (1.0 - e.m);
    if (!(theta >= 0.0 && theta < q))
        throw std::domain_error("moment_kappa: theta must lie in [0, (2-m)/(1-m))");
    double b = e.profile_b();
    if (theta == 0.0) return 2.0 * std::pow(Dstar, -q);
    // maximize 2 theta log r - q log(D + b r^2): r^2 = theta D / (b (q - theta))
    double r2 = theta * Dstar / (b * (q - theta));
    return 2.0 * std::pow(r2, theta) * std::pow(Dstar + b * r2, -q);
}

Measured moment_bound(const RadialField& v, const SandwichBounds& b, double theta,
                      const Exponents& e) {
    RadialField w = quotient_field(v, b.Dstar, e);
    Measured F = relative_entropy(w, b, e);
    double K = std::sqrt(moment_kappa(b.Dstar, theta, e) * std::pow(b.W1, 2.0 - e.m));
    Measured out;
    out.value = K * std::sqrt(std::max(F.value, 0.0));
    out.error = (out.value > 0.0) ? 0.5 * K * K * F.error / out.value : K * std::sqrt(F.error);
    return out;
}

InterpolationSides interpolation_check(const RadialField& f, int j) {
    if (j != 0 && j != 1)
        throw std::domain_error("interpolation_check: only j in {0, 1} is supported");
    const int d = f.grid().dimension();
    RadialField df = radial_gradient(f);
    double c0 = 0.0, c1 = 0.0;
    for (int i = 0; i < f.size(); ++i) {
        c0 = std::max(c0, std::fabs(f[i]));
        c1 = std::max(c1, std::fabs(df[i]));
    }
    RadialField f2(f.grid_ptr());
    for (int i = 0; i < f.size(); ++i) f2[i] = f[i] * f[i];
    double l2 = std::sqrt(std::max(integrate(f2).value, 0.0));

    InterpolationSides out;
    if (j == 0) {
        out.lhs = c0;
        out.rhs = std::pow(c1, d / (d + 2.0)) * std::pow(l2, 2.0 / (d + 2.0));
    } else {
        RadialField ddf = radial_gradient(df);
        double c2 = 0.0;
        for (int i = 0; i < f.size(); ++i) c2 = std::max(c2, std::fabs(ddf[i]));
        out.lhs = c1;
        out.rhs = std::pow(c2, (d + 2.0) / (d + 4.0)) * std::pow(l2, 2.0 / (d + 4.0));
    }
    return out;
}

std::vector<RateEnvelopePoint> sharp_rate_envelope(const Trajectory& traj, const Exponents& e,
                                                   const SpectralResult& spectral) {
    double C = e.m / spectral.lambda_est;
    std::vector<RateEnvelopePoint> env;
    env.reserve(traj.reports.size());
    for (const EntropyReport& r : traj.reports) {
        RateEnvelopePoint p;
        p.t = r.t;
        p.sigma0 = std::min(r.w_min, 1.0);
        p.sigma1 = std::max(r.w_max, 1.0);
        double s0 = std::pow(p.sigma0, 2.0 * (2.0 - e.m));
        double s1 = std::pow(p.sigma1, 2.0 * (2.0 - e.m));
        double num = e.m * s0 - C * e.d * (1.0 - e.m) * (s1 - s0);
        double den = C * std::pow(p.sigma0, 1.0 - e.m) * s1;
        p.gamma = 2.0 * num / den;
        p.certified = num > 0.0;
        env.push_back(p);
    }
    return env;
}

double rate_envelope_defect(const Trajectory& traj, const std::vector<RateEnvelopePoint>& env) {
    if (env.size() != traj.reports.size())
        throw std::invalid_argument("rate_envelope_defect: envelope/trajectory mismatch");
    double worst = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (size_t k = 0; k + 1 < env.size(); ++k) {
        if (!env[k].certified || !env[k + 1].certified) continue;
        const EntropyReport& a = traj.reports[k];
        const EntropyReport& b = traj.reports[k + 1];
        if (!(a.F > 0.0 && b.F > 0.0)) continue;
        double lhs = std::log(b.F) - std::log(a.F);
        double rhs = -0.5 * (env[k].gamma + env[k + 1].gamma) * (b.t - a.t);
        worst = std::max(worst, lhs - rhs);
        any = true;
    }
    if (!any) throw std::domain_error("rate_envelope_defect: no certified diagnostic pair");
    return worst;
}

RadialField slowest_mode_perturbation(const Exponents& e, double Dstar, GridPtr grid,
                                      double amplitude) {
    const std::vector<double>& rall = grid->nodes();
    // unknowns: strictly positive nodes except the clamped outer one
    std::vector<double> r;
    for (double x : rall)
        if (x > 0.0) r.push_back(x);
    const int nfull = static_cast<int>(r.size());
    const int n = nfull - 1;  // outer node is Dirichlet
    if (n < 8) throw std::domain_error("slowest_mode_perturbation: grid too small");

    auto logV = [&](double rr) { return -std::log(Dstar + e.profile_b() * rr * rr) / (1.0 - e.m); };
    std::vector<double> Sd(n, 0.0), Se(n - 1, 0.0), Md(n, 0.0);
    for (int i = 0; i + 1 < nfull; ++i) {
        double rm = std::sqrt(r[i] * r[i + 1]);
        double k = e.m * std::exp(logV(rm) + (e.d - 1) * std::log(rm)) / (r[i + 1] - r[i]);
        if (i < n) Sd[i] += k;
        if (i + 1 < n) {
            Sd[i + 1] += k;
            Se[i] = -k;
        }
    }
    for (int i = 0; i < n; ++i) {
        double wdr = 0.5 * (r[i + 1] - r[i]) + ((i > 0) ? 0.5 * (r[i] - r[i - 1]) : 0.0);
        Md[i] = std::exp((2.0 - e.m) * logV(r[i]) + (e.d - 1) * std::log(r[i])) * wdr;
    }

    // LDL^T factorization of the Dirichlet stiffness (positive definite)
    std::vector<double> dpiv(n), lfac(n - 1);
    dpiv[0] = Sd[0];
    for (int i = 1; i < n; ++i) {
        lfac[i - 1] = Se[i - 1] / dpiv[i - 1];
        dpiv[i] = Sd[i] - Se[i - 1] * lfac[i - 1];
        if (!(dpiv[i] > 0.0))
            throw convergence_error("slowest_mode_perturbation: stiffness not positive definite");
    }
    auto solveS = [&](std::vector<double>& x) {
        for (int i = 1; i < n; ++i) x[i] -= lfac[i - 1] * x[i - 1];
        for (int i = 0; i < n; ++i) x[i] /= dpiv[i];
        for (int i = n - 2; i >= 0; --i) x[i] -= lfac[i] * x[i + 1];
    };
    double mass_total = 0.0;
    for (int i = 0; i < n; ++i) mass_total += Md[i];
    auto project = [&](std::vector<double>& x) {
        double c = 0.0;
        for (int i = 0; i < n; ++i) c += Md[i] * x[i];
        c /= mass_total;
        for (int i = 0; i < n; ++i) x[i] -= c;
    };

    // projected inverse iteration for the slowest zero-mass mode
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) x[i] = std::log(r[i] / r[0] + 1.0);
    project(x);
    double rq = 0.0, rq_prev = -1.0;
    for (int sweep = 0; sweep < 600; ++sweep) {
        for (int i = 0; i < n; ++i) y[i] = Md[i] * x[i];
        solveS(y);
        project(y);
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm = std::max(nrm, std::fabs(y[i]));
        for (int i = 0; i < n; ++i) y[i] /= nrm;
        x.swap(y);
        // Rayleigh quotient every few sweeps
        if (sweep % 5 == 4) {
            double xSx = 0.0, xMx = 0.0;
            for (int i = 0; i < n; ++i) {
                double sx = Sd[i] * x[i] + (i > 0 ? Se[i - 1] * x[i - 1] : 0.0) +
                            (i + 1 < n ? Se[i] * x[i + 1] : 0.0);
                xSx += x[i] * sx;
                xMx += Md[i] * x[i] * x[i];
            }
            rq = xSx / xMx;
            if (rq_prev > 0.0 && std::fabs(rq - rq_prev) < 1e-11 * rq) break;
            rq_prev = rq;
        }
    }

    // w = 1 + phi V^{1-m} scaled to the requested amplitude
    RadialField w(grid, 1.0);
    int j = 0;
    double worst = 0.0;
    std::vector<double> bump(rall.size(), 0.0);
    for (size_t i = 0; i < rall.size(); ++i) {
        if (rall[i] <= 0.0) continue;
        if (j < n) {
            bump[i] = x[j] / (Dstar + e.profile_b() * rall[i] * rall[i]);
            worst = std::max(worst, std::fabs(bump[i]));
        }
        ++j;
    }
    bump[0] = bump[1];  // even extension to the origin node
    worst = std::max(worst, std::fabs(bump[0]));
    for (size_t i = 0; i < rall.size(); ++i)
        w[static_cast<int>(i)] = 1.0 + amplitude * bump[i] / worst;
    w[w.size() - 1] = 1.0;
    return w;
}

}  // namespace fade
