#include "fade/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "fade/quadrature.hpp"

namespace fade {

namespace {

double sqr(double x) { return x * x; }

}  // namespace

// ---------------------------------------------------------------- weights

double SpectralWeights::log_mu(double r) const {
    if (r <= 0.0) return -std::numeric_limits<double>::infinity();
    double beta = (2.0 - m) / (1.0 - m);
    return (d - 1) * std::log(r) - beta * std::log1p(r * r);
}

double SpectralWeights::log_nu(double r) const {
    if (r <= 0.0) return -std::numeric_limits<double>::infinity();
    return (d - 1) * std::log(r) - std::log1p(r * r) / (1.0 - m);
}

double SpectralWeights::mu(double r) const { return std::exp(log_mu(r)); }
double SpectralWeights::nu(double r) const { return std::exp(log_nu(r)); }

bool SpectralWeights::mu_integrable() const {
    // decays like r^{d-1-2(2-m)/(1-m)}; integrable iff m > (d-4)/(d-2)
    return d - 2.0 * (2.0 - m) / (1.0 - m) < 0.0;
}

double SpectralWeights::integral_mu_tail(double R) const {
    if (!mu_integrable())
        throw divergent_tail_error("SpectralWeights: mu is not integrable (m <= m_star)");
    if (R < 2.0) return integral_mu(R, 2.0) + integral_mu_tail(2.0);
    // int_R^inf r^{d-1}(1+r^2)^{-beta} dr = sum_k binom(-beta,k) R^{d-2beta-2k}/(2beta+2k-d)
    double beta = (2.0 - m) / (1.0 - m);
    double sum = 0.0;
    double coef = 1.0;  // binom(-beta, k) * (-1)^k ... tracked with sign below
    for (int k = 0; k < 64; ++k) {
        if (k > 0) coef *= -(beta + k - 1.0) / k;
        double expo = d - 2.0 * beta - 2.0 * k;
        double term = coef * std::pow(R, expo) / (-expo);
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return sum;
}

double SpectralWeights::integral_mu(double a, double b) const {
    if (!(b > a)) return 0.0;
    auto f = [this](double r) { return mu(r); };
    double lo = std::max(a, 1e-12);
    double head = 0.0;
    if (a < 1e-12) {
        // r^{d-1} power head, exact to leading order
        head = std::pow(lo, static_cast<double>(d)) / d;
    }
    return head + adaptive_quad_log(f, lo, b, 1e-12);
}

double SpectralWeights::integral_inv_nu(double a, double b) const {
    if (!(b > a)) return 0.0;
    auto f = [this](double r) { return std::exp(-log_nu(r)); };
    if (a <= 0.0) {
        if (d >= 2)
            throw divergent_tail_error("SpectralWeights: 1/nu is not integrable at r = 0 for d >= 2");
        return adaptive_quad(f, 0.0, std::min(b, 1.0), 1e-12) +
               (b > 1.0 ? adaptive_quad_log(f, 1.0, b, 1e-12) : 0.0);
    }
    return adaptive_quad_log(f, a, b, 1e-12);
}

// ---------------------------------------------------------------- closed forms

double exact_gap_subcritical(const Exponents& e) {
    if (!(e.d >= 5))
        throw regime_error("exact_gap_subcritical: closed form requires d >= 5, got d = " +
                           std::to_string(e.d));
    if (!(e.m < e.m_star))
        throw regime_error("exact_gap_subcritical: requires m < m_star = " +
                           std::to_string(e.m_star));
    return 8.0 * e.m * (1.0 - e.m) / sqr((e.d - 2) * (e.m - e.m_star));
}

double hardy_constant(double alpha, int d) {
    double astar = 1.0 - 0.5 * d;
    if (std::fabs(alpha - astar) < 1e-14)
        throw regime_error("hardy_constant: alpha = alpha_star = " + std::to_string(astar) +
                           " is the singular exponent");
    return 4.0 / sqr(d + 2.0 * alpha - 2.0);
}

double hardy_rayleigh_quotient(double alpha, int d, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("hardy_rayleigh_quotient: need eps in (0,1)");
    double astar = 1.0 - 0.5 * d;
    double lam = alpha - astar;  // = (2 alpha + d - 2)/2
    if (std::fabs(lam) < 1e-14)
        throw regime_error("hardy_rayleigh_quotient: alpha equals the singular exponent");
    // radial exponents: numerator weight r^{2 alpha + d - 1} = r^{2 lam + 1},
    // denominator weight r^{2 alpha + d - 3} = r^{2 lam - 1}
    if (lam > 0.0) {
        // capped profile min{eps^-lam, (r^-lam - eps^lam)_+}, support [0, 1/eps]
        double r0 = std::pow(std::pow(eps, lam) + std::pow(eps, -lam), -1.0 / lam);
        double r1 = 1.0 / eps;
        auto dnum = [&](double r) {
            return sqr(lam * std::pow(r, -lam - 1.0)) * std::pow(r, 2.0 * lam + 1.0);
        };
        double num = adaptive_quad_log(dnum, r0, r1, 1e-13);
        double cap = std::pow(eps, -lam);
        double den = cap * cap * std::pow(r0, 2.0 * lam) / (2.0 * lam);  // flat cap from r = 0
        auto dden = [&](double r) {
            double g = std::pow(r, -lam) - std::pow(eps, lam);
            return g * g * std::pow(r, 2.0 * lam - 1.0);
        };
        den += adaptive_quad_log(dden, r0, r1, 1e-13);
        return num / den;
    }
    // growing profile r^{|lam| + eps} on [0,1], linear cutoff (2-r)_+ beyond
    double p = -lam + eps;
    double num = p * p / (2.0 * eps);  // exact power integral on [0,1]
    auto dnum = [&](double r) { return std::pow(r, 2.0 * lam + 1.0); };
    num += adaptive_quad_log(dnum, 1.0, 2.0, 1e-13);
    double den = 1.0 / (2.0 * eps);
    auto dden = [&](double r) { return sqr(2.0 - r) * std::pow(r, 2.0 * lam - 1.0); };
    den += adaptive_quad_log(dden, 1.0, 2.0, 1e-13);
    return num / den;
}

// ---------------------------------------------------------------- Muckenhoupt

double median_eta(const SpectralWeights& w) {
    if (!w.mu_integrable())
        throw regime_error("median_eta: mu is not integrable for m <= m_star");
    double total = w.integral_mu(0.0, 10.0) + w.integral_mu_tail(10.0);
    double lo = 1e-6, hi = 1e6;
    auto cum = [&](double R) { return w.integral_mu(0.0, R); };
    if (cum(lo) > 0.5 * total || cum(hi) < 0.5 * total)
        throw convergence_error("median_eta: bracket [1e-6, 1e6] does not contain the median");
    for (int it = 0; it < 100; ++it) {
        double mid = std::sqrt(lo * hi);
        if (cum(mid) < 0.5 * total)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-10 * hi) break;
    }
    return std::sqrt(lo * hi);
}

namespace {

// golden-section maximization of f on [a, b] (log-r coordinates)
double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

}  // namespace

MuckenhouptParts muckenhoupt_parts(double zeta, const SpectralWeights& w) {
    MuckenhouptParts out;
    const int nscan = 1000;

    if (zeta > 0.0) {
        // A(zeta) = sup_{r < zeta} int_0^r mu * int_r^zeta 1/nu
        double ra = zeta * 1e-6, rb = zeta * (1.0 - 1e-9);
        std::vector<double> rs(nscan), cum(nscan), suf(nscan);
        for (int i = 0; i < nscan; ++i)
            rs[i] = ra * std::pow(rb / ra, i / double(nscan - 1));
        cum[0] = w.integral_mu(0.0, rs[0]);
        for (int i = 1; i < nscan; ++i) cum[i] = cum[i - 1] + w.integral_mu(rs[i - 1], rs[i]);
        suf[nscan - 1] = w.integral_inv_nu(rs[nscan - 1], zeta);
        for (int i = nscan - 2; i >= 0; --i)
            suf[i] = suf[i + 1] + w.integral_inv_nu(rs[i], rs[i + 1]);
        int best = 0;
        for (int i = 0; i < nscan; ++i)
            if (cum[i] * suf[i] > cum[best] * suf[best]) best = i;
        out.r_at_A = rs[best];
        auto fA = [&](double u) {
            double r = std::exp(u);
            return w.integral_mu(0.0, r) * w.integral_inv_nu(r, zeta);
        };
        double lo = std::log(rs[std::max(0, best - 1)]);
        double hi = std::log(rs[std::min(nscan - 1, best + 1)]);
        out.A = golden_max(fA, lo, hi, 1e-10);
    }

    // B(zeta) = sup_{r > zeta} int_zeta^r 1/nu * int_r^inf mu
    {
        double base = std::max(zeta, 1e-3);
        double ra = (zeta > 0.0) ? zeta * (1.0 + 1e-9) : 1e-6;
        double rb = std::max(1e6, base * 1e5);
        std::vector<double> rs(nscan), pre(nscan), tail(nscan);
        for (int i = 0; i < nscan; ++i)
            rs[i] = ra * std::pow(rb / ra, i / double(nscan - 1));
        pre[0] = w.integral_inv_nu(zeta, rs[0]);
        for (int i = 1; i < nscan; ++i) pre[i] = pre[i - 1] + w.integral_inv_nu(rs[i - 1], rs[i]);
        for (int i = 0; i < nscan; ++i)
            tail[i] = (rs[i] >= 2.0) ? w.integral_mu_tail(rs[i])
                                     : w.integral_mu(rs[i], 2.0) + w.integral_mu_tail(2.0);
        int best = 0;
        for (int i = 0; i < nscan; ++i)
            if (pre[i] * tail[i] > pre[best] * tail[best]) best = i;
        out.r_at_B = rs[best];
        auto fB = [&](double u) {
            double r = std::exp(u);
            double t = (r >= 2.0) ? w.integral_mu_tail(r)
                                  : w.integral_mu(r, 2.0) + w.integral_mu_tail(2.0);
            return w.integral_inv_nu(zeta, r) * t;
        };
        double lo = std::log(rs[std::max(0, best - 1)]);
        double hi = std::log(rs[std::min(nscan - 1, best + 1)]);
        out.B = golden_max(fB, lo, hi, 1e-10);
        // the product tends to a positive constant as r -> inf; the sup must
        // dominate that limit
        double a = (w.d - 2.0) * (w.m - (w.d - 4.0) / (w.d - 2.0)) / (1.0 - w.m);
        if (w.d >= 3) out.B = std::max(out.B, 1.0 / (a * a));
    }
    return out;
}

double muckenhoupt_K(double zeta, const SpectralWeights& w) {
    if (w.d >= 2) {
        double mstar = (w.d - 4.0) / (w.d - 2.0);
        double mtop = (w.d - 2.0) / (w.d - 1.0);
        if (!(w.m > mstar && w.m <= mtop + 1e-15))
            throw regime_error("muckenhoupt_K: finite only for m in (m_star, (d-2)/(d-1)], got m = " +
                               std::to_string(w.m));
    }
    if (zeta < 0.0) throw std::domain_error("muckenhoupt_K: zeta must be >= 0");
    if (zeta == 0.0 && w.d >= 2)
        throw regime_error("muckenhoupt_K: K(0) is the d = 1 convention (1/nu not integrable at 0)");
    MuckenhouptParts p = muckenhoupt_parts(zeta, w);
    double best = (zeta == 0.0) ? p.B : std::max(p.A, p.B);
    return 2.0 * w.m / (1.0 - w.m) * best;
}

GapEnvelope gap_envelope(const Exponents& e) {
    if (std::fabs(e.m - e.m_star) < 1e-12)
        throw regime_error("gap_envelope: m = m_star is excluded");
    GapEnvelope out;
    out.lower = 8.0 * e.m * (1.0 - e.m) / sqr(e.d - 4.0 - e.m * (e.d - 2.0));
    double mtop = (e.d - 2.0) / (e.d - 1.0);
    if (e.m > e.m_star && e.m <= mtop + 1e-15 && e.d >= 2) {
        SpectralWeights w{e.m, e.d};
        double eta = median_eta(w);
        double K = muckenhoupt_K(eta, w);
        out.eta = eta;
        out.K_eta = K;
        // radial constant obeys K <= C_rad <= 4K (Muckenhoupt two-sidedness);
        // the sphere split contributes another factor 2
        out.upper = std::max(8.0 * K, 4.0 * e.m / ((1.0 - e.m) * (e.d - 1.0)));
    }
    return out;
}

// ---------------------------------------------------------------- eigenproblem

namespace {

struct Pencil {
    std::vector<double> Sd, Se, Md;  // stiffness diag/offdiag, lumped mass diag
};

// assembles m int h'^2 V_D r^{d-1} dr vs int h^2 V_D^{2-m} r^{d-1} dr over the
// strictly positive nodes, in log space to survive extreme extents. The r = 0
// node is mass-free and statically condenses away, so it is dropped.
Pencil assemble_pencil(const std::vector<double>& rin, const Exponents& e, double D) {
    std::vector<double> r;
    r.reserve(rin.size());
    for (double x : rin)
        if (x > 0.0) r.push_back(x);
    const int n = static_cast<int>(r.size());
    if (n < 8) throw std::domain_error("rayleigh_gap: grid has too few positive nodes");
    auto logV = [&](double rr) { return -std::log(D + e.profile_b() * rr * rr) / (1.0 - e.m); };
    Pencil p;
    p.Sd.assign(n, 0.0);
    p.Se.assign(n - 1, 0.0);
    p.Md.assign(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        double rm = std::sqrt(r[i] * r[i + 1]);
        double k = e.m * std::exp(logV(rm) + (e.d - 1) * std::log(rm)) / (r[i + 1] - r[i]);
        p.Sd[i] += k;
        p.Sd[i + 1] += k;
        p.Se[i] = -k;
    }
    for (int i = 0; i < n; ++i) {
        double wdr = 0.0;
        if (i > 0) wdr += 0.5 * (r[i] - r[i - 1]);
        if (i + 1 < n) wdr += 0.5 * (r[i + 1] - r[i]);
        p.Md[i] = std::exp((2.0 - e.m) * logV(r[i]) + (e.d - 1) * std::log(r[i])) * wdr;
    }
    return p;
}

// number of pencil eigenvalues below theta, by LDL^T pivot signs of S - theta M
int sturm_count(const Pencil& p, double theta) {
    const int n = static_cast<int>(p.Sd.size());
    int cnt = 0;
    double piv = p.Sd[0] - theta * p.Md[0];
    if (piv == 0.0) piv = -1e-300;
    if (piv < 0.0) ++cnt;
    for (int i = 1; i < n; ++i) {
        double t = p.Sd[i] - theta * p.Md[i] - p.Se[i - 1] * p.Se[i - 1] / piv;
        piv = (t == 0.0) ? -1e-300 : t;
        if (piv < 0.0) ++cnt;
    }
    return cnt;
}

// k-th smallest generalized eigenvalue (k = 0 is the smallest)
double kth_eigenvalue(const Pencil& p, int k) {
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (sturm_count(p, hi) < k + 1) {
        hi *= 2.0;
        if (++guard > 80) throw convergence_error("rayleigh_gap: eigenvalue bracket not found");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (sturm_count(p, mid) >= k + 1)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

double radial_eigenvalue(const std::vector<double>& r, const Exponents& e, double D) {
    Pencil p = assemble_pencil(r, e, D);
    if (e.subcritical_hardy()) {
        // compactly supported class: Dirichlet at the outer node, no mean
        p.Sd.pop_back();
        p.Md.pop_back();
        p.Se.pop_back();
        return kth_eigenvalue(p, 0);
    }
    // free-free pencil carries the exact zero mode (constants); skip it
    return kth_eigenvalue(p, 1);
}

}  // namespace

GridPtr spectral_grid(const Exponents& e, int refine) {
    if (refine < 1) throw std::domain_error("spectral_grid: refine must be >= 1");
    double L = (e.subcritical_hardy() ? 62.0 : 30.0) * refine;
    int n = 4096 * refine;
    return RadialGrid::logarithmic(e.d, 1e-4, std::exp(L), n, -4.0);
}

SpectralResult rayleigh_gap(const Exponents& e, double D, GridPtr grid) {
    if (std::fabs(e.m - e.m_star) < 1e-12)
        throw regime_error("rayleigh_gap: m = m_star is excluded");
    if (!(D > 0.0)) throw std::domain_error("rayleigh_gap: D must be positive");

    const std::vector<double>& r = grid->nodes();
    double lam = radial_eigenvalue(r, e, D);

    // half-extent run for the truncation error estimate (same nodes, prefix)
    double u_lo = std::log(r[1]), u_hi = std::log(r.back());
    double u_mid = 0.5 * (u_lo + u_hi);
    std::vector<double> rhalf;
    for (double x : r)
        if (x == 0.0 || std::log(std::max(x, 1e-300)) <= u_mid) rhalf.push_back(x);
    double lam_half = radial_eigenvalue(rhalf, e, D);

    double lam2D = radial_eigenvalue(r, e, 2.0 * D);

    SpectralResult out;
    out.lambda_est = lam;
    out.lambda_err = (4.0 / 3.0) * std::fabs(lam - lam_half) + std::fabs(lam - lam2D);
    out.C_est = e.m / lam;
    out.C_err = out.C_est * (out.lambda_err / lam);
    out.D_spread = std::fabs(lam - lam2D) / lam;
    out.method_tags = e.subcritical_hardy() ? "sturm-pencil;dirichlet-outer"
                                            : "sturm-pencil;mean-deflated";
    if (e.subcritical_hardy()) out.C_exact = exact_gap_subcritical(e);
    GapEnvelope env = gap_envelope(e);
    out.lower_bound = env.lower;
    out.upper_bound = env.upper;
    out.K_eta = env.K_eta;
    out.eta = env.eta;
    return out;
}

SpectralResult predicted_lambda(const Exponents& e, int refine) {
    if (std::fabs(e.m - e.m_star) < 1e-12)
        throw regime_error("predicted_lambda: m = m_star is excluded");
    if (e.subcritical_hardy()) {
        SpectralResult out;
        double C = exact_gap_subcritical(e);
        out.C_exact = C;
        out.C_est = C;
        out.lambda_est = e.m / C;
        out.lambda_err = 0.0;
        out.C_err = 0.0;
        out.method_tags = "closed-form";
        GapEnvelope env = gap_envelope(e);
        out.lower_bound = env.lower;
        out.upper_bound = env.upper;
        return out;
    }
    return rayleigh_gap(e, 1.0, spectral_grid(e, refine));
}

}  // namespace fade
