#include "fade/verify.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <tuple>
#include <vector>

#include "fade/experiments.hpp"
#include "fade/rates.hpp"
#include "fade/spectral.hpp"

namespace fade {

namespace {

struct Suite {
    std::vector<CheckResult> results;

    // records one suite; slack <= 0 passes
    void run(const std::string& name, const std::function<std::pair<int, double>()>& body) {
        CheckResult r;
        r.name = name;
        try {
            auto [count, slack] = body();
            r.instances = count;
            r.worst_slack = slack;
            r.pass = slack <= 0.0;
        } catch (const std::exception&) {
            r.pass = false;
            r.worst_slack = std::numeric_limits<double>::infinity();
        }
        results.push_back(r);
    }
};

}  // namespace

std::vector<CheckResult> run_verification(const ExperimentConfig& cfg) {
    Suite s;
    const Exponents e = derive_exponents(cfg.m, cfg.d);
    GridPtr grid = make_grid(cfg);

    // --- profile laws -----------------------------------------------------
    s.run("profiles.regime_consistency", [&]() {
        // d/dtau [R^{d(m-m_c)}] must equal d(m-m_c) (supercritical), the
        // subcritical analogue with the reciprocal, checked by central FD
        double worst = 0.0;
        int count = 0;
        for (double mm : {0.45, 0.6, 0.85}) {
            for (int dd : {3, 5}) {
                Exponents ex = derive_exponents(mm, dd);
                ProfileParams pp{1.0, 2.0, ex};
                double c = dd * (mm - ex.m_c);
                double h = 1e-6;
                auto pw = [&](double tau) {
                    return std::pow(scale_radius(pp, tau), c);
                };
                for (double tau : {0.0, 0.5, 1.5}) {
                    double fd = (pw(tau + h) - pw(tau - h)) / (2.0 * h);
                    worst = std::max(worst, std::fabs(fd - c) / std::fabs(c) - 1e-6);
                    ++count;
                }
            }
        }
        return std::pair{count, worst};
    });

    s.run("profiles.ordering", [&]() {
        double worst = -1.0;
        int count = 0;
        for (double r : {0.0, 0.5, 3.0, 50.0, 900.0}) {
            double lo = barenblatt_profile(2.0, e, r);
            double hi = barenblatt_profile(0.5, e, r);
            worst = std::max(worst, lo - hi);  // must stay negative
            ++count;
        }
        return std::pair{count, worst};
    });

    s.run("profiles.tail_law", [&]() {
        double worst = 0.0;
        int count = 0;
        for (double mm : {0.2, 0.5, 0.8}) {
            Exponents ex = derive_exponents(mm, 5);
            double limit = std::pow(2.0 * mm / (1.0 - mm), 1.0 / (1.0 - mm));
            double got = std::pow(1e4, 2.0 / (1.0 - mm)) * barenblatt_profile(1.0, ex, 1e4);
            worst = std::max(worst, std::fabs(got - limit) / limit - 1e-3);
            ++count;
        }
        return std::pair{count, worst};
    });

    s.run("profiles.stationarity", [&]() {
        double worst = 0.0;
        int count = 0;
        const std::vector<std::tuple<double, int, double>> cases = {
            {0.7, 3, 1.0}, {0.5, 5, 2.0}, {0.2, 5, 1.0}};
        for (auto [mm, dd, T] : cases) {
            Exponents ex = derive_exponents(mm, dd);
            ProfileParams pp{1.3, T, ex};
            std::vector<double> taus;
            if (ex.regime() == Regime::Subcritical)
                taus = {0.1 * T, 0.5 * T, 0.9 * T};
            else
                taus = {0.3, 1.0, 2.5};
            for (double tau : taus) {
                RadialField u = RadialField::sample(
                    grid, [&](double r) { return barenblatt_solution(pp, tau, r); });
                RescaledSnapshot snap = rescale_snapshot_exact(u, pp, tau);
                for (int i = 0; i < snap.v.size(); ++i) {
                    double ref = barenblatt_profile(pp.D, ex, snap.v.grid().node(i));
                    worst = std::max(worst, std::fabs(snap.v[i] - ref) / ref - 1e-10);
                }
                ++count;
            }
        }
        return std::pair{count, worst};
    });

    // --- quadrature -------------------------------------------------------
    s.run("grid.quadrature_order", [&]() {
        // f = (1+r^2)^{-s}: against the closed Beta-function value, halving
        // the spacing must cut the error by at least ~4
        double worst = 0.0;
        int count = 0;
        double sexp = 3.0;
        double exact = grid->omega_d() * 0.5 *
                       std::exp(std::lgamma(0.5 * cfg.d) + std::lgamma(sexp - 0.5 * cfg.d) -
                                std::lgamma(sexp));
        auto err_at = [&](int n) {
            GridPtr gg = RadialGrid::graded(cfg.d, cfg.r_max, n, cfg.r_uniform,
                                            cfg.uniform_fraction, -2.0 * sexp);
            RadialField f = RadialField::sample(
                gg, [&](double r) { return std::pow(1.0 + r * r, -sexp); });
            return std::fabs(integrate(f).value - exact);
        };
        double e1 = err_at(512), e2 = err_at(1024), e4 = err_at(2048);
        worst = std::max(e2 - e1 / 3.5, e4 - e2 / 3.5);
        count = 3;
        return std::pair{count, worst};
    });

    s.run("grid.tail_consistency", [&]() {
        RadialField f = RadialField::sample(
            grid, [&](double r) { return std::pow(1.0 + r * r, -2.5); });
        Measured a = integrate(f);
        GridPtr g2 = RadialGrid::graded(cfg.d, 2.0 * cfg.r_max, cfg.n, cfg.r_uniform,
                                        cfg.uniform_fraction, -5.0);
        RadialField f2 = RadialField::sample(
            g2, [&](double r) { return std::pow(1.0 + r * r, -2.5); });
        Measured b = integrate(f2);
        double slack = std::fabs(a.value - b.value) - (a.error + b.error);
        return std::pair{2, slack};
    });

    s.run("grid.duality", [&]() {
        // int f' g r^{d-1} dr = -int f (g r^{d-1})' dr for compactly
        // supported g; discrete residual at second order
        auto run_at = [&](int n) {
            GridPtr gg = RadialGrid::graded(cfg.d, cfg.r_max, n, cfg.r_uniform,
                                            cfg.uniform_fraction);
            RadialField f = RadialField::sample(gg, [](double r) { return 1.0 / (1.0 + r * r); });
            RadialField gfun = RadialField::sample(gg, [](double r) {
                double z = (r - 2.0) / 1.5;
                return (std::fabs(z) < 1.0) ? std::pow(1.0 - z * z, 3) : 0.0;
            });
            RadialField df = radial_gradient(f);
            RadialField grd(gg);
            for (int i = 0; i < grd.size(); ++i)
                grd[i] = gfun[i] * std::pow(gg->node(i), cfg.d - 1);
            RadialField dgr = radial_gradient(grd);
            double lhs = 0.0, rhs = 0.0;
            const auto& wts = gg->dr_weights();
            for (int i = 0; i < grd.size(); ++i) {
                lhs += df[i] * grd[i] * wts[i];
                rhs += -f[i] * dgr[i] * wts[i];
            }
            return std::fabs(lhs - rhs);
        };
        double r1 = run_at(cfg.n), r2 = run_at(2 * cfg.n);
        // must decrease under refinement and be small already
        double slack = std::max(r2 - r1, r1 - 1e-3);
        return std::pair{2, slack};
    });

    // --- randomized functional inequalities --------------------------------
    Problem prob = build_problem(cfg);
    const SandwichBounds& b = prob.bounds;
    Rng rng(cfg.seed);

    s.run("functionals.nonneg_vanish", [&]() {
        RadialField one(prob.grid, 1.0);
        double worst = std::fabs(relative_entropy(one, b, e).value);
        worst = std::max(worst, std::fabs(relative_fisher(one, b, e).value));
        RadialField zero(prob.grid, 0.0);
        worst = std::max(worst, std::fabs(linearized_entropy(zero, b.Dstar, e).value));
        worst = std::max(worst, std::fabs(linearized_fisher(zero, b.Dstar, e).value));
        return std::pair{4, worst - 1e-14};
    });

    s.run("functionals.equivalence_sandwich", [&]() {
        double worst = -std::numeric_limits<double>::infinity();
        Rng r2(cfg.seed + 1);
        for (int k = 0; k < cfg.samples; ++k) {
            RadialField w = random_admissible_quotient(b, e, prob.grid, r2);
            Measured F = relative_entropy(w, b, e);
            EquivalenceBounds eq = entropy_equivalence_bounds(w, b, e);
            double slack_lo = (eq.lower.value - eq.lower.error) - (F.value + F.error);
            double slack_hi = (F.value - F.error) - (eq.upper.value + eq.upper.error);
            worst = std::max({worst, slack_lo, slack_hi});
        }
        return std::pair{cfg.samples, worst};
    });

    s.run("functionals.fisher_domination", [&]() {
        double worst = -std::numeric_limits<double>::infinity();
        Rng r2(cfg.seed + 2);
        BetaConstants bc = beta_constants(b, e);
        for (int k = 0; k < cfg.samples; ++k) {
            RadialField w = random_admissible_quotient(b, e, prob.grid, r2);
            RadialField g = linearization_variable(w, b.Dstar, e);
            Measured Il = linearized_fisher(g, b.Dstar, e);
            Measured I = relative_fisher(w, b, e);
            Measured El = linearized_entropy(g, b.Dstar, e);
            double lhs = Il.value - Il.error;
            double rhs = bc.beta1 * (I.value + I.error) + bc.beta2 * (El.value + El.error);
            worst = std::max(worst, lhs - rhs - 1e-8);
        }
        return std::pair{cfg.samples, worst};
    });

    s.run("functionals.quadratic_limit", [&]() {
        // F[1 + eps (w-1)] / eps^2 -> E_lin[g]; deviation must shrink ~ eps
        Rng r2(cfg.seed + 3);
        RadialField w = random_admissible_quotient(b, e, prob.grid, r2);
        RadialField g = linearization_variable(w, b.Dstar, e);
        double El = linearized_entropy(g, b.Dstar, e).value;
        double Il = linearized_fisher(g, b.Dstar, e).value;
        double prevF = std::numeric_limits<double>::infinity();
        double prevI = std::numeric_limits<double>::infinity();
        double worst = -1.0;
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            RadialField we(prob.grid);
            for (int i = 0; i < we.size(); ++i) we[i] = 1.0 + eps * (w[i] - 1.0);
            double devF = std::fabs(relative_entropy(we, b, e).value / (eps * eps) - El) / El;
            double devI = std::fabs(relative_fisher(we, b, e).value / (eps * eps) - Il) / Il;
            worst = std::max({worst, devF - 0.75 * prevF, devI - 0.75 * prevI});
            prevF = devF;
            prevI = devI;
        }
        return std::pair{6, worst};
    });

    s.run("functionals.entropy_production_gamma", [&]() {
        // gamma F <= I whenever the certificate exists; use a tight sandwich
        SandwichBounds tight = SandwichBounds::make(1.02, 0.98, 1.0, e);
        SpectralResult sp = predicted_lambda(e);
        auto gam = gamma_rate(tight, e, e.m / sp.lambda_est);
        if (!gam) return std::pair{0, 1.0};  // must certify for this sandwich
        Rng r2(cfg.seed + 4);
        double worst = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < cfg.samples; ++k) {
            RadialField w = random_admissible_quotient(tight, e, prob.grid, r2);
            Measured F = relative_entropy(w, tight, e);
            Measured I = relative_fisher(w, tight, e);
            worst = std::max(worst,
                             *gam * (F.value - F.error) - (I.value + I.error) - 1e-10);
        }
        return std::pair{cfg.samples, worst};
    });

    s.run("rates.moment_bound", [&]() {
        Rng r2(cfg.seed + 5);
        double worst = -std::numeric_limits<double>::infinity();
        double theta = 0.5;
        for (int k = 0; k < cfg.samples; ++k) {
            RadialField w = random_admissible_quotient(b, e, prob.grid, r2);
            RadialField v(prob.grid);
            for (int i = 0; i < v.size(); ++i)
                v[i] = w[i] * barenblatt_profile(b.Dstar, e, prob.grid->node(i));
            Measured nrm = moment_norm(v, b.Dstar, theta, e);
            Measured bnd = moment_bound(v, b, theta, e);
            worst = std::max(worst,
                             (nrm.value - nrm.error) - (bnd.value + bnd.error) - 1e-8);
        }
        return std::pair{cfg.samples, worst};
    });

    s.run("rates.fit_sanity", [&]() {
        double worst = 0.0;
        int count = 0;
        for (double a : {0.01, 0.1, 1.0, 10.0}) {
            std::vector<double> t, v;
            for (int i = 0; i < 10; ++i) {
                t.push_back(0.3 * i);
                v.push_back(3.0 * std::exp(-a * 0.3 * i));
            }
            RateFit f = fit_exponential(t, v, -0.1, 3.1);
            worst = std::max(worst, std::fabs(f.slope + a) - 1e-10);
            ++count;
        }
        return std::pair{count, worst};
    });

    s.run("rates.prediction_consistency", [&]() {
        SpectralResult sp = predicted_lambda(e);
        RatePrediction rp = predict_rates(e, sp, b);
        double worst = 0.0;
        for (double q : {std::max(1.01, e.q_star + 0.01), 2.0, 7.5}) {
            worst = std::max(worst, std::fabs(rp.rate_Lq(q) - rp.lambda));
            worst = std::max(worst,
                             std::fabs(rp.alpha_original(q) - rp.rate_Lq(q) -
                                       e.d * (q - 1.0) / q));
        }
        return std::pair{6, worst - 1e-14};
    });

    s.run("spectral.scale_invariance", [&]() {
        // quadratic-form homogeneity: I_lin / E_lin invariant under g -> c g
        Rng r2(cfg.seed + 6);
        RadialField w = random_admissible_quotient(b, e, prob.grid, r2);
        RadialField g = linearization_variable(w, b.Dstar, e);
        RadialField g3(prob.grid);
        for (int i = 0; i < g.size(); ++i) g3[i] = 3.0 * g[i];
        double q1 = linearized_fisher(g, b.Dstar, e).value / linearized_entropy(g, b.Dstar, e).value;
        double q3 =
            linearized_fisher(g3, b.Dstar, e).value / linearized_entropy(g3, b.Dstar, e).value;
        return std::pair{2, std::fabs(q1 - q3) / q1 - 1e-12};
    });

    return s.results;
}

}  // namespace fade
