// Acceptance suite: one pass/fail line per criterion, exit 0 only if all pass.
// Each check pins its tolerance in code; nothing is deferred to calibration.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fade/experiments.hpp"
#include "fade/rates.hpp"
#include "fade/spectral.hpp"

using namespace fade;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
    std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
    va_list ap;
    va_start(ap, f);
    char buf[512];
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------------------
void criterion_1_exact_subcritical() {
    Exponents e = derive_exponents(0.2, 5);
    // rational oracle: 8m(1-m) = 32/25, [(d-2)(m - m_star)]^2 = [3(1/5-1/3)]^2 = 4/25
    const double exact = (32.0 / 25.0) / (4.0 / 25.0);
    double impl = exact_gap_subcritical(e);
    bool ok = std::fabs(impl - exact) <= 1e-13 * exact && exact == 8.0;

    SpectralResult coarse = rayleigh_gap(e, 1.0, spectral_grid(e, 1));
    double err1 = std::fabs(coarse.C_est - 8.0) / 8.0;
    SpectralResult fine = rayleigh_gap(e, 1.0, spectral_grid(e, 4));
    double err4 = std::fabs(fine.C_est - 8.0) / 8.0;
    ok = ok && err1 <= 0.05 && err4 <= 0.01;
    report(1, ok, "exact subcritical constant C(0.2,5) = 8 and Rayleigh reproduction",
           fmt("closed=%.15g, C_est=%.4f (%.2f%%), C_est@4x=%.4f (%.2f%%)", impl, coarse.C_est,
               100 * err1, fine.C_est, 100 * err4));
}

// ---------------------------------------------------------------------------
void criterion_2_envelope() {
    bool ok = true;
    std::string detail;
    const std::vector<std::pair<double, int>> pairs = {{0.5, 3}, {0.45, 4}, {0.55, 5}, {0.6, 5}};
    for (auto [m, d] : pairs) {
        Exponents e = derive_exponents(m, d);
        SpectralResult s = rayleigh_gap(e, 1.0, spectral_grid(e, 1));
        bool lo_ok = s.lower_bound && *s.lower_bound <= s.C_est + s.C_err;
        bool hi_ok = s.upper_bound && s.C_est - s.C_err <= *s.upper_bound;
        // displayed bound on K(eta) must hold with positive slack
        double Kb = m * (2.0 - m) * std::pow(2.0, (3.0 - 2.0 * m) / (1.0 - m)) *
                    (1.0 + std::pow(2.0, (2.0 - m) / (1.0 - m))) /
                    (d * std::pow(d - 4.0 - m * (d - 2.0), 2));
        bool kb_ok = s.K_eta && *s.K_eta < Kb;
        ok = ok && lo_ok && hi_ok && kb_ok;
        detail += fmt("(%.2f,%d): %.3f<=%.3f+-%.3f<=%.3f K=%.3f<%.1f%s ", m, d, *s.lower_bound,
                      s.C_est, s.C_err, *s.upper_bound, s.K_eta ? *s.K_eta : -1.0, Kb,
                      (lo_ok && hi_ok && kb_ok) ? "" : " X");
    }
    report(2, ok, "two-sided envelope and K(eta) bound on four (m,d) pairs", detail);
}

// ---------------------------------------------------------------------------
void criterion_3_D_independence() {
    bool ok = true;
    std::string detail;
    const std::vector<std::pair<double, int>> pairs = {
        {0.5, 3}, {0.45, 4}, {0.55, 5}, {0.6, 5}, {0.2, 5}};
    for (auto [m, d] : pairs) {
        Exponents e = derive_exponents(m, d);
        GridPtr grid = spectral_grid(e, 1);
        std::vector<double> lams;
        for (double D : {0.5, 1.0, 2.0})
            lams.push_back(rayleigh_gap(e, D, grid).lambda_est);
        double spread = (*std::max_element(lams.begin(), lams.end()) -
                         *std::min_element(lams.begin(), lams.end())) /
                        lams[1];
        ok = ok && spread <= 0.01;
        detail += fmt("(%.2f,%d): %.2e ", m, d, spread);
    }
    report(3, ok, "lambda independent of D in {1/2, 1, 2} within 1%", detail);
}

// ---------------------------------------------------------------------------
void criterion_4_hardy_optimality() {
    bool ok = true;
    std::string detail;
    for (auto [alpha, d] : std::vector<std::pair<double, int>>{{0.0, 3}, {-2.0, 5}}) {
        double target = 1.0 / hardy_constant(alpha, d);
        double prev = 1e300;
        bool mono = true;
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            double q = hardy_rayleigh_quotient(alpha, d, eps);
            mono = mono && q < prev && q > target;
            prev = q;
        }
        // the capped family converges like 1/log(1/eps); push eps accordingly
        double eps_small = (alpha > 1.0 - 0.5 * d) ? 1e-22 : 1e-4;
        double qlim = hardy_rayleigh_quotient(alpha, d, eps_small);
        bool close = std::fabs(qlim - target) / target <= 0.02;
        ok = ok && mono && close;
        detail += fmt("(%g,%d): lim=%.5f target=%.5f mono=%d ", alpha, d, qlim, target, mono);
    }
    report(4, ok, "Hardy test-family quotients decrease to 1/kappa within 2%", detail);
}

// ---------------------------------------------------------------------------
Trajectory default_run(int n, double rmax, double dt, double t_end) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.r_max = rmax;
    cfg.solver.dt = dt;
    cfg.solver.t_end = t_end;
    cfg.solver.diag_every = static_cast<int>(0.05 / dt + 0.5);
    cfg.solver.store_fields = false;
    Problem p = build_problem(cfg);
    return simulate(p.w0, p.bounds, p.exps, cfg.solver);
}

void criterion_5_entropy_production() {
    Trajectory base = default_run(512, 1e3, 2e-3, 3.0);
    auto res = entropy_production_residual(base);
    double worst = *std::max_element(res.begin(), res.end());
    Trajectory fine = default_run(1024, 1e3, 1e-3, 3.0);
    auto resf = entropy_production_residual(fine);
    double worstf = *std::max_element(resf.begin(), resf.end());
    bool ok = worst <= 5e-3 && worstf <= 0.5 * worst * 1.05;
    report(5, ok, "entropy production identity dF/dt = -I on the default run",
           fmt("residual=%.4g (<=5e-3), refined=%.4g (<=half)", worst, worstf));
}

void criterion_6_mass_conservation() {
    Trajectory base = default_run(512, 1e3, 2e-3, 6.0);
    double d1 = mass_drift(base);
    double rel = d1 / (1.0 + std::fabs(base.reports.front().rel_mass));
    Trajectory dbl = default_run(1024, 2e3, 2e-3, 6.0);
    double d2 = mass_drift(dbl);
    bool ok = rel <= 1e-6 && d2 <= d1 / 4.0;
    report(6, ok, "relative mass conserved; improves 4x per grid doubling",
           fmt("drift=%.3e (rel %.3e), doubled-grid drift=%.3e (ratio %.1f)", d1, rel, d2,
               d1 / d2));
}

// ---------------------------------------------------------------------------
void criterion_7_comparison() {
    ExperimentConfig cfg;
    cfg.n = 384;
    cfg.r_max = 1e3;
    cfg.solver.t_end = 1.0;
    Problem p = build_problem(cfg);
    double worst = 0.0;
    for (int pair = 0; pair < 3; ++pair) {
        RadialField wa = p.w0;
        RadialField wb(p.grid);
        for (int i = 0; i < wb.size(); ++i) {
            double r = p.grid->node(i);
            double bump = 0.0;
            if (pair == 0) bump = 0.15 * std::exp(-0.5 * (r - 2.0) * (r - 2.0));
            if (pair == 1) bump = 0.4 / (1.0 + r * r);
            if (pair == 2) bump = 0.05 * std::exp(-0.1 * r * r);
            wb[i] = wa[i] + bump;
        }
        wb[wb.size() - 1] = 1.0;
        Trajectory ta = simulate(wa, p.bounds, p.exps, cfg.solver);
        Trajectory tb = simulate(wb, p.bounds, p.exps, cfg.solver);
        for (size_t k = 0; k < ta.fields.size(); ++k)
            for (int i = 0; i < ta.fields[k].size(); ++i)
                worst = std::max(worst, ta.fields[k][i] - tb.fields[k][i]);
    }
    report(7, worst <= 1e-10, "ordered data stay ordered across 3 paired runs",
           fmt("worst violation=%.3e", worst));
}

// ---------------------------------------------------------------------------
void criterion_8_rate_theorem() {
    bool ok = true;
    std::string detail;
    struct Case {
        double m;
        int d;
        double rmax;
        int n;
        double dt, t_end, amp;
    };
    for (const Case& c : {Case{0.5, 3, 1e4, 768, 4e-3, 8.0, 0.02},
                          Case{0.55, 5, 1e7, 1024, 5e-3, 30.0, 0.008}}) {
        Exponents e = derive_exponents(c.m, c.d);
        SpectralResult sp = rayleigh_gap(e, 1.0, spectral_grid(e, 1));
        GridPtr grid = RadialGrid::graded(c.d, c.rmax, c.n);
        RadialField w0 = slowest_mode_perturbation(e, 1.0, grid, c.amp);
        SandwichBounds nb = SandwichBounds::make(std::pow(1.0 - c.amp, -(1.0 - c.m)),
                                                 std::pow(1.0 + c.amp, -(1.0 - c.m)), 1.0, e);
        SolverConfig sc;
        sc.dt = c.dt;
        sc.t_end = c.t_end;
        sc.diag_every = 20;
        sc.store_fields = false;
        Trajectory traj = simulate(w0, nb, e, sc);

        std::vector<double> ts, Fs;
        for (const EntropyReport& r : traj.reports) {
            ts.push_back(r.t);
            Fs.push_back(r.F);
        }
        auto [lo, hi] = default_fit_window(traj);
        RateFit fit = fit_exponential(ts, Fs, lo, hi);
        double mism = std::fabs(-fit.slope - 2.0 * sp.lambda_est) / (2.0 * sp.lambda_est);

        auto env = sharp_rate_envelope(traj, e, sp);
        double defect = rate_envelope_defect(traj, env);

        bool this_ok = mism <= 0.15 && defect <= 1e-10;
        ok = ok && this_ok;
        detail += fmt("(%.2f,%d): fit=%.4f 2lam=%.4f (%.1f%%) envelope_defect=%.2e ", c.m, c.d,
                      -fit.slope, 2.0 * sp.lambda_est, 100 * mism, defect);
    }
    report(8, ok, "entropy decay rate matches 2 lambda within 15%; log F envelope holds", detail);
}

// ---------------------------------------------------------------------------
void criterion_9_randomized_inequalities() {
    ExperimentConfig cfg;
    cfg.n = 2048;
    Problem p = build_problem(cfg);
    const Exponents& e = p.exps;
    const SandwichBounds& b = p.bounds;
    const int samples = 200;

    int viol_eq = 0, viol_beta = 0, viol_mom = 0, viol_gamma = 0;
    BetaConstants bc = beta_constants(b, e);

    Rng rng(2026);
    for (int k = 0; k < samples; ++k) {
        RadialField w = random_admissible_quotient(b, e, p.grid, rng);
        Measured F = relative_entropy(w, b, e);
        EquivalenceBounds eq = entropy_equivalence_bounds(w, b, e);
        if (eq.lower.value - eq.lower.error > F.value + F.error) ++viol_eq;
        if (F.value - F.error > eq.upper.value + eq.upper.error) ++viol_eq;

        RadialField g = linearization_variable(w, b.Dstar, e);
        Measured Il = linearized_fisher(g, b.Dstar, e);
        Measured I = relative_fisher(w, b, e);
        Measured El = linearized_entropy(g, b.Dstar, e);
        if (Il.value - Il.error >
            bc.beta1 * (I.value + I.error) + bc.beta2 * (El.value + El.error) + 1e-8)
            ++viol_beta;

        RadialField v(p.grid);
        for (int i = 0; i < v.size(); ++i)
            v[i] = w[i] * barenblatt_profile(b.Dstar, e, p.grid->node(i));
        Measured nrm = moment_norm(v, b.Dstar, 0.5, e);
        Measured bnd = moment_bound(v, b, 0.5, e);
        if (nrm.value - nrm.error > bnd.value + bnd.error + 1e-8) ++viol_mom;
    }

    // entropy - entropy production on a tight (certifiable) sandwich
    SandwichBounds tight = SandwichBounds::make(1.02, 0.98, 1.0, e);
    SpectralResult sp = rayleigh_gap(e, 1.0, spectral_grid(e, 1));
    auto gam = gamma_rate(tight, e, e.m / sp.lambda_est);
    bool certified = gam.has_value();
    Rng rng2(2027);
    for (int k = 0; k < samples && certified; ++k) {
        RadialField w = random_admissible_quotient(tight, e, p.grid, rng2);
        Measured F = relative_entropy(w, tight, e);
        Measured I = relative_fisher(w, tight, e);
        if (*gam * (F.value - F.error) > I.value + I.error + 1e-10) ++viol_gamma;
    }

    bool ok = certified && viol_eq == 0 && viol_beta == 0 && viol_mom == 0 && viol_gamma == 0;
    report(9, ok, "randomized families: equivalence, beta-domination, moments, gamma F <= I",
           fmt("samples=%d violations: eq=%d beta=%d moment=%d gamma=%d certified=%d", samples,
               viol_eq, viol_beta, viol_mom, viol_gamma, certified ? 1 : 0));
}

// ---------------------------------------------------------------------------
void criterion_10_determinism() {
    const char* bin = std::getenv("FADE_BIN");
    if (!bin) {
        report(10, false, "cmd_verify byte-identical across runs", "FADE_BIN not set");
        return;
    }
    fs::path tmp = fs::temp_directory_path() / "fade_acceptance_det";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    {
        std::ofstream f(tmp / "a.cfg");
        f << "[problem]\nm = 0.5\nd = 3\n[grid]\nr_max = 500\nn = 512\n"
             "[experiment]\nname = det\nseed = 11\nsamples = 40\n";
    }
    auto run_once = [&](const std::string& out) {
        std::string cmd = std::string(bin) + " verify --config " + (tmp / "a.cfg").string() +
                          " --out " + (tmp / out).string() + " > " + (tmp / (out + ".log")).string() +
                          " 2>&1";
        return std::system(cmd.c_str());
    };
    int r1 = run_once("o1");
    int r2 = run_once("o2");
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    std::string a = slurp(tmp / "o1" / "det_verify.csv");
    std::string bb = slurp(tmp / "o2" / "det_verify.csv");
    std::string la = slurp(tmp / "o1.log"), lb = slurp(tmp / "o2.log");
    bool ok = r1 == 0 && r2 == 0 && !a.empty() && a == bb && la == lb;
    report(10, ok, "cmd_verify byte-identical across runs with the same seed",
           fmt("exit=(%d,%d) bytes=%zu identical=%d", WEXITSTATUS(r1), WEXITSTATUS(r2), a.size(),
               a == bb ? 1 : 0));
    fs::remove_all(tmp);
}

}  // namespace

int main() {
    criterion_1_exact_subcritical();
    criterion_2_envelope();
    criterion_3_D_independence();
    criterion_4_hardy_optimality();
    criterion_5_entropy_production();
    criterion_6_mass_conservation();
    criterion_7_comparison();
    criterion_8_rate_theorem();
    criterion_9_randomized_inequalities();
    criterion_10_determinism();
    if (g_failures) {
        std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all criteria passed\n");
    return 0;
}
