#include "fade/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fade/profiles.hpp"

namespace fade {

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw std::domain_error("SolverConfig: dt must be positive");
    if (!(t_end > 0.0)) throw std::domain_error("SolverConfig: t_end must be positive");
    if (!(newton_tol > 0.0)) throw std::domain_error("SolverConfig: newton_tol must be positive");
    if (newton_max_iter < 1) throw std::domain_error("SolverConfig: newton_max_iter must be >= 1");
    if (!(theta >= 0.5 && theta <= 1.0))
        throw std::domain_error("SolverConfig: theta must lie in [1/2, 1]");
    if (diag_every < 1) throw std::domain_error("SolverConfig: diag_every must be >= 1");
}

namespace {

// Discrete operator data for one (grid, m, d, Dstar) problem.
struct Scheme {
    const Exponents& e;
    double Dstar;
    std::vector<double> r;      // nodes
    std::vector<double> V;      // V_{D*} at nodes
    std::vector<double> Vm1;    // V^{m-1} = D* + b r^2
    std::vector<double> T;      // face transmissibility r_f^{d-1} / dr
    std::vector<double> mass;   // cell measure V r^{d-1} dr_cell
    int n;

    Scheme(const RadialGrid& g, const Exponents& exps, double Ds) : e(exps), Dstar(Ds) {
        n = g.size();
        r = g.nodes();
        V.resize(r.size());
        Vm1.resize(r.size());
        for (int i = 0; i < n; ++i) {
            V[i] = barenblatt_profile(Dstar, e, r[i]);
            Vm1[i] = Dstar + e.profile_b() * r[i] * r[i];
        }
        T.resize(r.size() - 1);
        for (int i = 0; i + 1 < n; ++i) {
            double rf = 0.5 * (r[i] + r[i + 1]);
            T[i] = std::pow(rf, e.d - 1) / (r[i + 1] - r[i]);
        }
        mass.resize(r.size());
        for (int i = 0; i < n; ++i) {
            double lo = (i == 0) ? 0.0 : 0.5 * (r[i - 1] + r[i]);
            double hi = (i == n - 1) ? r[n - 1] : 0.5 * (r[i] + r[i + 1]);
            double dcell = hi - lo;
            if (i == 0)
                mass[i] = V[i] * std::pow(hi, e.d) / e.d;  // exact cell volume at the origin
            else
                mass[i] = V[i] * std::pow(r[i], e.d - 1) * dcell;
        }
    }

    // flux potential P(w, r) = (m/(m-1)) (w^{m-1} - 1) V^{m-1}
    double P(double w, int i) const {
        double m = e.m;
        return m / (m - 1.0) * std::expm1((m - 1.0) * std::log(w)) * Vm1[i];
    }
    double dP(double w, int i) const {
        return e.m * std::pow(w, e.m - 2.0) * Vm1[i];
    }

    // Diagnostics on the solver's own cell measure (the scheme conserves the
    // cell-sum mass exactly up to the outer boundary flux, and the entropy
    // identity closes against these sums, not against an oracle quadrature).
    EntropyReport report(double t, const RadialField& w, const SandwichBounds& b) const {
        EntropyReport rep;
        rep.t = t;
        const double m = e.m;
        const double om = w.grid().omega_d();
        RadialField phi(w.grid_ptr());
        RadialField glin(w.grid_ptr());
        for (int i = 0; i < n; ++i) {
            phi[i] = std::expm1((m - 1.0) * std::log(w[i])) * Vm1[i];
            glin[i] = (w[i] - 1.0) * Vm1[i];
        }
        RadialField dphi = radial_gradient(phi);
        RadialField dg = radial_gradient(glin);
        double F = 0.0, I = 0.0, El = 0.0, Il = 0.0, M = 0.0;
        for (int i = 0; i < n; ++i) {
            double q = mass[i] / V[i];  // r^{d-1} dr cell weight
            double s = w[i] - 1.0;
            double ent;
            if (std::fabs(s) < 1e-4) {
                double c2 = 0.5, c3 = (m - 2.0) / 6.0, c4 = (m - 2.0) * (m - 3.0) / 24.0;
                ent = s * s * (c2 + s * (c3 + s * c4));
            } else {
                ent = (s - std::expm1(m * std::log1p(s)) / m) / (1.0 - m);
            }
            F += ent * std::pow(V[i], m) * q;
            I += dphi[i] * dphi[i] * w[i] * V[i] * q;
            El += 0.5 * glin[i] * glin[i] * std::pow(V[i], 2.0 - m) * q;
            Il += dg[i] * dg[i] * V[i] * q;
            M += s * mass[i];
        }
        rep.F = om * F;
        rep.I = om * I * m / ((m - 1.0) * (m - 1.0));
        rep.E_lin = om * El;
        rep.I_lin = om * Il * m;
        rep.rel_mass = om * M;
        rep.w_min = w.min();
        rep.w_max = w.max();
        (void)b;
        return rep;
    }

    // face fluxes F_{i+1/2}, i = 0..n-2
    void fluxes(const std::vector<double>& w, std::vector<double>& F) const {
        for (int i = 0; i + 1 < n; ++i) {
            double a = w[i] * V[i], b = w[i + 1] * V[i + 1];
            double mob = 2.0 * a * b / (a + b);
            F[i] = T[i] * mob * (P(w[i + 1], i + 1) - P(w[i], i));
        }
    }

    // net flux into each interior cell; the clamped last node gets 0
    void net_flux(const std::vector<double>& w, std::vector<double>& G,
                  std::vector<double>& F) const {
        fluxes(w, F);
        G[0] = F[0];
        for (int i = 1; i + 1 < n; ++i) G[i] = F[i] - F[i - 1];
        G[n - 1] = 0.0;
    }
};

}  // namespace

Trajectory simulate(const RadialField& w0, const SandwichBounds& bounds, const Exponents& exps,
                    const SolverConfig& cfg) {
    cfg.validate();
    const RadialGrid& g = w0.grid();
    Scheme s(g, exps, bounds.Dstar);
    const int n = s.n;

    std::vector<double> w(w0.values());
    for (double x : w)
        if (!(x > 0.0)) throw std::domain_error("simulate: w0 must be positive");
    w[n - 1] = 1.0;  // far-field Dirichlet

    // drift envelope: initial data may echo a sandwich violation, but the run
    // must not widen it (discrete comparison principle)
    double env_lo = std::min(bounds.W0, *std::min_element(w.begin(), w.end()));
    double env_hi = std::max(bounds.W1, *std::max_element(w.begin(), w.end()));
    double env_tol = 1e-8 * (1.0 + env_hi - env_lo);

    Trajectory traj;
    auto record = [&](double t) {
        RadialField wf(w0.grid_ptr(), std::vector<double>(w));
        traj.times.push_back(t);
        traj.reports.push_back(s.report(t, wf, bounds));
        if (cfg.store_fields) traj.fields.push_back(std::move(wf));
    };
    record(0.0);

    std::vector<double> G0(n), G(n), F(n - 1), R(n), wn(n), wtry(n);
    std::vector<double> lo(n), di(n), up(n), cp(n), dp(n);

    auto residual_norm = [&](const std::vector<double>& wprev, const std::vector<double>& cand,
                             double dt, std::vector<double>& Rout) {
        s.net_flux(cand, G, F);
        double nr = 0.0;
        for (int i = 0; i < n; ++i) {
            Rout[i] = (cand[i] - wprev[i]) * s.mass[i] -
                      dt * (cfg.theta * G[i] + (1.0 - cfg.theta) * G0[i]);
            if (i == n - 1) Rout[i] = 0.0;
            nr = std::max(nr, std::fabs(Rout[i]) / s.mass[i]);
        }
        return nr;
    };

    auto newton_step = [&](const std::vector<double>& wprev, double dt,
                           std::vector<double>& out) -> bool {
        s.net_flux(wprev, G0, F);
        out = wprev;
        double nr = residual_norm(wprev, out, dt, R);
        for (int it = 0; it < cfg.newton_max_iter; ++it) {
            if (nr < cfg.newton_tol) return true;

            // tridiagonal Jacobian of R
            for (int i = 0; i < n; ++i) {
                di[i] = s.mass[i];
                lo[i] = up[i] = 0.0;
            }
            for (int i = 0; i + 1 < n; ++i) {
                double a = out[i] * s.V[i], b = out[i + 1] * s.V[i + 1];
                double sum = a + b;
                double mob = 2.0 * a * b / sum;
                double dmob_a = 2.0 * b * b / (sum * sum);
                double dmob_b = 2.0 * a * a / (sum * sum);
                double dPl = s.dP(out[i], i), dPr = s.dP(out[i + 1], i + 1);
                double dl = s.T[i] * (dmob_a * s.V[i] * (s.P(out[i + 1], i + 1) - s.P(out[i], i)) -
                                      mob * dPl);
                double dr = s.T[i] * (dmob_b * s.V[i + 1] *
                                          (s.P(out[i + 1], i + 1) - s.P(out[i], i)) +
                                      mob * dPr);
                double c = dt * cfg.theta;
                // face i contributes +F to cell i, -F to cell i+1
                di[i] -= c * dl;
                up[i] = -c * dr;
                if (i + 1 < n - 1) {
                    lo[i + 1] = c * dl;
                    di[i + 1] += c * dr;
                }
            }
            di[n - 1] = 1.0;
            lo[n - 1] = 0.0;

            // Thomas solve di*dx = -R
            cp[0] = up[0] / di[0];
            dp[0] = -R[0] / di[0];
            for (int i = 1; i < n; ++i) {
                double den = di[i] - lo[i] * cp[i - 1];
                if (den == 0.0) return false;
                cp[i] = (i + 1 < n) ? up[i] / den : 0.0;
                dp[i] = (-R[i] - lo[i] * dp[i - 1]) / den;
            }
            wn[n - 1] = out[n - 1] + dp[n - 1];
            for (int i = n - 2; i >= 0; --i) wn[i] = out[i] + (dp[i] - cp[i] * (wn[i + 1] - out[i + 1]));

            // converged in state space: the residual may sit at its round-off
            // floor slightly above newton_tol while the update is already nil
            double ndx = 0.0;
            for (int i = 0; i < n; ++i)
                ndx = std::max(ndx, std::fabs(wn[i] - out[i]) / (1.0 + std::fabs(out[i])));
            if (ndx < cfg.newton_tol) {
                bool pos = true;
                for (int i = 0; i < n; ++i)
                    if (!(wn[i] > 0.0)) pos = false;
                if (pos) out = wn;
                return true;
            }

            // line search: positivity first, then prefer a residual decrease;
            // when no damped step decreases the max-norm (possible far from
            // the root) the positivity-damped full step is taken anyway
            double lam_pos = 1.0;
            for (int tries = 0; tries < 40; ++tries) {
                bool ok = true;
                for (int i = 0; i < n; ++i) {
                    double cand = out[i] + lam_pos * (wn[i] - out[i]);
                    if (!(cand > 0.0)) { ok = false; break; }
                }
                if (ok) break;
                lam_pos *= 0.5;
            }
            double lam = lam_pos;
            double nr_new = nr;
            bool improved = false;
            for (int tries = 0; tries < 8; ++tries) {
                for (int i = 0; i < n; ++i) wtry[i] = out[i] + lam * (wn[i] - out[i]);
                nr_new = residual_norm(wprev, wtry, dt, R);
                if (nr_new < nr) { improved = true; break; }
                lam *= 0.5;
            }
            if (!improved) {
                for (int i = 0; i < n; ++i) wtry[i] = out[i] + lam_pos * (wn[i] - out[i]);
                nr_new = residual_norm(wprev, wtry, dt, R);
            }
            out.swap(wtry);
            nr = nr_new;
        }
        return nr < cfg.newton_tol;
    };

    double t = 0.0;
    long step = 0;
    std::vector<double> wtmp(n);
    while (t < cfg.t_end - 1e-12 * cfg.t_end) {
        double dt = std::min(cfg.dt, cfg.t_end - t);
        if (!newton_step(w, dt, wtmp)) {
            // fallback: two half steps
            std::vector<double> whalf(n);
            if (!newton_step(w, 0.5 * dt, whalf) || !newton_step(whalf, 0.5 * dt, wtmp))
                throw convergence_error("simulate: Newton stagnated at t = " + std::to_string(t) +
                                        " even after dt halving; reduce dt");
        }
        w = wtmp;
        t += dt;
        ++step;
        for (int i = 0; i < n; ++i)
            if (w[i] < env_lo - env_tol || w[i] > env_hi + env_tol)
                throw sandwich_error("simulate: comparison sandwich violated at t = " +
                                     std::to_string(t));
        if (step % cfg.diag_every == 0 || t >= cfg.t_end - 1e-12 * cfg.t_end) record(t);
    }
    return traj;
}

std::vector<double> entropy_production_residual(const Trajectory& traj, double floor) {
    if (traj.reports.size() < 2)
        throw std::domain_error("entropy_production_residual: need >= 2 diagnostic reports");
    std::vector<double> res;
    res.reserve(traj.reports.size() - 1);
    for (size_t k = 0; k + 1 < traj.reports.size(); ++k) {
        const EntropyReport& a = traj.reports[k];
        const EntropyReport& b = traj.reports[k + 1];
        double intI = 0.5 * (a.I + b.I) * (b.t - a.t);
        res.push_back(std::fabs(b.F - a.F + intI) / std::max(intI, floor));
    }
    return res;
}

double sandwich_check(const Trajectory& traj, const SandwichBounds& bounds) {
    double worst = 0.0;
    for (const RadialField& w : traj.fields)
        for (int i = 0; i < w.size(); ++i)
            worst = std::max({worst, bounds.W0 - w[i], w[i] - bounds.W1});
    return std::max(worst, 0.0);
}

double mass_drift(const Trajectory& traj) {
    if (traj.reports.empty()) throw std::domain_error("mass_drift: empty trajectory");
    double m0 = traj.reports.front().rel_mass;
    double worst = 0.0;
    for (const EntropyReport& r : traj.reports) worst = std::max(worst, std::fabs(r.rel_mass - m0));
    return worst;
}

}  // namespace fade
