#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "fade/experiments.hpp"
#include "fade/rates.hpp"
#include "fade/spectral.hpp"
#include "fade/verify.hpp"

namespace py = pybind11;
using namespace fade;

namespace {

py::dict exponents_dict(const Exponents& e) {
    py::dict d;
    d["m"] = e.m;
    d["d"] = e.d;
    d["m_c"] = e.m_c;
    d["m_star"] = e.m_star;
    d["m_1"] = e.m_1;
    d["m_0"] = e.m_0;
    d["p_star"] = e.p_star;
    d["p_of_m"] = e.p_of_m;
    d["q_star"] = e.q_star;
    d["regime"] = regime_name(e.regime());
    return d;
}

py::dict spectral_dict(const SpectralResult& s) {
    py::dict d;
    d["lambda_est"] = s.lambda_est;
    d["lambda_err"] = s.lambda_err;
    d["C_est"] = s.C_est;
    d["C_err"] = s.C_err;
    d["C_exact"] = s.C_exact;
    d["K_eta"] = s.K_eta;
    d["eta"] = s.eta;
    d["lower_bound"] = s.lower_bound;
    d["upper_bound"] = s.upper_bound;
    d["D_spread"] = s.D_spread;
    d["method"] = s.method_tags;
    return d;
}

}  // namespace

PYBIND11_MODULE(_fade, mod) {
    mod.doc() = "Fast-diffusion asymptotics laboratory (C++ core)";

    mod.def(
        "exponents",
        [](double m, int d) { return exponents_dict(derive_exponents(m, d)); },
        py::arg("m"), py::arg("d"), "Critical exponents derived from (m, d).");

    mod.def(
        "barenblatt_profile",
        [](double m, int d, double D, double r) {
            return barenblatt_profile(D, derive_exponents(m, d), r);
        },
        py::arg("m"), py::arg("d"), py::arg("D"), py::arg("r"));

    mod.def(
        "scale_radius",
        [](double m, int d, double D, double T, double tau) {
            return scale_radius(ProfileParams{D, T, derive_exponents(m, d)}, tau);
        },
        py::arg("m"), py::arg("d"), py::arg("D"), py::arg("T"), py::arg("tau"));

    mod.def(
        "barenblatt_solution",
        [](double m, int d, double D, double T, double tau, double r) {
            return barenblatt_solution(ProfileParams{D, T, derive_exponents(m, d)}, tau, r);
        },
        py::arg("m"), py::arg("d"), py::arg("D"), py::arg("T"), py::arg("tau"), py::arg("r"));

    mod.def(
        "exact_gap_subcritical",
        [](double m, int d) { return exact_gap_subcritical(derive_exponents(m, d)); },
        py::arg("m"), py::arg("d"));

    mod.def("hardy_constant", &hardy_constant, py::arg("alpha"), py::arg("d"));
    mod.def("hardy_rayleigh_quotient", &hardy_rayleigh_quotient, py::arg("alpha"), py::arg("d"),
            py::arg("eps"));

    mod.def(
        "median_eta",
        [](double m, int d) { return median_eta(SpectralWeights{m, d}); },
        py::arg("m"), py::arg("d"));

    mod.def(
        "muckenhoupt_K",
        [](double zeta, double m, int d) { return muckenhoupt_K(zeta, SpectralWeights{m, d}); },
        py::arg("zeta"), py::arg("m"), py::arg("d"));

    mod.def(
        "gap_envelope",
        [](double m, int d) {
            GapEnvelope g = gap_envelope(derive_exponents(m, d));
            py::dict out;
            out["lower"] = g.lower;
            out["upper"] = g.upper;
            out["K_eta"] = g.K_eta;
            out["eta"] = g.eta;
            return out;
        },
        py::arg("m"), py::arg("d"));

    mod.def(
        "predicted_lambda",
        [](double m, int d, int refine) {
            return spectral_dict(predicted_lambda(derive_exponents(m, d), refine));
        },
        py::arg("m"), py::arg("d"), py::arg("refine") = 1);

    mod.def(
        "rayleigh_gap",
        [](double m, int d, double D, int refine) {
            Exponents e = derive_exponents(m, d);
            return spectral_dict(rayleigh_gap(e, D, spectral_grid(e, refine)));
        },
        py::arg("m"), py::arg("d"), py::arg("D") = 1.0, py::arg("refine") = 1);

    mod.def(
        "simulate",
        [](double m, int d, double D0, double D1, double r_max, int n, double dt, double t_end,
           int diag_every) {
            ExperimentConfig cfg;
            cfg.m = m;
            cfg.d = d;
            cfg.D0 = D0;
            cfg.D1 = D1;
            cfg.r_max = r_max;
            cfg.n = n;
            cfg.solver.dt = dt;
            cfg.solver.t_end = t_end;
            cfg.solver.diag_every = diag_every;
            cfg.solver.store_fields = false;
            Problem p = build_problem(cfg);
            Trajectory traj = simulate(p.w0, p.bounds, p.exps, cfg.solver);
            py::dict out;
            std::vector<double> t, F, I, El, Il, rm, wmin, wmax;
            for (const EntropyReport& r : traj.reports) {
                t.push_back(r.t);
                F.push_back(r.F);
                I.push_back(r.I);
                El.push_back(r.E_lin);
                Il.push_back(r.I_lin);
                rm.push_back(r.rel_mass);
                wmin.push_back(r.w_min);
                wmax.push_back(r.w_max);
            }
            out["t"] = t;
            out["F"] = F;
            out["I"] = I;
            out["E_lin"] = El;
            out["I_lin"] = Il;
            out["rel_mass"] = rm;
            out["w_min"] = wmin;
            out["w_max"] = wmax;
            out["Dstar"] = p.bounds.Dstar;
            out["W0"] = p.bounds.W0;
            out["W1"] = p.bounds.W1;
            return out;
        },
        py::arg("m") = 0.5, py::arg("d") = 3, py::arg("D0") = 2.0, py::arg("D1") = 0.5,
        py::arg("r_max") = 1e3, py::arg("n") = 512, py::arg("dt") = 2e-3, py::arg("t_end") = 1.0,
        py::arg("diag_every") = 25,
        "Runs the quotient-equation solver on the mass-balanced averaged datum.");

    mod.def(
        "verify",
        [](std::uint64_t seed, int samples) {
            ExperimentConfig cfg;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.n = 1024;
            std::vector<py::dict> out;
            for (const CheckResult& r : run_verification(cfg)) {
                py::dict d;
                d["name"] = r.name;
                d["instances"] = r.instances;
                d["worst_slack"] = r.worst_slack;
                d["pass"] = r.pass;
                out.push_back(d);
            }
            return out;
        },
        py::arg("seed") = 1, py::arg("samples") = 50);
}
