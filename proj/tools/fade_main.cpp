// fade: numerical laboratory for fast-diffusion asymptotics.
//
// Subcommands: profile | gap | simulate | rates | verify
// Exit codes: 0 pass, 1 check failure, 2 usage/config error, 3 non-convergence.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fade/csv.hpp"
#include "fade/errors.hpp"
#include "fade/experiments.hpp"
#include "fade/rates.hpp"
#include "fade/spectral.hpp"
#include "fade/verify.hpp"

namespace {

using namespace fade;

struct Args {
    std::string command;
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    bool dump_config = false;
};

int usage() {
    std::cerr << "usage: fade profile|gap|simulate|rates|verify --config PATH"
                 " [--out DIR] [--seed N] [--dump-config]\n";
    return 2;
}

std::ofstream open_out(const ExperimentConfig& cfg, const std::string& file) {
    std::filesystem::create_directories(cfg.out_dir);
    std::filesystem::path p = std::filesystem::path(cfg.out_dir) / file;
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot open output file " + p.string());
    return out;
}

void provenance(CsvWriter& w, const ExperimentConfig& cfg, const std::string& what) {
    std::ostringstream h;
    h << std::hex << config_hash(cfg);
    w.comment("fade " + what);
    w.comment("config_hash " + h.str());
    std::istringstream dump(dump_config(cfg));
    std::string line;
    while (std::getline(dump, line)) w.comment("cfg " + line);
}

int cmd_profile(const ExperimentConfig& cfg) {
    Exponents e = derive_exponents(cfg.m, cfg.d);
    GridPtr grid = make_grid(cfg);

    auto exps_out = open_out(cfg, cfg.name + "_exponents.csv");
    CsvWriter we(exps_out);
    provenance(we, cfg, "profile exponents");
    we.header({"m", "d", "m_c", "m_star", "m_1", "m_0", "p_star", "p_of_m", "q_star"});
    we.row({e.m, static_cast<double>(e.d), e.m_c, e.m_star, e.m_1, e.m_0, e.p_star, e.p_of_m,
            e.q_star});

    auto out = open_out(cfg, cfg.name + "_profile.csv");
    CsvWriter w(out);
    provenance(w, cfg, "profile");
    w.header({"r", "V_D0", "V_D1", "V_Dstar"});
    double Ds = (cfg.Dstar > 0.0) ? cfg.Dstar : 0.5 * (cfg.D0 + cfg.D1);
    for (int i = 0; i < grid->size(); ++i) {
        double r = grid->node(i);
        w.row({r, barenblatt_profile(cfg.D0, e, r), barenblatt_profile(cfg.D1, e, r),
               barenblatt_profile(Ds, e, r)});
    }
    return 0;
}

int cmd_gap(const ExperimentConfig& cfg) {
    Exponents e = derive_exponents(cfg.m, cfg.d);
    auto out = open_out(cfg, cfg.name + "_gap.csv");
    CsvWriter w(out);
    provenance(w, cfg, "gap");
    w.header({"m", "d", "D", "lambda_est", "lambda_err", "C_est", "C_err", "C_exact", "K_eta",
              "eta", "lower", "upper", "D_spread", "method"});
    int rc = 0;
    for (double D : {0.5, 1.0, 2.0}) {
        SpectralResult s = rayleigh_gap(e, D, spectral_grid(e, cfg.refine));
        auto opt = [](const std::optional<double>& v) {
            return v ? CsvWriter::format(*v) : std::string("nan");
        };
        w.row_mixed({CsvWriter::format(e.m), std::to_string(e.d), CsvWriter::format(D),
                     CsvWriter::format(s.lambda_est), CsvWriter::format(s.lambda_err),
                     CsvWriter::format(s.C_est), CsvWriter::format(s.C_err), opt(s.C_exact),
                     opt(s.K_eta), opt(s.eta), opt(s.lower_bound), opt(s.upper_bound),
                     CsvWriter::format(s.D_spread), s.method_tags});
        if (s.lower_bound && s.C_est + s.C_err < *s.lower_bound) rc = 1;
        if (s.upper_bound && s.C_est - s.C_err > *s.upper_bound) rc = 1;
    }
    return rc;
}

int cmd_simulate(const ExperimentConfig& cfg) {
    Problem p = build_problem(cfg);
    Trajectory traj = simulate(p.w0, p.bounds, p.exps, cfg.solver);
    auto out = open_out(cfg, cfg.name + "_trajectory.csv");
    CsvWriter w(out);
    provenance(w, cfg, "simulate");
    w.comment("Dstar " + CsvWriter::format(p.bounds.Dstar));
    w.header({"t", "F", "I", "E_lin", "I_lin", "rel_mass", "w_min", "w_max"});
    for (const EntropyReport& r : traj.reports)
        w.row({r.t, r.F, r.I, r.E_lin, r.I_lin, r.rel_mass, r.w_min, r.w_max});
    return 0;
}

int cmd_rates(const ExperimentConfig& cfg) {
    Exponents e = derive_exponents(cfg.m, cfg.d);
    SpectralResult sp = predicted_lambda(e, cfg.refine);

    // mode-seeded small-perturbation run measuring the entropy decay rate
    GridPtr grid = make_grid(cfg);
    double Ds = (cfg.Dstar > 0.0) ? cfg.Dstar : 1.0;
    SandwichBounds nb = SandwichBounds::make(Ds / std::pow(1.0 - cfg.perturb_amplitude, 1.0 - e.m),
                                             Ds / std::pow(1.0 + cfg.perturb_amplitude, 1.0 - e.m),
                                             Ds, e);
    RadialField w0 = slowest_mode_perturbation(e, Ds, grid, cfg.perturb_amplitude);
    Trajectory traj = simulate(w0, nb, e, cfg.solver);

    std::vector<double> ts, Fs;
    for (const EntropyReport& r : traj.reports) {
        ts.push_back(r.t);
        Fs.push_back(r.F);
    }
    auto [lo, hi] = default_fit_window(traj);
    RateFit fit = fit_exponential(ts, Fs, lo, hi);
    RatePrediction pred = predict_rates(e, sp, nb);

    auto out = open_out(cfg, cfg.name + "_rates.csv");
    CsvWriter w(out);
    provenance(w, cfg, "rates");
    w.header({"lambda", "rate_F_predicted", "fitted_rate", "rel_mismatch", "fit_residual",
              "window_lo", "window_hi", "rate_C0", "rate_C1", "relerr_rate_p_d", "pass"});
    double fitted = -fit.slope;
    double mism = std::fabs(fitted - pred.rate_F) / pred.rate_F;
    bool pass = mism <= 0.15;
    w.row({pred.lambda, pred.rate_F, fitted, mism, fit.residual, fit.t_lo, fit.t_hi,
           pred.rate_Cj(0), pred.rate_Cj(1), pred.rate_relerr(e.d), pass ? 1.0 : 0.0});
    return pass ? 0 : 1;
}

int cmd_verify(const ExperimentConfig& cfg) {
    std::vector<CheckResult> results = run_verification(cfg);
    auto out = open_out(cfg, cfg.name + "_verify.csv");
    CsvWriter w(out);
    provenance(w, cfg, "verify");
    w.header({"suite", "instances", "worst_slack", "pass"});
    bool all = true;
    for (const CheckResult& r : results) {
        w.row_mixed({r.name, std::to_string(r.instances), CsvWriter::format(r.worst_slack),
                     r.pass ? "1" : "0"});
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " instances=" << r.instances
                  << " worst_slack=" << CsvWriter::format(r.worst_slack) << "\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Args a;
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) return usage();
    a.command = args[0];
    for (size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) a.config_path = args[++i];
        else if (args[i] == "--out" && i + 1 < args.size()) a.out_dir = args[++i];
        else if (args[i] == "--seed" && i + 1 < args.size()) a.seed = std::stoull(args[++i]);
        else if (args[i] == "--dump-config") a.dump_config = true;
        else return usage();
    }
    if (a.config_path.empty()) return usage();

    ExperimentConfig cfg;
    try {
        cfg = load_config(a.config_path);
        if (!a.out_dir.empty()) cfg.out_dir = a.out_dir;
        if (a.seed) cfg.seed = *a.seed;
    } catch (const std::exception& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    }

    if (a.dump_config) {
        std::cout << dump_config(cfg);
        return 0;
    }

    try {
        if (a.command == "profile") return cmd_profile(cfg);
        if (a.command == "gap") return cmd_gap(cfg);
        if (a.command == "simulate") return cmd_simulate(cfg);
        if (a.command == "rates") return cmd_rates(cfg);
        if (a.command == "verify") return cmd_verify(cfg);
        return usage();
    } catch (const convergence_error& ex) {
        std::cerr << "non-convergence: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
