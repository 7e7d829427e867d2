#include "fade/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fade {

void ExperimentConfig::validate() const {
    if (!(m > 0.0 && m < 1.0)) throw std::domain_error("config: m must lie in (0,1)");
    if (d < 3) throw std::domain_error("config: d must be >= 3");
    if (!(D1 > 0.0 && D0 >= D1)) throw std::domain_error("config: need 0 < D1 <= D0");
    if (Dstar != 0.0 && !(Dstar >= D1 && Dstar <= D0))
        throw std::domain_error("config: Dstar must lie in [D1, D0] (or 0 for auto)");
    if (!(r_max >= 10.0)) throw std::domain_error("config: r_max must be >= 10");
    if (n < 64) throw std::domain_error("config: n must be >= 64");
    if (!(uniform_fraction > 0.0 && uniform_fraction < 1.0))
        throw std::domain_error("config: uniform_fraction must lie in (0,1)");
    if (samples < 1) throw std::domain_error("config: samples must be >= 1");
    if (refine < 1) throw std::domain_error("config: refine must be >= 1");
    if (!(perturb_amplitude > 0.0 && perturb_amplitude < 0.5))
        throw std::domain_error("config: perturb_amplitude must lie in (0, 0.5)");
    solver.validate();
}

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(where + ": cannot parse '" + s + "' as a number");
    }
}

long parse_int(const std::string& s, const std::string& where) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(where + ": cannot parse '" + s + "' as an integer");
    }
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    ExperimentConfig c;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = origin + ":" + std::to_string(lineno);
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = t.substr(1, t.size() - 2);
            if (section != "problem" && section != "grid" && section != "solver" &&
                section != "experiment")
                throw std::runtime_error(where + ": unknown section [" + section + "]");
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(where + ": expected key=value, got '" + t + "'");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        std::string skey = section + "." + key;

        if (skey == "problem.m") c.m = parse_double(val, where);
        else if (skey == "problem.d") c.d = static_cast<int>(parse_int(val, where));
        else if (skey == "problem.D0") c.D0 = parse_double(val, where);
        else if (skey == "problem.D1") c.D1 = parse_double(val, where);
        else if (skey == "problem.Dstar") c.Dstar = parse_double(val, where);
        else if (skey == "grid.r_max") c.r_max = parse_double(val, where);
        else if (skey == "grid.n") c.n = static_cast<int>(parse_int(val, where));
        else if (skey == "grid.r_uniform") c.r_uniform = parse_double(val, where);
        else if (skey == "grid.uniform_fraction") c.uniform_fraction = parse_double(val, where);
        else if (skey == "solver.dt") c.solver.dt = parse_double(val, where);
        else if (skey == "solver.t_end") c.solver.t_end = parse_double(val, where);
        else if (skey == "solver.newton_tol") c.solver.newton_tol = parse_double(val, where);
        else if (skey == "solver.newton_max_iter")
            c.solver.newton_max_iter = static_cast<int>(parse_int(val, where));
        else if (skey == "solver.theta") c.solver.theta = parse_double(val, where);
        else if (skey == "solver.diag_every")
            c.solver.diag_every = static_cast<int>(parse_int(val, where));
        else if (skey == "experiment.name") c.name = val;
        else if (skey == "experiment.out_dir") c.out_dir = val;
        else if (skey == "experiment.seed")
            c.seed = static_cast<std::uint64_t>(parse_int(val, where));
        else if (skey == "experiment.samples")
            c.samples = static_cast<int>(parse_int(val, where));
        else if (skey == "experiment.refine") c.refine = static_cast<int>(parse_int(val, where));
        else if (skey == "experiment.perturb_amplitude")
            c.perturb_amplitude = parse_double(val, where);
        else
            throw std::runtime_error(where + ": unknown key '" + key + "' in section [" +
                                     section + "]");
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path);
}

std::string dump_config(const ExperimentConfig& c) {
    std::ostringstream o;
    o << "[problem]\n";
    o << "m = " << fmt17(c.m) << "\n";
    o << "d = " << c.d << "\n";
    o << "D0 = " << fmt17(c.D0) << "\n";
    o << "D1 = " << fmt17(c.D1) << "\n";
    o << "Dstar = " << fmt17(c.Dstar) << "\n";
    o << "[grid]\n";
    o << "r_max = " << fmt17(c.r_max) << "\n";
    o << "n = " << c.n << "\n";
    o << "r_uniform = " << fmt17(c.r_uniform) << "\n";
    o << "uniform_fraction = " << fmt17(c.uniform_fraction) << "\n";
    o << "[solver]\n";
    o << "dt = " << fmt17(c.solver.dt) << "\n";
    o << "t_end = " << fmt17(c.solver.t_end) << "\n";
    o << "newton_tol = " << fmt17(c.solver.newton_tol) << "\n";
    o << "newton_max_iter = " << c.solver.newton_max_iter << "\n";
    o << "theta = " << fmt17(c.solver.theta) << "\n";
    o << "diag_every = " << c.solver.diag_every << "\n";
    o << "[experiment]\n";
    o << "name = " << c.name << "\n";
    o << "out_dir = " << c.out_dir << "\n";
    o << "seed = " << c.seed << "\n";
    o << "samples = " << c.samples << "\n";
    o << "refine = " << c.refine << "\n";
    o << "perturb_amplitude = " << fmt17(c.perturb_amplitude) << "\n";
    return o.str();
}

std::uint64_t config_hash(const ExperimentConfig& c) {
    std::string s = dump_config(c);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t Rng::next_u64() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

}  // namespace fade
