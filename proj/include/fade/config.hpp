#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "fade/solver.hpp"

namespace fade {

/// Full experiment description parsed from a plain-text key=value file with
/// [section] headers. Unknown keys are rejected with line diagnostics.
struct ExperimentConfig {
    // [problem]
    double m = 0.5;
    int d = 3;
    double D0 = 2.0;
    double D1 = 0.5;
    double Dstar = 0.0;      ///< 0 = select by zero relative mass
    // [grid]
    double r_max = 1e3;
    int n = 2048;
    double r_uniform = 1.0;
    double uniform_fraction = 0.3;
    // [solver]
    SolverConfig solver;
    // [experiment]
    std::string name = "default";
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int samples = 200;
    int refine = 1;
    double perturb_amplitude = 0.02;

    void validate() const;
};

/// Parses a config file; throws std::runtime_error with file:line diagnostics.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Canonical key=value dump; parse(dump(c)) reproduces c exactly.
std::string dump_config(const ExperimentConfig& c);

/// FNV-1a hash of the canonical dump, for provenance lines in CSV output.
std::uint64_t config_hash(const ExperimentConfig& c);

/// Deterministic uniform doubles in [0,1) from a splitmix64 stream; stable
/// across platforms (no library distributions involved).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform();                          ///< [0, 1)
    double uniform(double lo, double hi);      ///< [lo, hi)
  private:
    std::uint64_t state_;
};

}  // namespace fade
