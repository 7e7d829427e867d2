#pragma once

#include <string>
#include <vector>

#include "fade/config.hpp"

namespace fade {

/// One invariant suite outcome: worst slack is the largest violation found
/// (negative slack = margin left, positive = failure).
struct CheckResult {
    std::string name;
    int instances = 0;
    double worst_slack = 0.0;
    bool pass = false;
};

/// Runs the fast invariant suites (profile laws, quadrature orders, the
/// randomized functional-inequality families, rate bookkeeping). Seeded and
/// deterministic; does not run time integrations.
std::vector<CheckResult> run_verification(const ExperimentConfig& cfg);

}  // namespace fade
