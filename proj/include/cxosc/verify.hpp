#pragma once

#include <string>
#include <vector>

#include "cxosc/potential.hpp"

namespace cxosc {

struct CheckResult {
    std::string suite;
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyOptions {
    /// a, b, c of the complex family; lambda is used by the binorm and
    /// continuity suites, the gram suite scans `lambdas`.
    PotentialParams params{kPi / 4.0, kSqrtPi / 2.0, 1.0, 1.0};
    std::vector<double> lambdas{0.5, 1.0, 2.0};
    double grid_step = 0.01;
    /// <= 0 selects the default window for each suite.
    double grid_extent = 0.0;
    /// Any of known_suites().
    std::vector<std::string> suites{"gram", "binorm", "continuity", "wigner", "limit", "consistent"};
    int workers = 1;
};

std::vector<std::string> known_suites();

/// Runs the selected suites; unknown suite names throw ArgumentError.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

} // namespace cxosc
