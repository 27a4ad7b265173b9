#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "siegel/checks.hpp"

namespace siegel {

// A batch experiment: which checks to run, at which dimension, with which
// sampler, functions, sample budgets and output location.
struct ExperimentConfig {
    int n = 3;
    std::uint64_t seed = 1;
    SamplerSpec sampler = SamplerSpec::goldstein_mayer(100003);
    std::int64_t bias_p = 1000003; // comparison modulus for gm-bias
    std::vector<TestFunction> functions;
    std::int64_t samples = 200000;       // N, lattice-space draws
    std::int64_t fiber_samples = 200000; // M, fiber draws per point
    std::vector<std::string> checks;
    std::vector<Vec> points; // inversion evaluation points
    std::string output_dir = ".";
    int workers = 1;
    bool allow_tiny = false;
    double z_max = 4.0;
    double rel_tol = 0.02;

    // Parses and validates a config object. Accepts "function" (single
    // descriptor) or "functions" (array), and "points" (vectors) or "radii"
    // (shorthand for r·e_1). Unknown keys are rejected. Throws ConfigError.
    static ExperimentConfig from_json(const nlohmann::json& j);

    // Cross-field validation (also called by from_json). Throws ConfigError.
    void validate() const;
};

// The check names run_experiment understands, in canonical order.
const std::vector<std::pair<std::string, std::string>>& known_checks();

// Runs every configured check, prints one pass/fail line per check, writes
// <output_dir>/reports.json (array of CheckReport records) and — when an
// inversion check ran — <output_dir>/profile.csv with columns
// radius,estimate,stderr,target. Returns 0 iff all checks passed, else 2.
// Configuration problems throw ConfigError (CLI exit code 1).
int run_experiment(const ExperimentConfig& config);

} // namespace siegel
