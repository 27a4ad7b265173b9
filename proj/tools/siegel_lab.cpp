// siegel-lab: command-line driver for the lattice statistics checks.
//
//   siegel-lab run <config.json> [overrides]   run checks from a config file
//   siegel-lab preset <name> [overrides]       run a built-in configuration
//   siegel-lab list-checks                     list available checks
//
// Flags mirror config keys and win over the file. SIEGEL_LAB_WORKERS supplies
// a default worker count when --workers is absent. Exit status: 0 if every
// check passed, 2 if any check failed, 1 on configuration errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "siegel/config.hpp"
#include "siegel/errors.hpp"

namespace {

// One override slot per mirrored config key; `count` on the parsed subcommand
// decides whether the slot was set.
struct OverrideValues {
    int n = 0;
    std::uint64_t seed = 0;
    std::int64_t samples = 0;
    std::int64_t fiber_samples = 0;
    std::int64_t bias_p = 0;
    int workers = 0;
    std::vector<std::string> checks;
    std::vector<std::string> points;
    std::string function_json;
    std::string sampler_json;
    std::string output_dir;
    bool allow_tiny = false;
};

void add_override_flags(CLI::App* sub, OverrideValues& v) {
    sub->add_option("--n", v.n, "Ambient dimension");
    sub->add_option("--seed", v.seed, "Master random seed");
    sub->add_option("--samples", v.samples, "Lattice draws per check (N)");
    sub->add_option("--fiber-samples", v.fiber_samples,
                    "Fiber draws per evaluation point (M)");
    sub->add_option("--check", v.checks,
                    "Check to run (repeatable; replaces the config list)");
    sub->add_option("--function", v.function_json,
                    "Test function descriptor as inline JSON (replaces the "
                    "config functions)");
    sub->add_option("--point", v.points,
                    "Evaluation point as comma-separated coordinates "
                    "(repeatable; replaces config points/radii)");
    sub->add_option("--sampler", v.sampler_json,
                    "Sampler descriptor as inline JSON");
    sub->add_option("--bias-p", v.bias_p, "Comparison modulus for gm-bias");
    sub->add_option("--workers", v.workers, "Worker thread count");
    sub->add_option("--output-dir", v.output_dir, "Report output directory");
    sub->add_flag("--allow-tiny", v.allow_tiny,
                  "Permit sample budgets below 1000");
}

nlohmann::json parse_point(const std::string& text) {
    nlohmann::json coords = nlohmann::json::array();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double value = 0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            throw siegel::ConfigError("bad --point coordinate '" + item + "'");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
            ++used;
        if (used != item.size())
            throw siegel::ConfigError("bad --point coordinate '" + item + "'");
        coords.push_back(value);
    }
    if (coords.empty())
        throw siegel::ConfigError("--point needs at least one coordinate");
    return coords;
}

nlohmann::json parse_inline_json(const std::string& text, const char* what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw siegel::ConfigError(std::string("bad inline JSON for ") + what +
                                  ": " + e.what());
    }
}

void apply_overrides(nlohmann::json& j, const CLI::App* sub,
                     const OverrideValues& v) {
    if (sub->count("--n")) j["n"] = v.n;
    if (sub->count("--seed")) j["seed"] = v.seed;
    if (sub->count("--samples")) j["samples"] = v.samples;
    if (sub->count("--fiber-samples")) j["fiber_samples"] = v.fiber_samples;
    if (sub->count("--check")) j["checks"] = v.checks;
    if (sub->count("--function")) {
        j.erase("functions");
        j["function"] = parse_inline_json(v.function_json, "--function");
    }
    if (sub->count("--point")) {
        j.erase("radii");
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : v.points) pts.push_back(parse_point(p));
        j["points"] = pts;
    }
    if (sub->count("--sampler"))
        j["sampler"] = parse_inline_json(v.sampler_json, "--sampler");
    if (sub->count("--bias-p")) j["bias_p"] = v.bias_p;
    if (sub->count("--output-dir")) j["output_dir"] = v.output_dir;
    if (sub->count("--allow-tiny")) j["allow_tiny"] = true;

    // --workers beats SIEGEL_LAB_WORKERS beats the config file.
    if (sub->count("--workers")) {
        j["workers"] = v.workers;
    } else if (const char* env = std::getenv("SIEGEL_LAB_WORKERS")) {
        try {
            std::size_t used = 0;
            int w = std::stoi(env, &used);
            if (used != std::string(env).size() || w < 1)
                throw std::invalid_argument("bad value");
            j["workers"] = w;
        } catch (const std::exception&) {
            throw siegel::ConfigError(
                std::string("SIEGEL_LAB_WORKERS must be a positive integer, "
                            "got '") +
                env + "'");
        }
    }
}

const std::map<std::string, const char*>& preset_table() {
    static const std::map<std::string, const char*> presets = {
        {"quick", R"json({
  "n": 3,
  "seed": 7,
  "sampler": {"kind": "goldstein-mayer", "p": 100003},
  "functions": [
    {"type": "ball", "radius": 2.0},
    {"type": "odd-shell", "inner": 0.5, "outer": 2.0}
  ],
  "samples": 2000,
  "fiber_samples": 2000,
  "allow_tiny": false,
  "checks": ["mvt", "odd-null", "full-vs-primitive"],
  "output_dir": "quick-out"
})json"},
        {"paper-n3", R"json({
  "n": 3,
  "seed": 1,
  "sampler": {"kind": "goldstein-mayer", "p": 100003},
  "function": {"type": "ball", "radius": 2.0},
  "samples": 200000,
  "fiber_samples": 200000,
  "checks": ["mvt", "inversion"],
  "radii": [0.5, 1.0, 1.9, 2.1, 3.0],
  "output_dir": "paper-n3-out"
})json"},
        {"paper-n5", R"json({
  "n": 5,
  "seed": 1,
  "sampler": {"kind": "goldstein-mayer", "p": 100003},
  "function": {"type": "ball", "radius": 1.5},
  "samples": 200000,
  "checks": ["rogers", "norm-bound"],
  "output_dir": "paper-n5-out"
})json"},
    };
    return presets;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"siegel-lab: statistical checks for lattice point-count "
                 "transforms on random unimodular lattices"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset_name;
    OverrideValues values;

    CLI::App* run =
        app.add_subcommand("run", "Run checks from a JSON config file");
    run->add_option("config", config_path, "Path to the config JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    add_override_flags(run, values);

    CLI::App* preset =
        app.add_subcommand("preset", "Run a built-in configuration");
    preset->add_option("name", preset_name, "quick | paper-n3 | paper-n5")
        ->required();
    add_override_flags(preset, values);

    CLI::App* list =
        app.add_subcommand("list-checks", "List the available checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& [name, description] : siegel::known_checks())
                std::cout << name << "\n    " << description << "\n";
            return 0;
        }

        nlohmann::json j;
        const CLI::App* sub = nullptr;
        if (run->parsed()) {
            std::ifstream in(config_path);
            if (!in)
                throw siegel::ConfigError("cannot open config file '" +
                                          config_path + "'");
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw siegel::ConfigError("cannot parse '" + config_path +
                                          "': " + e.what());
            }
            sub = run;
        } else {
            auto it = preset_table().find(preset_name);
            if (it == preset_table().end()) {
                std::string names;
                for (const auto& [name, text] : preset_table())
                    names += (names.empty() ? "" : ", ") + name;
                throw siegel::ConfigError("unknown preset '" + preset_name +
                                          "' (available: " + names + ")");
            }
            j = nlohmann::json::parse(it->second);
            sub = preset;
        }

        apply_overrides(j, sub, values);
        siegel::ExperimentConfig config = siegel::ExperimentConfig::from_json(j);
        return siegel::run_experiment(config);
    } catch (const siegel::ConfigError& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
