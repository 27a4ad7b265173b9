#include "siegel/config.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "siegel/errors.hpp"
#include "siegel/random.hpp"

namespace siegel {

namespace {

const TestFunction* first_even(const std::vector<TestFunction>& fs) {
    for (const auto& f : fs)
        if (f.parity() == TestFunction::Parity::Even && !f.is_zero()) return &f;
    return nullptr;
}

// Second nonzero even function if present, otherwise falls back to `first`
// (a single function correlates with itself).
const TestFunction* second_even_or(const std::vector<TestFunction>& fs,
                                   const TestFunction* first) {
    bool seen_first = false;
    for (const auto& f : fs) {
        if (f.parity() != TestFunction::Parity::Even || f.is_zero()) continue;
        if (!seen_first) {
            seen_first = true;
            continue;
        }
        return &f;
    }
    return first;
}

const TestFunction* first_odd(const std::vector<TestFunction>& fs) {
    for (const auto& f : fs)
        if (f.parity() == TestFunction::Parity::Odd) return &f;
    return nullptr;
}

bool is_known_check(const std::string& name) {
    for (const auto& [known, desc] : known_checks())
        if (known == name) return true;
    return false;
}

std::int64_t require_int(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer())
        throw ConfigError("config key '" + key + "' must be an integer");
    return v.get<std::int64_t>();
}

std::uint64_t require_u64(const nlohmann::json& v, const std::string& key) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ConfigError("config key '" + key + "' must be a nonnegative integer");
}

double require_num(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number())
        throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

bool require_bool(const nlohmann::json& v, const std::string& key) {
    if (!v.is_boolean())
        throw ConfigError("config key '" + key + "' must be a boolean");
    return v.get<bool>();
}

std::string require_str(const nlohmann::json& v, const std::string& key) {
    if (!v.is_string())
        throw ConfigError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

void print_report(const CheckReport& r) {
    std::ostringstream os;
    os << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": estimate "
       << r.estimate.mean;
    if (r.estimate.std_error > 0) os << " +/- " << r.estimate.std_error;
    os << ", target " << r.target << " (" << r.target_provenance << "), z "
       << r.zscore << ", N " << r.estimate.count;
    os.precision(3);
    os << ", " << r.runtime_seconds << " s";
    std::cout << os.str() << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

const std::vector<std::pair<std::string, std::string>>& known_checks() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"mvt",
         "sample mean of the primitive-vector transform vs its exact ensemble "
         "mean"},
        {"rogers",
         "second moment of the transform vs the exact product/correlation "
         "formula (n >= 3)"},
        {"inversion",
         "recover pointwise values of an even function from fiber averages of "
         "its transform"},
        {"norm-bound",
         "L2 identity for the transform mean square, including the variance "
         "floor (n >= 3)"},
        {"full-vs-primitive",
         "the all-vectors transform dominates the primitive-vectors transform "
         "pointwise"},
        {"odd-null",
         "odd functions are annihilated exactly by the symmetrized transform"},
        {"gm-bias",
         "index-p ensemble means for two different moduli agree within noise"},
        {"coset-invariance",
         "fiber averages do not depend on the choice of unimodular completion "
         "of the base point"},
    };
    return table;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> allowed = {
        "n",      "seed",          "sampler",    "bias_p",  "function",
        "functions", "samples",    "fiber_samples", "checks", "points",
        "radii",  "output_dir",    "workers",    "allow_tiny", "z_max",
        "rel_tol"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (allowed.count(it.key()) == 0)
            throw ConfigError("unknown config key '" + it.key() + "'");

    ExperimentConfig c;
    try {
        if (j.contains("n")) c.n = static_cast<int>(require_int(j.at("n"), "n"));
        if (j.contains("seed")) c.seed = require_u64(j.at("seed"), "seed");
        if (j.contains("sampler")) {
            try {
                c.sampler = SamplerSpec::from_json(j.at("sampler"));
            } catch (const ConfigError&) {
                throw;
            } catch (const Error& e) {
                throw ConfigError(std::string("sampler: ") + e.what());
            }
        }
        if (j.contains("bias_p"))
            c.bias_p = require_int(j.at("bias_p"), "bias_p");
        if (j.contains("function") && j.contains("functions"))
            throw ConfigError("give either 'function' or 'functions', not both");
        if (j.contains("function"))
            c.functions.push_back(TestFunction::from_json(j.at("function"), c.n));
        if (j.contains("functions")) {
            if (!j.at("functions").is_array())
                throw ConfigError("'functions' must be an array");
            for (const auto& fj : j.at("functions"))
                c.functions.push_back(TestFunction::from_json(fj, c.n));
        }
        if (j.contains("samples"))
            c.samples = require_int(j.at("samples"), "samples");
        if (j.contains("fiber_samples"))
            c.fiber_samples = require_int(j.at("fiber_samples"), "fiber_samples");
        if (j.contains("checks")) {
            if (!j.at("checks").is_array())
                throw ConfigError("'checks' must be an array of check names");
            for (const auto& cj : j.at("checks"))
                c.checks.push_back(require_str(cj, "checks[]"));
        }
        if (j.contains("points") && j.contains("radii"))
            throw ConfigError("give either 'points' or 'radii', not both");
        if (j.contains("points")) {
            if (!j.at("points").is_array())
                throw ConfigError("'points' must be an array of coordinate arrays");
            for (const auto& pj : j.at("points")) {
                if (!pj.is_array() || static_cast<int>(pj.size()) != c.n)
                    throw ConfigError(
                        "each point must be an array of exactly n coordinates");
                Vec v(c.n);
                for (int i = 0; i < c.n; ++i)
                    v(i) = require_num(pj.at(i), "points[][]");
                c.points.push_back(std::move(v));
            }
        }
        if (j.contains("radii")) {
            if (!j.at("radii").is_array())
                throw ConfigError("'radii' must be an array of numbers");
            for (const auto& rj : j.at("radii")) {
                double r = require_num(rj, "radii[]");
                if (!(r > 0))
                    throw ConfigError("radii entries must be positive");
                Vec v = Vec::Zero(c.n);
                v(0) = r;
                c.points.push_back(std::move(v));
            }
        }
        if (j.contains("output_dir"))
            c.output_dir = require_str(j.at("output_dir"), "output_dir");
        if (j.contains("workers"))
            c.workers = static_cast<int>(require_int(j.at("workers"), "workers"));
        if (j.contains("allow_tiny"))
            c.allow_tiny = require_bool(j.at("allow_tiny"), "allow_tiny");
        if (j.contains("z_max")) c.z_max = require_num(j.at("z_max"), "z_max");
        if (j.contains("rel_tol"))
            c.rel_tol = require_num(j.at("rel_tol"), "rel_tol");
    } catch (const ConfigError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    c.validate();
    return c;
}

void ExperimentConfig::validate() const {
    if (n < 2)
        throw ConfigError("n must be at least 2 (got " + std::to_string(n) + ")");
    if (checks.empty()) throw ConfigError("no checks configured");
    if (functions.empty())
        throw ConfigError("at least one test function is required");
    if (samples < 2 || fiber_samples < 2)
        throw ConfigError("sample budgets must be at least 2");
    if (!allow_tiny && (samples < 1000 || fiber_samples < 1000))
        throw ConfigError(
            "sample budgets below 1000 are statistically meaningless; set "
            "allow_tiny to override");
    try {
        sampler.validate_for(n);
    } catch (const Error& e) {
        throw ConfigError(std::string("sampler: ") + e.what());
    }
    if (workers < 1) throw ConfigError("workers must be at least 1");
    if (!(z_max > 0) || !(rel_tol > 0))
        throw ConfigError("z_max and rel_tol must be positive");
    if (output_dir.empty()) throw ConfigError("output_dir must be nonempty");
    for (const auto& v : points) {
        if (static_cast<int>(v.size()) != n)
            throw ConfigError("every point must have exactly n coordinates");
        if (v.norm() < 1e-12)
            throw ConfigError("points must be nonzero vectors");
    }

    const TestFunction* even = first_even(functions);
    const TestFunction* odd = first_odd(functions);
    for (const auto& name : checks) {
        if (!is_known_check(name))
            throw ConfigError("unknown check '" + name +
                              "' (see `siegel-lab list-checks`)");
        if (name != "odd-null" && even == nullptr)
            throw ConfigError("check '" + name +
                              "' needs a nonzero even test function");
        if (name == "odd-null" && odd == nullptr)
            throw ConfigError("check 'odd-null' needs an odd test function");
        if ((name == "rogers" || name == "norm-bound") && n < 3)
            throw ConfigError("check '" + name +
                              "' is only defined for n >= 3; the second-moment "
                              "formula degenerates at n = 2");
        if ((name == "inversion" || name == "coset-invariance") && n < 3)
            throw ConfigError("check '" + name +
                              "' needs n >= 3 (fiber sampling requires an "
                              "(n-1)-dimensional base lattice)");
        if (name == "inversion" && points.empty())
            throw ConfigError(
                "check 'inversion' needs evaluation points ('points' or "
                "'radii')");
        if (name == "gm-bias") {
            if (sampler.kind != SamplerSpec::Kind::GoldsteinMayer)
                throw ConfigError(
                    "check 'gm-bias' requires the goldstein-mayer sampler");
            if (bias_p < 101 || !is_prime(bias_p))
                throw ConfigError("bias_p must be a prime >= 101");
        }
        if (name == "inversion" && even != nullptr) {
            for (const auto& v : points) {
                if (even->distance_to_discontinuity(v) < 0.05) {
                    std::ostringstream os;
                    os << "inversion point with |v| = " << v.norm()
                       << " lies within 0.05 of a discontinuity of the test "
                          "function; move it off the boundary";
                    throw ConfigError(os.str());
                }
            }
        }
    }
}

int run_experiment(const ExperimentConfig& config) {
    config.validate();

    CheckSettings settings;
    settings.z_max = config.z_max;
    settings.rel_tol = config.rel_tol;
    settings.workers = config.workers;
    settings.allow_tiny = config.allow_tiny;

    const TestFunction* even = first_even(config.functions);
    const TestFunction* f2 = second_even_or(config.functions, even);
    const TestFunction* odd = first_odd(config.functions);

    std::vector<CheckReport> reports;
    // (radius, index into `reports`) rows for profile.csv, one per inversion
    // evaluation point, in run order.
    std::vector<std::pair<double, std::size_t>> inversion_rows;

    for (const auto& name : config.checks) {
        RandomStream stream = derive_stream(derive_seed(config.seed, hash_tag(name)), 0);
        auto t0 = std::chrono::steady_clock::now();
        if (name == "inversion") {
            std::vector<CheckReport> rs = inversion_check(
                *even, config.points, config.fiber_samples, config.sampler,
                stream, settings);
            double per_point = seconds_since(t0) / static_cast<double>(rs.size());
            for (std::size_t k = 0; k < rs.size(); ++k) {
                rs[k].runtime_seconds = per_point;
                inversion_rows.emplace_back(config.points[k].norm(),
                                            reports.size());
                reports.push_back(std::move(rs[k]));
                print_report(reports.back());
            }
            continue;
        }

        CheckReport report;
        if (name == "mvt") {
            report = mvt_check(*even, config.n, config.samples, config.sampler,
                               stream, settings);
        } else if (name == "rogers") {
            report = rogers_check(*even, *f2, config.n, config.samples,
                                  config.sampler, stream, settings);
        } else if (name == "norm-bound") {
            report = norm_bound_check(*even, config.n, config.samples,
                                      config.sampler, stream, settings);
        } else if (name == "full-vs-primitive") {
            report = full_vs_primitive_check(*even, config.n, config.samples,
                                             config.sampler, stream, settings);
        } else if (name == "odd-null") {
            report = odd_null_check(*odd, config.samples, config.sampler,
                                    stream, settings);
        } else if (name == "gm-bias") {
            report = gm_bias_check(*even, config.n, config.samples,
                                   config.sampler.p, config.bias_p, config.seed,
                                   settings);
        } else if (name == "coset-invariance") {
            Vec v = config.points.empty() ? Vec(Vec::Unit(config.n, 0))
                                          : config.points.front();
            report = coset_invariance_check(*even, v, config.fiber_samples,
                                            config.sampler, stream, settings);
        } else {
            throw ConfigError("unknown check '" + name + "'");
        }
        report.runtime_seconds = seconds_since(t0);
        reports.push_back(std::move(report));
        print_report(reports.back());
    }

    namespace fs = std::filesystem;
    fs::path dir(config.output_dir);
    fs::create_directories(dir);

    {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(r.to_json());
        std::ofstream out(dir / "reports.json",
                          std::ios::out | std::ios::binary | std::ios::trunc);
        out << arr.dump(2) << "\n";
        if (!out) throw Error("failed to write reports.json");
    }
    if (!inversion_rows.empty()) {
        std::ofstream out(dir / "profile.csv",
                          std::ios::out | std::ios::binary | std::ios::trunc);
        out << "radius,estimate,stderr,target\n";
        for (const auto& [radius, idx] : inversion_rows) {
            const CheckReport& r = reports[idx];
            out << format_double(radius) << "," << format_double(r.estimate.mean)
                << "," << format_double(r.estimate.std_error) << ","
                << format_double(r.target) << "\n";
        }
        if (!out) throw Error("failed to write profile.csv");
    }

    std::size_t passed = static_cast<std::size_t>(std::count_if(
        reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; }));
    std::cout << passed << "/" << reports.size() << " checks passed; reports in "
              << (dir / "reports.json").string() << std::endl;
    return passed == reports.size() ? 0 : 2;
}

} // namespace siegel
