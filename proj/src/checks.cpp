#include "siegel/checks.hpp"

#include <charconv>
#include <chrono>
#include <cmath>

namespace siegel {

std::string format_double(double value) {
    char buf[32];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

nlohmann::json CheckReport::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["estimate"] = {{"mean", estimate.mean},
                     {"stderr", estimate.std_error},
                     {"count", estimate.count},
                     {"mom", estimate.mom}};
    j["target"] = target;
    j["target_provenance"] = target_provenance;
    j["zscore"] = zscore;
    j["passed"] = passed;
    // runtime_seconds is intentionally not serialized: reports.json must be
    // byte-identical across repeated runs and worker counts.
    return j;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// z-score of a reported center against a target; ±1e99 is a JSON-safe
// sentinel for "zero spread but off target".
double zscore_of(double center, double target, double se) {
    if (se > 0.0) {
        return (center - target) / se;
    }
    if (center == target) {
        return 0.0;
    }
    return center > target ? 1e99 : -1e99;
}

void require_sample_budget(std::int64_t N, const CheckSettings& s,
                           const char* what) {
    if (N < 2) {
        throw TooFewSamples(std::string(what) +
                            ": need at least 2 samples");
    }
    if (!s.allow_tiny && N < 1000) {
        throw TooFewSamples(std::string(what) +
                            ": need at least 10^3 samples (allow_tiny lifts "
                            "this for exploration)");
    }
}

void require_dim(const TestFunction& f, int n, const char* what) {
    if (f.dim() != n) {
        throw DimensionMismatch(std::string(what) +
                                ": function dimension does not match n");
    }
}

std::vector<double> transform_values(
    const TestFunction& f, int n, std::int64_t N, const SamplerSpec& spec,
    std::uint64_t seed, std::uint64_t index0, int workers) {
    spec.validate_for(n);
    return map_indexed(N, workers, [&](std::int64_t i) {
        RandomStream stream =
            derive_stream(seed, index0 + static_cast<std::uint64_t>(i));
        const Lattice L = sample_X(n, spec, stream);
        return siegel_transform(f, L);
    });
}

} // namespace

CheckReport mvt_check(const TestFunction& f, int n, std::int64_t N,
                      const SamplerSpec& spec, const RandomStream& stream,
                      const CheckSettings& settings) {
    const auto t0 = Clock::now();
    require_dim(f, n, "mvt_check");
    require_sample_budget(N, settings, "mvt_check");
    const auto values = transform_values(f, n, N, spec, stream.master_seed(),
                                         stream.index(), settings.workers);
    CheckReport r;
    r.name = "mvt";
    r.estimate = mc_mean(values);
    r.target = f.exact_integral() / zeta(n);
    r.target_provenance = "closed-form";
    r.zscore = zscore_of(r.estimate.mean, r.target, r.estimate.std_error);
    r.passed = std::abs(r.zscore) <= settings.z_max &&
               r.estimate.std_error <=
                   settings.rel_tol * std::max(std::abs(r.target), 1.0);
    r.runtime_seconds = seconds_since(t0);
    return r;
}

CheckReport rogers_check(const TestFunction& f1, const TestFunction& f2, int n,
                         std::int64_t N, const SamplerSpec& spec,
                         const RandomStream& stream,
                         const CheckSettings& settings) {
    const auto t0 = Clock::now();
    if (n < 3) {
        throw DimensionTooSmall(
            "rogers_check: the second-moment identity requires n >= 3");
    }
    require_dim(f1, n, "rogers_check");
    require_dim(f2, n, "rogers_check");
    require_sample_budget(N, settings, "rogers_check");
    spec.validate_for(n);
    const std::uint64_t seed = stream.master_seed();
    const std::uint64_t index0 = stream.index();
    const auto values = map_indexed(N, settings.workers, [&](std::int64_t i) {
        RandomStream s =
            derive_stream(seed, index0 + static_cast<std::uint64_t>(i));
        const Lattice L = sample_X(n, spec, s);
        return siegel_transform(f1, L) * siegel_transform(f2, L);
    });
    const double z_n = zeta(n);
    const double bracket = TestFunction::cross_integral(f1, f2) +
                           TestFunction::cross_integral(f1, f2.reflected());
    CheckReport r;
    r.name = "rogers";
    r.estimate = mc_mean(values);
    r.target = f1.exact_integral() * f2.exact_integral() / (z_n * z_n) +
               bracket / z_n;
    r.target_provenance = "closed-form";
    // The n = 3 fourth moment diverges; gate on the median-of-means with a
    // widened precision clause there.
    const double center = n == 3 ? r.estimate.mom : r.estimate.mean;
    const double rel =
        n == 3 ? std::max(settings.rel_tol, 0.05) : settings.rel_tol;
    r.zscore = zscore_of(center, r.target, r.estimate.std_error);
    r.passed = std::abs(r.zscore) <= settings.z_max &&
               r.estimate.std_error <= rel * std::max(std::abs(r.target), 1.0);
    r.runtime_seconds = seconds_since(t0);
    return r;
}

std::vector<CheckReport> inversion_check(const TestFunction& f,
                                         const std::vector<Vec>& points,
                                         std::int64_t M,
                                         const SamplerSpec& spec,
                                         const RandomStream& stream,
                                         const CheckSettings& settings) {
    if (points.empty()) {
        throw std::invalid_argument("inversion_check: no points given");
    }
    require_sample_budget(M, settings, "inversion_check");
    std::vector<CheckReport> out;
    out.reserve(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto t0 = Clock::now();
        const Vec& v = points[k];
        // Disjoint index blocks per point keep the draws independent.
        const RandomStream base = derive_stream(
            stream.master_seed(),
            stream.index() + static_cast<std::uint64_t>(k) *
                                 static_cast<std::uint64_t>(M));
        const MCEstimate est =
            inversion_estimate(f, v, M, spec, base, settings.workers);
        CheckReport r;
        r.name = "inversion(r=" + format_double(v.norm()) + ")";
        r.estimate = est;
        r.target = f.evaluate(v);
        r.target_provenance = "paper-identity";
        r.zscore = zscore_of(est.mean, r.target, est.std_error);
        r.passed = std::abs(est.mean - r.target) <=
                   std::max(settings.z_max * est.std_error,
                            settings.inversion_abs_floor);
        r.runtime_seconds = seconds_since(t0);
        out.push_back(std::move(r));
    }
    return out;
}

CheckReport norm_bound_check(const TestFunction& f, int n, std::int64_t N,
                             const SamplerSpec& spec,
                             const RandomStream& stream,
                             const CheckSettings& settings) {
    const auto t0 = Clock::now();
    if (n < 3) {
        throw DimensionTooSmall(
            "norm_bound_check: the norm identity requires n >= 3");
    }
    if (f.parity() != TestFunction::Parity::Even) {
        throw OddFunction("norm_bound_check: f must be even");
    }
    if (f.is_zero()) {
        throw std::invalid_argument("norm_bound_check: f must be nonzero");
    }
    require_dim(f, n, "norm_bound_check");
    require_sample_budget(N, settings, "norm_bound_check");
    spec.validate_for(n);
    const std::uint64_t seed = stream.master_seed();
    const std::uint64_t index0 = stream.index();
    const auto values = map_indexed(N, settings.workers, [&](std::int64_t i) {
        RandomStream s =
            derive_stream(seed, index0 + static_cast<std::uint64_t>(i));
        const double v = siegel_transform(f, sample_X(n, spec, s));
        return v * v;
    });
    const double z_n = zeta(n);
    const double mean_term = f.exact_integral() / z_n;
    const double floor = 2.0 / z_n * f.l2_norm_squared();
    CheckReport r;
    r.name = "norm-bound";
    r.estimate = mc_mean(values);
    r.target = mean_term * mean_term + floor;
    r.target_provenance = "paper-identity";
    const double center = n == 3 ? r.estimate.mom : r.estimate.mean;
    const double rel =
        n == 3 ? std::max(settings.rel_tol, 0.05) : settings.rel_tol;
    r.zscore = zscore_of(center, r.target, r.estimate.std_error);
    r.passed = std::abs(r.zscore) <= settings.z_max &&
               r.estimate.std_error <=
                   rel * std::max(std::abs(r.target), 1.0) &&
               center >= floor;
    r.runtime_seconds = seconds_since(t0);
    return r;
}

CheckReport full_vs_primitive_check(const TestFunction& f, int n,
                                    std::int64_t N, const SamplerSpec& spec,
                                    const RandomStream& stream,
                                    const CheckSettings& settings) {
    const auto t0 = Clock::now();
    if (!f.certified_nonnegative()) {
        throw NegativeFunction(
            "full_vs_primitive_check: f must be certified nonnegative");
    }
    if (f.parity() != TestFunction::Parity::Even) {
        throw OddFunction("full_vs_primitive_check: f must be even");
    }
    require_dim(f, n, "full_vs_primitive_check");
    require_sample_budget(N, settings, "full_vs_primitive_check");
    spec.validate_for(n);
    const std::uint64_t seed = stream.master_seed();
    const std::uint64_t index0 = stream.index();
    const auto pairs =
        map_indexed_pairs(N, settings.workers, [&](std::int64_t i) {
            RandomStream s =
                derive_stream(seed, index0 + static_cast<std::uint64_t>(i));
            const Lattice L = sample_X(n, spec, s);
            const double full = full_siegel_transform(f, L);
            const double prim = siegel_transform(f, L);
            return std::array<double, 2>{full * full, prim * prim};
        });
    std::vector<double> diffs(pairs.size());
    double min_diff = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        diffs[i] = pairs[i][0] - pairs[i][1];
        min_diff = std::min(min_diff, diffs[i]);
        scale = std::max(scale, pairs[i][0]);
    }
    CheckReport r;
    r.name = "full-vs-primitive";
    r.estimate = mc_mean(diffs);
    r.target = 0.0; // the inequality bound: paired differences must be ≥ 0
    r.target_provenance = "paper-identity";
    r.zscore = zscore_of(r.estimate.mean, r.target, r.estimate.std_error);
    r.passed = min_diff >= -1e-12 * scale;
    r.runtime_seconds = seconds_since(t0);
    return r;
}

CheckReport odd_null_check(const TestFunction& f_odd, std::int64_t trials,
                           const SamplerSpec& spec, const RandomStream& stream,
                           const CheckSettings& settings) {
    const auto t0 = Clock::now();
    if (f_odd.parity() != TestFunction::Parity::Odd) {
        throw NotOdd("odd_null_check: f must be odd");
    }
    CheckReport r;
    r.name = "odd-null";
    r.target = 0.0;
    if (trials == 0) {
        r.target_provenance = "degenerate-vacuous";
        r.estimate = MCEstimate{};
        r.zscore = 0.0;
        r.passed = true;
        r.runtime_seconds = seconds_since(t0);
        return r;
    }
    const int n = f_odd.dim();
    spec.validate_for(n);
    const auto values =
        transform_values(f_odd, n, trials, spec, stream.master_seed(),
                         stream.index(), settings.workers);
    double max_abs = 0.0;
    for (double v : values) {
        max_abs = std::max(max_abs, std::abs(v));
    }
    if (trials >= 2) {
        r.estimate = mc_mean(values);
    } else {
        r.estimate = MCEstimate{values[0], 0.0, 1, values[0]};
    }
    r.target_provenance = "paper-identity";
    r.zscore = zscore_of(r.estimate.mean, 0.0, r.estimate.std_error);
    r.passed = max_abs <= 1e-12;
    r.runtime_seconds = seconds_since(t0);
    return r;
}

CheckReport gm_bias_check(const TestFunction& f, int n, std::int64_t N,
                          std::int64_t p1, std::int64_t p2,
                          std::uint64_t master_seed,
                          const CheckSettings& settings) {
    const auto t0 = Clock::now();
    require_dim(f, n, "gm_bias_check");
    require_sample_budget(N, settings, "gm_bias_check");
    // The p1 arm uses the same stream family as the mvt check, so its
    // estimate coincides with mvt's when both run in one experiment.
    const std::uint64_t seed1 = derive_seed(master_seed, hash_tag("mvt"));
    const std::uint64_t seed2 = derive_seed(master_seed, hash_tag("gm-bias"));
    const MCEstimate e1 =
        mc_mean(transform_values(f, n, N, SamplerSpec::goldstein_mayer(p1),
                                 seed1, 0, settings.workers));
    const MCEstimate e2 =
        mc_mean(transform_values(f, n, N, SamplerSpec::goldstein_mayer(p2),
                                 seed2, 0, settings.workers));
    CheckReport r;
    r.name = "gm-bias";
    r.estimate.mean = e1.mean - e2.mean;
    r.estimate.std_error = std::hypot(e1.std_error, e2.std_error);
    r.estimate.count = N;
    r.estimate.mom = e1.mom - e2.mom;
    r.target = 0.0;
    r.target_provenance = "derived-oracle";
    r.zscore = zscore_of(r.estimate.mean, 0.0, r.estimate.std_error);
    // Difference check: combined-SE gate only (an absolute precision clause
    // around a zero target would be unsatisfiable by design).
    r.passed = std::abs(r.zscore) <= settings.z_max;
    r.runtime_seconds = seconds_since(t0);
    return r;
}

namespace {

// A generic determinant-one element of the stabilizer of e_1: an upper
// shear row and a rotation block.
Mat random_e1_stabilizer(int n, RandomStream& stream) {
    Mat h = Mat::Identity(n, n);
    for (int j = 1; j < n; ++j) {
        h(0, j) = 2.0 * stream.next_double() - 1.0;
    }
    for (int i = 1; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double phi = 2.0 * M_PI * stream.next_double();
            Mat g = Mat::Identity(n, n);
            g(i, i) = std::cos(phi);
            g(j, j) = std::cos(phi);
            g(i, j) = -std::sin(phi);
            g(j, i) = std::sin(phi);
            h = h * g;
        }
    }
    return h;
}

} // namespace

CheckReport coset_invariance_check(const TestFunction& f, const Vec& v,
                                   std::int64_t M, const SamplerSpec& spec,
                                   const RandomStream& stream,
                                   const CheckSettings& settings) {
    const auto t0 = Clock::now();
    require_sample_budget(M, settings, "coset_invariance_check");
    const int n = static_cast<int>(v.size());
    require_dim(f, n, "coset_invariance_check");
    const LatticeFunctional phi = LatticeFunctional::siegel_of(f);
    const std::uint64_t s = stream.master_seed();
    const RandomStream base1 = derive_stream(derive_seed(s, 0xA), 0);
    const RandomStream base2 = derive_stream(derive_seed(s, 0xB), 0);
    RandomStream h_stream = derive_stream(derive_seed(s, 0xC), 0);

    const MCEstimate e1 =
        dual_transform_estimate(phi, v, M, spec, base1, settings.workers);
    const Mat g2 =
        complete_to_unimodular(v) * random_e1_stabilizer(n, h_stream);
    const MCEstimate e2 = dual_transform_estimate(
        phi, v, M, spec, base2, settings.workers, &g2);

    CheckReport r;
    r.name = "coset-invariance";
    r.estimate.mean = e1.mean - e2.mean;
    r.estimate.std_error = std::hypot(e1.std_error, e2.std_error);
    r.estimate.count = M;
    r.estimate.mom = e1.mom - e2.mom;
    r.target = 0.0;
    r.target_provenance = "paper-identity";
    r.zscore = zscore_of(r.estimate.mean, 0.0, r.estimate.std_error);
    r.passed = std::abs(r.zscore) <= settings.z_max;
    r.runtime_seconds = seconds_since(t0);
    return r;
}

} // namespace siegel
