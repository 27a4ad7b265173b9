#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "siegel/transforms.hpp"

namespace siegel {

// Tolerances and execution knobs shared by all checks. z_max = 4 with
// rel_tol = 2% keeps the spurious-failure probability of a correct build
// far below 10^-3 per check while still catching sign/normalization errors.
struct CheckSettings {
    double z_max = 4.0;
    double rel_tol = 0.02;          // stderr precision gate, fraction of target
    double inversion_abs_floor = 0.02; // |estimate − target| floor for inversion
    int workers = 1;
    bool allow_tiny = false; // lifts the N, M ≥ 10^3 requirement (tests only)
};

// One theorem-verification record. runtime_seconds is reported on stdout
// only; it is deliberately excluded from JSON serialization so that
// reports.json is byte-identical across repeated and parallel runs.
struct CheckReport {
    std::string name;
    MCEstimate estimate;
    double target = 0.0;
    // "closed-form", "paper-identity", "derived-oracle", or
    // "degenerate-vacuous" for a vacuous pass (e.g. zero trials).
    std::string target_provenance;
    double zscore = 0.0;
    bool passed = false;
    double runtime_seconds = 0.0;

    nlohmann::json to_json() const;
};

// Mean value check: the average of f̂ over lattice-space samples against
// exact_integral(f)/ζ(n). Passes iff |z| ≤ z_max and the standard error is
// at most rel_tol·max(|target|, 1).
CheckReport mvt_check(const TestFunction& f, int n, std::int64_t N,
                      const SamplerSpec& spec, const RandomStream& stream,
                      const CheckSettings& settings = {});

// Second-moment (inner product) check: the average of f̂₁f̂₂ against
//   ζ(n)^{-2}(∫f₁)(∫f₂) + ζ(n)^{-1}∫f₁(z)[f₂(z) + f₂(−z)] dz,
// cross-terms in closed form. Valid for n ≥ 3 only (DimensionTooSmall for
// n = 2). At n = 3 the fourth moment backing the standard error diverges,
// so the reported center is the median-of-means and the precision gate
// widens to 5%.
CheckReport rogers_check(const TestFunction& f1, const TestFunction& f2, int n,
                         std::int64_t N, const SamplerSpec& spec,
                         const RandomStream& stream,
                         const CheckSettings& settings = {});

// Inversion profile: one report per point v, comparing the inversion
// estimator against f(v). Passes iff |estimate − f(v)| ≤
// max(z_max·SE, inversion_abs_floor).
std::vector<CheckReport> inversion_check(const TestFunction& f,
                                         const std::vector<Vec>& points,
                                         std::int64_t M,
                                         const SamplerSpec& spec,
                                         const RandomStream& stream,
                                         const CheckSettings& settings = {});

// Injectivity floor: estimates the second moment of f̂ and checks it against
// the exact norm identity (ζ^{-1}∫f)² + (2/ζ)‖f‖₂², additionally asserting
// the estimate stays above the (2/ζ)‖f‖₂² floor that drives injectivity.
CheckReport norm_bound_check(const TestFunction& f, int n, std::int64_t N,
                             const SamplerSpec& spec,
                             const RandomStream& stream,
                             const CheckSettings& settings = {});

// Paired comparison of the full and primitive transforms on the same
// samples: for nonnegative even f, f̃ ≥ f̂ ≥ 0 pointwise, so the check
// demands f̃² − f̂² ≥ 0 for every sample (a deterministic inequality, not a
// statistical one). The reported estimate is the mean paired difference.
CheckReport full_vs_primitive_check(const TestFunction& f, int n,
                                    std::int64_t N, const SamplerSpec& spec,
                                    const RandomStream& stream,
                                    const CheckSettings& settings = {});

// Annihilation of odd functions: f̂ must vanish exactly (paired ±
// cancellation) on every trial lattice. trials = 0 yields a vacuous pass
// flagged by target_provenance = "degenerate-vacuous".
CheckReport odd_null_check(const TestFunction& f_odd, std::int64_t trials,
                           const SamplerSpec& spec, const RandomStream& stream,
                           const CheckSettings& settings = {});

// Sampler self-consistency: mean-value estimates under Goldstein–Mayer
// moduli p1 and p2 must agree within z_max combined standard errors. The p1
// arm derives its randomness exactly as the mvt check does, so when both
// checks run in one experiment the p1 numbers coincide. Takes the
// experiment master seed (not a derived stream) for that reason.
CheckReport gm_bias_check(const TestFunction& f, int n, std::int64_t N,
                          std::int64_t p1, std::int64_t p2,
                          std::uint64_t master_seed,
                          const CheckSettings& settings = {});

// Well-definedness across coset representatives: fiber-mean estimates of f̂
// at v through two different completions of v must agree within z_max
// combined standard errors.
CheckReport coset_invariance_check(const TestFunction& f, const Vec& v,
                                   std::int64_t M, const SamplerSpec& spec,
                                   const RandomStream& stream,
                                   const CheckSettings& settings = {});

// Shortest round-trip decimal form of a double (also used for CSV output).
std::string format_double(double value);

} // namespace siegel
