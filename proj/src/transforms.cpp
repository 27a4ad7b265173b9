#include "siegel/transforms.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace siegel {

namespace {

double zeta_uncached(int n, double tol) {
    // Σ_{k>K} k^{-n} lies between ∫_{K+1}^∞ x^{-n} dx and ∫_K^∞ x^{-n} dx;
    // take the midpoint and double K until the half-width is ≤ tol.
    std::int64_t K = 16;
    for (;;) {
        const double nm1 = static_cast<double>(n - 1);
        const double upper =
            std::pow(static_cast<double>(K), -(nm1)) / nm1;
        const double lower =
            std::pow(static_cast<double>(K + 1), -(nm1)) / nm1;
        if (0.5 * (upper - lower) <= tol) {
            double partial = 0.0;
            double comp = 0.0;
            for (std::int64_t k = K; k >= 1; --k) {
                const double v =
                    std::pow(static_cast<double>(k), -static_cast<double>(n));
                const double t = partial + v;
                if (std::abs(partial) >= std::abs(v)) {
                    comp += (partial - t) + v;
                } else {
                    comp += (v - t) + partial;
                }
                partial = t;
            }
            return partial + comp + 0.5 * (upper + lower);
        }
        K *= 2;
    }
}

} // namespace

double zeta(int n, double tol) {
    if (n < 2) {
        throw std::invalid_argument("zeta: need n >= 2");
    }
    if (tol != 1e-12) {
        return zeta_uncached(n, tol);
    }
    static std::mutex mutex;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, zeta_uncached(n, tol)).first;
    }
    return it->second;
}

namespace {

double pair_sum(const TestFunction& f, const std::vector<Vec>& pairs) {
    double sum = 0.0;
    double comp = 0.0;
    for (const Vec& v : pairs) {
        const double term = f.evaluate(v) + f.evaluate(-v);
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

void check_dims(const TestFunction& f, const Lattice& L, const char* op) {
    if (f.dim() != L.dim()) {
        throw DimensionMismatch(std::string(op) + ": function dimension " +
                                std::to_string(f.dim()) +
                                " vs lattice dimension " +
                                std::to_string(L.dim()));
    }
}

} // namespace

double siegel_transform(const TestFunction& f, const Lattice& L) {
    check_dims(f, L, "siegel_transform");
    const double R = f.support_radius();
    if (R <= 0.0) {
        return 0.0;
    }
    return pair_sum(f, primitive_point_pairs(L, R));
}

double full_siegel_transform(const TestFunction& f, const Lattice& L) {
    check_dims(f, L, "full_siegel_transform");
    const double R = f.support_radius();
    if (R <= 0.0) {
        return 0.0;
    }
    return pair_sum(f, nonzero_point_pairs(L, R));
}

LatticeFunctional LatticeFunctional::constant(double c) {
    return {[c](const Lattice&) { return c; }, c};
}

LatticeFunctional LatticeFunctional::siegel_of(const TestFunction& f) {
    return {[f](const Lattice& L) { return siegel_transform(f, L); },
            f.exact_integral() / zeta(f.dim())};
}

MCEstimate dual_transform_estimate(const LatticeFunctional& phi, const Vec& v,
                                   std::int64_t M, const SamplerSpec& spec,
                                   const RandomStream& base, int workers,
                                   const Mat* completion_override) {
    const int n = static_cast<int>(v.size());
    if (n < 3) {
        throw DimensionTooSmall(
            "dual_transform_estimate: need n >= 3, got n = " +
            std::to_string(n));
    }
    if (v.norm() < 1e-12) {
        throw ZeroVector("dual_transform_estimate: v must be nonzero");
    }
    if (M < 100) {
        throw TooFewSamples(
            "dual_transform_estimate: need at least 100 draws");
    }
    // One fixed completion for all draws (deterministic and cheap).
    const Mat g =
        completion_override ? *completion_override : complete_to_unimodular(v);
    const std::uint64_t seed = base.master_seed();
    const std::uint64_t index0 = base.index();
    const auto values = map_indexed(M, workers, [&](std::int64_t i) {
        RandomStream stream =
            derive_stream(seed, index0 + static_cast<std::uint64_t>(i));
        const Lattice L = sample_lattice_containing(v, spec, stream, &g);
        return phi.eval(L);
    });
    return mc_mean(values);
}

MCEstimate inversion_estimate(const TestFunction& f, const Vec& v, std::int64_t M,
                           const SamplerSpec& spec, const RandomStream& base,
                           int workers, double margin) {
    if (f.parity() != TestFunction::Parity::Even) {
        throw OddFunction(
            "inversion_estimate: the inversion identity requires an even "
            "function");
    }
    if (f.distance_to_discontinuity(v) < margin) {
        throw BoundaryPoint(
            "inversion_estimate: v is within the margin of a discontinuity of "
            "f; the inversion identity is almost-everywhere only");
    }
    const double mean_term = f.exact_integral() / zeta(f.dim());
    const MCEstimate dual = dual_transform_estimate(
        LatticeFunctional::siegel_of(f), v, M, spec, base, workers);
    MCEstimate out;
    out.mean = 0.5 * (dual.mean - mean_term);
    out.std_error = 0.5 * dual.std_error;
    out.count = dual.count;
    out.mom = 0.5 * (dual.mom - mean_term);
    return out;
}

} // namespace siegel
