#pragma once

#include <functional>
#include <optional>

#include "siegel/samplers.hpp"
#include "siegel/stats.hpp"
#include "siegel/test_function.hpp"

namespace siegel {

// ζ(n) via partial sums plus an integral sandwich on the tail, with
// guaranteed absolute error ≤ tol. Results for the default tolerance are
// cached per n.
double zeta(int n, double tol = 1e-12);

// Primitive Siegel transform: the exact finite sum of f over the primitive
// lattice points inside the support of f. Summation runs over ± pairs
// (f(v) + f(−v) per pair), so odd functions cancel exactly.
double siegel_transform(const TestFunction& f, const Lattice& L);

// Full Siegel transform: the sum over all nonzero lattice points.
double full_siegel_transform(const TestFunction& f, const Lattice& L);

// An evaluatable map Lattice → real, with an optional known mean over the
// lattice-space measure (used to subtract the mean term exactly).
struct LatticeFunctional {
    std::function<double(const Lattice&)> eval;
    std::optional<double> known_mean;

    static LatticeFunctional constant(double c);
    // φ = f̂; its known mean is exact_integral(f)/ζ(n) by the mean value
    // identity.
    static LatticeFunctional siegel_of(const TestFunction& f);
};

// Monte-Carlo estimate of the mean of φ over lattices containing v as a
// primitive point (the fiber measure normalized to a probability measure,
// i.e. the returned number estimates ζ(n)·φ̌(v)). M ≥ 100 draws from
// sample_lattice_containing(v); sample i uses the stream at
// base.index() + i, so results are schedule-independent. A caller may
// supply an alternative completion of v (g·e_1 = v, det 1) to probe
// invariance across coset representatives.
MCEstimate dual_transform_estimate(const LatticeFunctional& phi, const Vec& v,
                                   std::int64_t M, const SamplerSpec& spec,
                                   const RandomStream& base, int workers = 1,
                                   const Mat* completion_override = nullptr);

// Inversion estimator at the point v for even f:
//   ½ [ ζ(n)·φ̌(v) − mean of f̂ over lattice space ]
// with φ = f̂. The first term is the dual estimate above; the second is
// computed exactly as exact_integral(f)/ζ(n) instead of by a second
// Monte-Carlo pass (halves the variance, removes sampler bias from one
// term). Converges to f(v) away from the discontinuities of f. Throws
// OddFunction unless parity is even, BoundaryPoint if v is within `margin`
// of a discontinuity radius.
MCEstimate inversion_estimate(const TestFunction& f, const Vec& v,
                           std::int64_t M, const SamplerSpec& spec,
                           const RandomStream& base, int workers = 1,
                           double margin = 0.05);

} // namespace siegel
