#pragma once

#include <cstdint>

#include <json.hpp>

#include "siegel/lattice.hpp"
#include "siegel/random.hpp"

namespace siegel {

// Which approximation of the Haar probability measure on the space of
// covolume-one lattices is in force.
struct SamplerSpec {
    enum class Kind { ExactX2, GoldsteinMayer };
    Kind kind = Kind::GoldsteinMayer;
    std::int64_t p = 100003; // Goldstein–Mayer modulus

    static SamplerSpec exact_x2();
    static SamplerSpec goldstein_mayer(std::int64_t p);

    // Throws SpecMismatch / InvalidPrime when the spec cannot drive a
    // dimension-n draw (exact-X2 needs n = 2; GM needs a prime p ≥ 101).
    void validate_for(int n) const;

    // {"kind":"exact-X2"} | {"kind":"goldstein-mayer","p":100003}
    static SamplerSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

bool is_prime(std::int64_t p);

// Exact sampler for n = 2: draws z = x + iy from the hyperbolic density
// y^{-2} on the standard fundamental domain {|x| ≤ 1/2, |z| ≥ 1} by
// rejection from the strip {|x| ≤ 1/2, y ≥ √3/2}, applies a uniform
// rotation in [0, π), and returns the covolume-one basis
// y^{-1/2}·[(1,0), (x,y)] (as columns) rotated by that angle.
Lattice sample_X2(RandomStream& stream);

// Goldstein–Mayer index-p ensemble: a_2,...,a_n uniform in {0,...,p−1}
// define the sublattice v₁ ≡ a₂v₂ + ... + a_nv_n (mod p) of Z^n with basis
// columns (p,0,...,0), (a_j, e_j); the basis is rescaled by p^{-1/n} to
// covolume one and LLL-reduced. Equidistributes toward Haar as p → ∞.
Lattice sample_GM(int n, std::int64_t p, RandomStream& stream);

// The unscaled integer Goldstein–Mayer basis for given coefficients
// (determinant p); exposed so tests can check its Hermite normal form.
Mat gm_integer_basis(int n, std::int64_t p,
                     const std::vector<std::int64_t>& a);

// Dispatches to sample_X2 or sample_GM according to the spec.
Lattice sample_X(int n, const SamplerSpec& spec, RandomStream& stream);

// Exact sampler for the fiber of lattices containing e_1 as a primitive
// point, carrying its natural probability measure: draw a covolume-one
// lattice basis B̄ in R^{n−1} (exact-X2 when n−1 = 2, otherwise per spec),
// draw s uniform in [0,1)^{n−1}, and return the basis with columns e_1 and
// (⟨s, b̄_j⟩, b̄_j). The uniform s realizes a uniform character on the
// quotient torus, so for n = 3 the fiber draw is exact. Throws
// DimensionTooSmall for n < 3.
Lattice sample_H_fiber(int n, const SamplerSpec& spec, RandomStream& stream);

// Fiber sampler over a general base point: lattices containing v as a
// primitive point, via g = complete_to_unimodular(v) applied to an e_1-fiber
// draw. A caller may override the completion g (any matrix with g·e_1 = v
// and det 1) to probe well-definedness across coset representatives.
Lattice sample_lattice_containing(const Vec& v, const SamplerSpec& spec,
                                  RandomStream& stream,
                                  const Mat* completion_override = nullptr);

} // namespace siegel
