#pragma once

#include <utility>
#include <vector>

#include "siegel/linalg.hpp"

namespace siegel {

// A full-rank covolume-one lattice in R^n, stored as a validated basis.
// Immutable after construction; safe to share across threads.
struct Lattice {
    Mat basis; // columns generate the lattice; |det − 1| ≤ 1e-9

    int dim() const { return static_cast<int>(basis.cols()); }
};

// Validates and normalizes a basis into a Lattice. When |det M| is within
// 1e-6 of 1 the basis is silently rescaled by |det M|^{-1/n} to make the
// covolume exactly one; larger deviations require rescale = true, otherwise
// NotUnimodular is thrown. Singular input throws SingularBasis.
Lattice lattice_from_basis(const Mat& M, bool rescale = false);

// True iff gcd(|u_1|, ..., |u_n|) = 1. Primitivity is decided on integer
// coefficients, never on real coordinates, so it is exact and independent of
// the choice of basis. Throws ZeroVector for u = 0.
bool is_primitive(const IVec& u);

// All primitive lattice points v with ‖v‖₂ ≤ R (closed ball, 1e-9 tie
// slack), as real vectors. The basis is LLL-reduced before enumeration.
std::vector<Vec> primitive_points(const Lattice& L, double R);

// All nonzero lattice points with ‖v‖₂ ≤ R (no primitivity filter).
std::vector<Vec> nonzero_points(const Lattice& L, double R);

// Same sets, one representative per ±pair. Primitive points and nonzero
// points are closed under negation, so summing f(v) + f(−v) over pairs
// reproduces the full sums exactly (and cancels odd functions exactly).
std::vector<Vec> primitive_point_pairs(const Lattice& L, double R);
std::vector<Vec> nonzero_point_pairs(const Lattice& L, double R);

// Extends v ≠ 0 to a matrix g with first column exactly v and
// |det g − 1| ≤ 1e-9: Householder-extend v/‖v‖ to an orthonormal basis and
// scale the remaining n−1 columns by ‖v‖^{-1/(n-1)}. For v = e_1 the result
// is exactly the identity. Throws ZeroVector.
Mat complete_to_unimodular(const Vec& v);

} // namespace siegel
