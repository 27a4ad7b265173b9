#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "siegel/errors.hpp"

namespace siegel {

// Columns are basis vectors (unitless coordinates in R^n).
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
// Integer coefficient vectors of lattice points relative to a basis.
using IVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Determinant via full-pivot LU; returns 0.0 for (numerically) singular
// input — callers decide how to react.
double determinant(const Mat& M);

struct GramSchmidtResult {
    Mat ortho; // columns b*_i, pairwise orthogonal
    Mat mu;    // lower triangular; b_i = b*_i + Σ_{j<i} mu(i,j) b*_j
};

// Classical Gram–Schmidt. Throws SingularBasis if some ‖b*_i‖ < 1e-12.
GramSchmidtResult gram_schmidt(const Mat& B);

// LLL reduction (floating-point, textbook schoolbook variant adequate for
// n ≤ ~8 well-scaled bases). Output spans the same lattice as the input.
// Requires 0.25 < delta < 1.
Mat lll_reduce(const Mat& B, double delta = 0.75);

struct LLLResult {
    Mat basis;      // reduced basis
    IMat transform; // unimodular integer U with basis = B·U
};

// Same as lll_reduce but also returns the integer change of basis, which
// tests use for exact same-lattice verification.
LLLResult lll_reduce_with_transform(const Mat& B, double delta = 0.75);

enum class EnumMode {
    Full, // all u with 0 < ‖Bu‖ ≤ R (+ tie slack)
    Half  // one representative per ±pair (outermost nonzero coefficient > 0)
};

// Fincke–Pohst enumeration of {u ∈ Z^n \ {0} : ‖Bu‖₂ ≤ R + 1e-9} as integer
// coefficient vectors (closed ball; ties within 1e-9 of R included).
// Throws RadiusTooLarge if the predicted candidate count
// Π_i (2R/‖b*_i‖ + 1) exceeds `cap`.
std::vector<IVec> enumerate_short_vectors(const Mat& B, double R,
                                          EnumMode mode = EnumMode::Full,
                                          double cap = 1e8);

// Tie tolerance of the closed-ball convention, shared with the oracle tests.
inline constexpr double kEnumTieSlack = 1e-9;

} // namespace siegel
