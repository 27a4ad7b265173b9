#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "siegel/linalg.hpp"

// Independent reference implementations used to cross-check the library.
// Deliberately naive: correctness over speed, and no shared code paths with
// the routines under test.
namespace oracle {

using IMat64 = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Enumerates every nonzero integer coefficient vector u with ||B u|| <= R
// (plus the library's tie slack) by scanning the whole box
// |u_i| <= ceil(||B^-1||_inf * (R + slack)). Exponential in n.
// Returned vectors are sorted lexicographically.
std::vector<siegel::IVec> brute_force_enumerate(const siegel::Mat& B, double R);

// Column-style Hermite normal form of a nonsingular integer matrix:
// upper triangular, positive diagonal, and each off-diagonal entry h_ij
// (i < j) reduced to 0 <= h_ij < h_ii. Two integer matrices span the same
// lattice iff their forms are equal. Throws std::invalid_argument on singular
// input and std::overflow_error if an intermediate would exceed int64.
IMat64 hermite_normal_form(IMat64 M);

// Midpoint-rule integral of f over the cube [-R, R]^n with k cells per axis.
double midpoint_integral(const std::function<double(const siegel::Vec&)>& f,
                         int n, double R, int k);

// Pearson chi-square statistic of observed counts against a flat expectation.
double chi_square_uniform(const std::vector<std::int64_t>& counts,
                          double expected_per_bin);

} // namespace oracle
