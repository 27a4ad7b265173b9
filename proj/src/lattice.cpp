#include "siegel/lattice.hpp"

#include <cmath>
#include <numeric>

namespace siegel {

Lattice lattice_from_basis(const Mat& M, bool rescale) {
    if (M.rows() != M.cols() || M.cols() < 2) {
        throw std::invalid_argument(
            "lattice_from_basis: need a square basis with n >= 2");
    }
    const double det = determinant(M);
    const double abs_det = std::abs(det);
    if (abs_det <= 1e-9) {
        throw SingularBasis("lattice_from_basis: basis is singular");
    }
    if (!rescale && std::abs(abs_det - 1.0) > 1e-6) {
        throw NotUnimodular("lattice_from_basis: |det| = " +
                            std::to_string(abs_det) +
                            " deviates from 1 beyond 1e-6 (pass rescale "
                            "to force normalization)");
    }
    const double scale =
        std::pow(abs_det, -1.0 / static_cast<double>(M.cols()));
    return Lattice{scale * M};
}

bool is_primitive(const IVec& u) {
    std::int64_t g = 0;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        g = std::gcd(g, std::abs(u(i)));
        if (g == 1) {
            return true;
        }
    }
    if (g == 0) {
        throw ZeroVector("is_primitive: the origin is not a candidate");
    }
    return g == 1;
}

namespace {

std::vector<Vec> points_impl(const Lattice& L, double R, bool primitive_only,
                             bool pairs_only) {
    const Mat reduced = lll_reduce(L.basis);
    const std::vector<IVec> half =
        enumerate_short_vectors(reduced, R, EnumMode::Half);
    std::vector<Vec> out;
    out.reserve(2 * half.size());
    for (const IVec& u : half) {
        if (primitive_only && !is_primitive(u)) {
            continue;
        }
        Vec v = reduced * u.cast<double>();
        if (pairs_only) {
            out.push_back(std::move(v));
        } else {
            out.push_back(v);
            out.push_back(-v);
        }
    }
    return out;
}

} // namespace

std::vector<Vec> primitive_points(const Lattice& L, double R) {
    return points_impl(L, R, true, false);
}

std::vector<Vec> nonzero_points(const Lattice& L, double R) {
    return points_impl(L, R, false, false);
}

std::vector<Vec> primitive_point_pairs(const Lattice& L, double R) {
    return points_impl(L, R, true, true);
}

std::vector<Vec> nonzero_point_pairs(const Lattice& L, double R) {
    return points_impl(L, R, false, true);
}

Mat complete_to_unimodular(const Vec& v) {
    const Eigen::Index n = v.size();
    if (n < 2) {
        throw std::invalid_argument("complete_to_unimodular: need n >= 2");
    }
    const double norm = v.norm();
    if (norm < 1e-12) {
        throw ZeroVector("complete_to_unimodular: v must be nonzero");
    }
    const Vec vhat = v / norm;

    // Orthonormal Q with Q e_1 = vhat: the Householder reflection through
    // the bisector of e_1 and vhat, with the last column negated to restore
    // det +1. When vhat = e_1 the reflection degenerates to the identity.
    Mat Q = Mat::Identity(n, n);
    Vec u = vhat;
    u(0) -= 1.0;
    const double u2 = u.squaredNorm();
    if (u2 > 1e-28) {
        Q -= (2.0 / u2) * (u * u.transpose());
        Q.col(n - 1) = -Q.col(n - 1);
    }

    const double comp_scale =
        std::pow(norm, -1.0 / static_cast<double>(n - 1));
    Mat g = comp_scale * Q;
    g.col(0) = v; // first column exactly v
    return g;
}

} // namespace siegel
