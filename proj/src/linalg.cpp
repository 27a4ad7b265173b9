#include "siegel/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>

namespace siegel {

double determinant(const Mat& M) {
    if (M.rows() != M.cols()) {
        throw std::invalid_argument("determinant: matrix must be square");
    }
    Eigen::FullPivLU<Mat> lu(M);
    if (!lu.isInvertible()) {
        return 0.0;
    }
    return lu.determinant();
}

GramSchmidtResult gram_schmidt(const Mat& B) {
    if (B.rows() != B.cols()) {
        throw std::invalid_argument("gram_schmidt: matrix must be square");
    }
    const Eigen::Index n = B.cols();
    GramSchmidtResult r;
    r.ortho = Mat::Zero(B.rows(), n);
    r.mu = Mat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Vec v = B.col(i);
        for (Eigen::Index j = 0; j < i; ++j) {
            const double denom = r.ortho.col(j).squaredNorm();
            const double m = B.col(i).dot(r.ortho.col(j)) / denom;
            r.mu(i, j) = m;
            v -= m * r.ortho.col(j);
        }
        r.mu(i, i) = 1.0;
        if (v.norm() < 1e-12) {
            throw SingularBasis("gram_schmidt: basis vector " +
                                std::to_string(i) +
                                " is in the span of its predecessors");
        }
        r.ortho.col(i) = v;
    }
    return r;
}

namespace {

void check_transform_magnitude(const IMat& U) {
    // The change of basis should stay far below int64 range for desk-scale
    // inputs; a blow-up signals an ill-conditioned basis.
    constexpr std::int64_t kLimit = std::int64_t(1) << 53;
    if (U.cwiseAbs().maxCoeff() > kLimit) {
        throw SingularBasis(
            "lll_reduce: integer transform overflow (ill-conditioned basis)");
    }
}

} // namespace

LLLResult lll_reduce_with_transform(const Mat& B, double delta) {
    if (!(delta > 0.25 && delta < 1.0)) {
        throw std::invalid_argument("lll_reduce: delta must be in (0.25, 1)");
    }
    const Eigen::Index n = B.cols();
    LLLResult out;
    out.basis = B;
    out.transform = IMat::Identity(n, n);
    Mat& Bw = out.basis;
    IMat& U = out.transform;

    long steps = 0;
    const long max_steps = 100000 + 10000 * static_cast<long>(n) * n;
    Eigen::Index k = 1;
    while (k < n) {
        if (++steps > max_steps) {
            throw SingularBasis("lll_reduce: failed to converge");
        }
        GramSchmidtResult gs = gram_schmidt(Bw);
        // Size-reduce column k against k-1, ..., 0.
        for (Eigen::Index j = k - 1; j >= 0; --j) {
            const double m = gs.mu(k, j);
            if (std::abs(m) > 0.5) {
                const std::int64_t q = std::llround(m);
                Bw.col(k) -= static_cast<double>(q) * Bw.col(j);
                U.col(k) -= q * U.col(j);
                for (Eigen::Index l = 0; l < j; ++l) {
                    gs.mu(k, l) -= static_cast<double>(q) * gs.mu(j, l);
                }
                gs.mu(k, j) -= static_cast<double>(q);
            }
        }
        check_transform_magnitude(U);
        const double lhs = gs.ortho.col(k).squaredNorm();
        const double m = gs.mu(k, k - 1);
        const double rhs = (delta - m * m) * gs.ortho.col(k - 1).squaredNorm();
        if (lhs >= rhs) {
            ++k;
        } else {
            Bw.col(k).swap(Bw.col(k - 1));
            U.col(k).swap(U.col(k - 1));
            k = std::max<Eigen::Index>(k - 1, 1);
        }
    }
    return out;
}

Mat lll_reduce(const Mat& B, double delta) {
    return lll_reduce_with_transform(B, delta).basis;
}

std::vector<IVec> enumerate_short_vectors(const Mat& B, double R, EnumMode mode,
                                          double cap) {
    if (!(R > 0)) {
        throw std::invalid_argument("enumerate_short_vectors: R must be > 0");
    }
    const GramSchmidtResult gs = gram_schmidt(B);
    const Eigen::Index n = B.cols();

    Vec c(n); // squared Gram–Schmidt norms
    double predicted = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        c(i) = gs.ortho.col(i).squaredNorm();
        predicted *= 2.0 * R / std::sqrt(c(i)) + 1.0;
    }
    if (predicted > cap) {
        throw RadiusTooLarge(
            "enumerate_short_vectors: predicted candidate count " +
            std::to_string(predicted) + " exceeds cap " + std::to_string(cap));
    }

    // DFS bound slightly padded; the final membership test below is the
    // authoritative closed-ball criterion ‖Bu‖ ≤ R + tie slack.
    const double r_accept = R + kEnumTieSlack;
    const double r2_accept = r_accept * r_accept;
    const double r2_dfs = r2_accept * (1.0 + 1e-12) + 1e-12;

    std::vector<IVec> out;
    IVec u = IVec::Zero(n);
    // partial(i) = Σ_{l>i} (u_l + center_l)² c_l, maintained on the way down.
    const auto center_at = [&](Eigen::Index i) {
        double s = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            s += gs.mu(j, i) * static_cast<double>(u(j));
        }
        return s;
    };

    const std::function<void(Eigen::Index, double, bool)> dfs =
        [&](Eigen::Index i, double used, bool prefix_zero) {
            if (i < 0) {
                if (prefix_zero) {
                    return; // u = 0
                }
                const double norm2 = (B * u.cast<double>()).squaredNorm();
                if (norm2 <= r2_accept) {
                    out.push_back(u);
                }
                return;
            }
            const double rem = r2_dfs - used;
            if (rem < 0) {
                return;
            }
            const double center = center_at(i);
            const double t = std::sqrt(rem / c(i));
            std::int64_t lo =
                static_cast<std::int64_t>(std::ceil(-center - t - 1e-12));
            const std::int64_t hi =
                static_cast<std::int64_t>(std::floor(-center + t + 1e-12));
            if (mode == EnumMode::Half && prefix_zero && lo < 0) {
                lo = 0;
            }
            for (std::int64_t x = lo; x <= hi; ++x) {
                u(i) = x;
                const double d = static_cast<double>(x) + center;
                dfs(i - 1, used + d * d * c(i), prefix_zero && x == 0);
            }
            u(i) = 0;
        };
    dfs(n - 1, 0.0, true);
    return out;
}

} // namespace siegel
