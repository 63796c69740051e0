#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sphererep/errors.hpp"
#include "sphererep/matrix.hpp"
#include "sphererep/rng.hpp"

namespace sphererep {

/// Full eigendecomposition of a symmetric matrix: eigenvalues sorted
/// descending, eigenvector columns orthonormal and aligned with them.
struct SpectralData {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;  // column k pairs with eigenvalues[k]
};

/// Frobenius inner product trace(A^T B).
inline double dot(const SymMatrix& a, const SymMatrix& b) {
    if (a.order() != b.order())
        throw DimensionMismatch("dot: order " + std::to_string(a.order()) + " vs " +
                                std::to_string(b.order()));
    double s = 0.0;
    const auto& da = a.data();
    const auto& db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) s += da[i] * db[i];
    return s;
}

/// Cyclic Jacobi eigensolver. Works on a copy of the matrix; converged when
/// the off-diagonal Frobenius norm drops below tol times the Frobenius norm
/// of the input. Fully deterministic: fixed rotation order, stable sort of
/// the resulting eigenpairs.
inline SpectralData sym_eigen(const SymMatrix& s_in, double tol = 1e-10, int max_sweeps = 64) {
    const int n = s_in.order();
    if (n < 1) throw DimensionMismatch("sym_eigen: empty matrix");

    std::vector<double> a(s_in.data());
    std::vector<double> vt(static_cast<std::size_t>(n) * n, 0.0);  // rows are eigenvectors
    for (int i = 0; i < n; ++i) vt[static_cast<std::size_t>(i) * n + i] = 1.0;

    const double snorm = s_in.frobenius_norm();
    auto off_norm = [&]() {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double x = a[static_cast<std::size_t>(i) * n + j];
                acc += x * x;
            }
        return std::sqrt(2.0 * acc);
    };

    if (snorm > 0.0) {
        // rotations this small cannot push the off-diagonal norm back above
        // the convergence threshold, so they are skipped
        const double skip = tol * snorm / (2.0 * n);
        bool converged = false;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            if (off_norm() <= tol * snorm) {
                converged = true;
                break;
            }
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    double* rp = a.data() + static_cast<std::size_t>(p) * n;
                    double* rq = a.data() + static_cast<std::size_t>(q) * n;
                    const double apq = rp[q];
                    if (std::abs(apq) <= skip) continue;
                    const double app = rp[p];
                    const double aqq = rq[q];
                    const double tau = (aqq - app) / (2.0 * apq);
                    const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                                  : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double sv = t * c;
                    for (int j = 0; j < n; ++j) {
                        if (j == p || j == q) continue;
                        const double ap = rp[j];
                        const double aq = rq[j];
                        const double np_ = c * ap - sv * aq;
                        const double nq_ = sv * ap + c * aq;
                        rp[j] = np_;
                        rq[j] = nq_;
                        a[static_cast<std::size_t>(j) * n + p] = np_;
                        a[static_cast<std::size_t>(j) * n + q] = nq_;
                    }
                    rp[p] = app - t * apq;
                    rq[q] = aqq + t * apq;
                    rp[q] = 0.0;
                    rq[p] = 0.0;
                    double* vp = vt.data() + static_cast<std::size_t>(p) * n;
                    double* vq = vt.data() + static_cast<std::size_t>(q) * n;
                    for (int j = 0; j < n; ++j) {
                        const double xp = vp[j];
                        const double xq = vq[j];
                        vp[j] = c * xp - sv * xq;
                        vq[j] = sv * xp + c * xq;
                    }
                }
            }
        }
        if (!converged && off_norm() > tol * snorm) {
            throw NoConvergence("sym_eigen: off-diagonal residual " + std::to_string(off_norm()) +
                                " after " + std::to_string(max_sweeps) + " sweeps");
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return a[static_cast<std::size_t>(i) * n + i] > a[static_cast<std::size_t>(j) * n + j];
    });

    SpectralData out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        out.eigenvalues[k] = a[static_cast<std::size_t>(src) * n + src];
        for (int i = 0; i < n; ++i)
            out.eigenvectors(i, k) = vt[static_cast<std::size_t>(src) * n + i];
    }
    return out;
}

/// Factor a positive semidefinite matrix as X = R^T R. Rows of R correspond
/// to the eigenvalues of X above tol; anything below is clipped to zero.
/// Eigendecomposition-based rather than a literal Cholesky so that
/// numerically rank-deficient inputs factor cleanly.
inline Matrix psd_factor(const SymMatrix& x, double tol = 1e-8) {
    const SpectralData spec = sym_eigen(x, 1e-12, 128);
    const int n = x.order();
    const double min_eig = spec.eigenvalues.back();
    if (min_eig < -tol)
        throw NotPSD("psd_factor: eigenvalue " + std::to_string(min_eig) + " below -" +
                     std::to_string(tol));
    int rank = 0;
    while (rank < n && spec.eigenvalues[rank] > tol) ++rank;
    Matrix r(rank, n);
    for (int i = 0; i < rank; ++i) {
        const double scale = std::sqrt(spec.eigenvalues[i]);
        for (int j = 0; j < n; ++j) r(i, j) = scale * spec.eigenvectors(j, i);
    }
    return r;
}

/// Haar-distributed random orthogonal matrix: QR of a Gaussian matrix by
/// modified Gram-Schmidt (run twice for orthogonality at machine precision)
/// with the positive-diagonal sign convention that makes the factor unique.
inline Matrix random_orthogonal(int n, std::uint64_t seed) {
    if (n < 1) throw OutOfRange("random_orthogonal: order must be positive");
    RandomStream rng(seed);
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian();

    Matrix q(n, n);
    std::vector<double> v(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) v[i] = g(i, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (int l = 0; l < j; ++l) {
                double proj = 0.0;
                for (int i = 0; i < n; ++i) proj += q(i, l) * v[i];
                for (int i = 0; i < n; ++i) v[i] -= proj * q(i, l);
            }
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += v[i] * v[i];
        norm = std::sqrt(norm);
        // a Gaussian column is never exactly dependent; the guard only
        // protects against a pathological stream
        if (norm < 1e-150) {
            v.assign(n, 0.0);
            v[j] = 1.0;
            norm = 1.0;
        }
        for (int i = 0; i < n; ++i) q(i, j) = v[i] / norm;
    }
    return q;
}

/// Rayleigh quotient x^T S x / x^T x.
inline double rayleigh(const SymMatrix& s, std::span<const double> x) {
    if (static_cast<int>(x.size()) != s.order())
        throw DimensionMismatch("rayleigh: vector length " + std::to_string(x.size()) +
                                " vs order " + std::to_string(s.order()));
    double denom = 0.0;
    for (double xi : x) denom += xi * xi;
    if (denom == 0.0) throw ZeroVector("rayleigh: zero vector");
    double num = 0.0;
    for (int i = 0; i < s.order(); ++i) {
        const double* row = s.row(i);
        double acc = 0.0;
        for (int j = 0; j < s.order(); ++j) acc += row[j] * x[j];
        num += x[i] * acc;
    }
    return num / denom;
}

/// Gram matrix R^T R of the columns of R.
inline SymMatrix gram(const Matrix& r) {
    const int n = r.cols();
    SymMatrix x(n);
    for (int j = 0; j < n; ++j)
        for (int l = j; l < n; ++l) x.set(j, l, r.col_dot(j, l));
    return x;
}

}  // namespace sphererep
