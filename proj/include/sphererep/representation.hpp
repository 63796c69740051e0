#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sphererep/graph.hpp"
#include "sphererep/linalg.hpp"
#include "sphererep/matrix.hpp"

namespace sphererep {

inline SymMatrix adjacency_matrix(const Graph& g) {
    SymMatrix a(g.vertex_count());
    for (const auto& [u, v] : g.edges()) a.set(u, v, 1.0);
    return a;
}

inline void check_representation(const Graph& g, const Matrix& r) {
    if (r.cols() != g.vertex_count())
        throw DimensionMismatch("representation has " + std::to_string(r.cols()) +
                                " columns for a graph on " + std::to_string(g.vertex_count()) +
                                " vertices");
}

/// Sum over edges of the inner products of the endpoint positions.
inline double rho_edges(const Graph& g, const Matrix& r) {
    check_representation(g, r);
    double s = 0.0;
    for (const auto& [u, v] : g.edges()) s += r.col_dot(u, v);
    return s;
}

/// The same functional computed from the rows: half the sum over rows of
/// the adjacency quadratic form. Deliberately a separate code path from
/// rho_edges; the two must always agree and are cross-checked in tests.
inline double rho_rows(const Graph& g, const Matrix& r) {
    check_representation(g, r);
    const int n = r.cols();
    double total = 0.0;
    for (int k = 0; k < r.rows(); ++k) {
        const double* row = r.row(k);
        double quad = 0.0;
        for (int v = 0; v < n; ++v) {
            double acc = 0.0;
            for (int u : g.neighbors(v)) acc += row[u];
            quad += row[v] * acc;
        }
        total += quad;
    }
    return 0.5 * total;
}

/// Sum over edges of squared Euclidean edge lengths, computed directly from
/// coordinate differences. For unit representations this equals
/// 2 e(G) - 2 rho; the identity is surfaced via RhoReport, not enforced.
inline double energy(const Graph& g, const Matrix& r) {
    check_representation(g, r);
    double s = 0.0;
    for (const auto& [u, v] : g.edges())
        for (int k = 0; k < r.rows(); ++k) {
            const double d = r(k, u) - r(k, v);
            s += d * d;
        }
    return s;
}

/// Measured deviations from the unit and barycentre-0 properties:
/// max_v | ||r(v)||^2 - 1 | and || sum_v r(v) ||^2. Pure measurement; a
/// representation is valid at tolerance tol when unit <= tol and
/// barycentre <= tol * v(G).
struct Residuals {
    double unit = 0.0;
    double barycentre = 0.0;

    bool within(double tol, int n) const { return unit <= tol && barycentre <= tol * n; }
};

inline Residuals validate(const Graph& g, const Matrix& r) {
    check_representation(g, r);
    Residuals res;
    for (int v = 0; v < r.cols(); ++v)
        res.unit = std::max(res.unit, std::abs(r.col_norm_sq(v) - 1.0));
    for (double s : r.col_sum()) res.barycentre += s * s;
    return res;
}

struct RhoReport {
    double rho = 0.0;
    double energy = 0.0;
    double residual_unit = 0.0;
    double residual_barycentre = 0.0;
    std::optional<double> upper_bound;  // lambda_2 * v(G) / 2, regular graphs only
    bool unit_ok = true;                // energy identity only meaningful when true
};

inline RhoReport rho_report(const Graph& g, const Matrix& r, double tol = 1e-8) {
    RhoReport report;
    report.rho = rho_edges(g, r);
    report.energy = energy(g, r);
    const Residuals res = validate(g, r);
    report.residual_unit = res.unit;
    report.residual_barycentre = res.barycentre;
    report.unit_ok = res.unit <= tol;
    if (g.is_regular() && g.vertex_count() >= 2) {
        const SpectralData spec = sym_eigen(adjacency_matrix(g));
        report.upper_bound = 0.5 * spec.eigenvalues[1] * g.vertex_count();
    }
    return report;
}

/// Classical spectral drawing: the k rows are the eigenvectors of the
/// adjacency matrix for the eigenvalues right below the top one. Rows are
/// orthonormal as vectors; columns are generally not unit, which validate()
/// reports honestly.
inline Matrix spectral_drawing(const Graph& g, int k) {
    if (!g.is_regular()) throw NotRegular("spectral_drawing: graph is not regular");
    if (!g.is_connected()) throw NotConnected("spectral_drawing: graph is not connected");
    const int n = g.vertex_count();
    if (k < 1 || k > n - 1)
        throw InsufficientDimension("spectral_drawing: need 1 <= k <= " + std::to_string(n - 1) +
                                    ", got " + std::to_string(k));
    const SpectralData spec = sym_eigen(adjacency_matrix(g));
    Matrix r(k, n);
    for (int i = 0; i < k; ++i)
        for (int v = 0; v < n; ++v) r(i, v) = spec.eigenvectors(v, i + 1);
    return r;
}

/// Random projection path: apply a Haar orthogonal transform to the rows
/// and keep the first k. Shared by project() and the expectation check so
/// both exercise the same kernel.
inline Matrix project_random(const Matrix& r, int k, std::uint64_t seed) {
    if (r.rows() < 1) throw WrongDimension("project: representation has no rows");
    if (k < 1) throw OutOfRange("project: target dimension must be positive");
    const Matrix q = random_orthogonal(r.rows(), seed);
    const Matrix full = q * r;
    Matrix out(k, r.cols());
    for (int i = 0; i < std::min(k, full.rows()); ++i)
        for (int j = 0; j < r.cols(); ++j) out(i, j) = full(i, j);
    return out;
}

/// Dimension reduction. When the rows already span at most k dimensions the
/// representation is rotated so all mass sits in the first k rows (pairwise
/// geometry preserved exactly); otherwise a random orthogonal transform is
/// applied and the first k rows kept. Column sums are preserved either way,
/// so barycentre-0 inputs stay barycentre-0.
inline Matrix project(const Matrix& r, int k, std::uint64_t seed) {
    if (r.rows() < 1) throw WrongDimension("project: representation has no rows");
    if (k < 1) throw OutOfRange("project: target dimension must be positive");

    // the rank of R equals the rank of the small row Gram matrix R R^T
    const int m = r.rows();
    SymMatrix row_gram(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double s = 0.0;
            const double* a = r.row(i);
            const double* b = r.row(j);
            for (int c = 0; c < r.cols(); ++c) s += a[c] * b[c];
            row_gram.set(i, j, s);
        }
    const SpectralData spec = sym_eigen(row_gram, 1e-13, 128);
    const double cutoff = 1e-10 * std::max(spec.eigenvalues.front(), 0.0) + 1e-300;
    int rank = 0;
    while (rank < m && spec.eigenvalues[rank] > cutoff) ++rank;

    if (rank > k) return project_random(r, k, seed);

    // rotate by the eigenbasis of R R^T: rows beyond `rank` carry no mass
    Matrix out(k, r.cols());
    for (int i = 0; i < std::min(k, m); ++i)
        for (int j = 0; j < r.cols(); ++j) {
            double s = 0.0;
            for (int l = 0; l < m; ++l) s += spec.eigenvectors(l, i) * r(l, j);
            out(i, j) = s;
        }
    return out;
}

/// Angle density between a uniformly random direction in R^n and a fixed
/// 2-plane: (n - 2) cos(a) sin(a)^(n-3) on [0, pi/2].
inline double projected_angle_density(double alpha, int n) {
    if (n < 3) throw DimensionTooSmall("angle density needs n >= 3");
    return (n - 2) * std::cos(alpha) * std::pow(std::sin(alpha), n - 3);
}

struct ProjectionCheck {
    double empirical_mean = 0.0;
    double predicted = 0.0;
    double standard_error = 0.0;
    long long trials = 0;
    int histogram_bins = 0;
    std::vector<long long> angle_histogram;  // of the angle to the plane, over [0, pi/2]
};

/// Monte-Carlo check that a segment of length x in R^n keeps, after random
/// projection to a plane, squared length (2/n) x^2 in expectation. Also
/// histograms the projection angle for comparison with the closed-form
/// density.
inline ProjectionCheck projection_expectation_check(int n, double x, long long trials,
                                                    std::uint64_t seed) {
    if (n < 3) throw DimensionTooSmall("projection check needs n >= 3, got " + std::to_string(n));
    if (trials < 1) throw OutOfRange("projection check needs at least one trial");
    if (x < 0.0) throw OutOfRange("projection check: segment length must be nonnegative");

    constexpr int kBins = 90;
    ProjectionCheck out;
    out.trials = trials;
    out.histogram_bins = kBins;
    out.angle_histogram.assign(kBins, 0);
    out.predicted = 2.0 / n * x * x;

    Matrix segment(n, 1);
    segment(0, 0) = x;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (long long t = 0; t < trials; ++t) {
        const Matrix p = project_random(segment, 2, RandomStream::mix(seed, static_cast<std::uint64_t>(t)));
        const double sq = p(0, 0) * p(0, 0) + p(1, 0) * p(1, 0);
        sum += sq;
        sum_sq += sq * sq;
        if (x > 0.0) {
            const double cosine = std::clamp(std::sqrt(sq) / x, 0.0, 1.0);
            const double alpha = std::acos(cosine);
            int bin = static_cast<int>(alpha / (std::numbers::pi / 2) * kBins);
            bin = std::clamp(bin, 0, kBins - 1);
            ++out.angle_histogram[bin];
        }
    }
    out.empirical_mean = sum / trials;
    const double var = std::max(0.0, sum_sq / trials - out.empirical_mean * out.empirical_mean);
    out.standard_error = std::sqrt(var / trials);
    return out;
}

}  // namespace sphererep
