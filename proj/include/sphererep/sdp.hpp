#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sphererep/graph.hpp"
#include "sphererep/linalg.hpp"
#include "sphererep/representation.hpp"
#include "sphererep/rng.hpp"

namespace sphererep {

struct SolverOptions {
    int rank = 0;                  // 0 picks ceil(sqrt(2n)) + 1
    double tol_feas = 1e-8;        // barycentre feasibility: J.X <= tol_feas * n
    double tol_obj = 1e-9;         // relative objective stall per sweep
    int max_outer = 50;            // augmented-Lagrangian rounds
    int max_inner = 500;           // coordinate-ascent sweeps per round
    double penalty_init = 1.0;
    double penalty_growth = 2.0;
    int restarts = 3;
    std::uint64_t seed = 0;
};

struct PrimalSolution {
    Matrix factor;                   // X = factor^T factor, columns are positions
    double objective = 0.0;          // rho of the factor after exact column renormalization
    double residual_unit = 0.0;
    double residual_barycentre = 0.0;  // J . X
    long long iterations = 0;        // total inner sweeps of the winning restart
    bool converged = false;
    bool inner_monotone = true;      // augmented objective never dropped within a round
    int n = 0;
    std::uint64_t graph_hash = 0;
};

struct DualCertificate {
    std::vector<double> y;           // per-vertex multipliers
    double y0 = 0.0;
    double dual_objective = 0.0;     // sum of y
    double min_eig_m = 0.0;          // smallest eigenvalue of -A/2 + diag(y) + y0 J
    int n = 0;
    std::uint64_t graph_hash = 0;
};

inline int default_factor_rank(int n) {
    // Barvinok-Pataki: an optimum of rank ceil(sqrt(2n)) exists, so this
    // rank never starves the factorized problem
    return static_cast<int>(std::ceil(std::sqrt(2.0 * n))) + 1;
}

namespace detail {

struct AscentResult {
    Matrix factor;
    double objective = 0.0;
    double feasibility = 0.0;
    long long sweeps = 0;
    bool feasible = false;
    bool monotone = true;
};

/// One full run of augmented-Lagrangian coordinate ascent from a random
/// start. Maximizes rho(R) - sigma ||s||^2 - <mu, s> with s the sum of the
/// unit columns; each column update is an exact maximization over the
/// sphere, so the inner objective is non-decreasing by construction.
inline AscentResult ascend(const Graph& g, const SolverOptions& opts, int rank,
                           std::uint64_t seed) {
    const int n = g.vertex_count();
    RandomStream rng(seed);

    Matrix r(rank, n);
    for (int v = 0; v < n; ++v) {
        double norm = 0.0;
        std::vector<double> col(rank);
        do {
            norm = 0.0;
            for (int i = 0; i < rank; ++i) {
                col[i] = rng.gaussian();
                norm += col[i] * col[i];
            }
        } while (norm < 1e-30);
        norm = std::sqrt(norm);
        for (int i = 0; i < rank; ++i) r(i, v) = col[i] / norm;
    }

    std::vector<double> mu(rank, 0.0);
    double sigma = opts.penalty_init;
    double feas_prev = std::numeric_limits<double>::infinity();

    AscentResult res;
    std::vector<double> s(rank), dir(rank);

    auto column = [&](int v, std::vector<double>& out) {
        for (int i = 0; i < rank; ++i) out[i] = r(i, v);
    };
    auto augmented_objective = [&]() {
        double rho = rho_edges(g, r);
        double s_sq = 0.0, mu_s = 0.0;
        for (int i = 0; i < rank; ++i) {
            s_sq += s[i] * s[i];
            mu_s += mu[i] * s[i];
        }
        return rho - sigma * s_sq - mu_s;
    };

    std::vector<double> col(rank);
    for (int outer = 0; outer < opts.max_outer; ++outer) {
        s = r.col_sum();
        double f_prev = -std::numeric_limits<double>::infinity();
        bool stalled = false;
        for (int inner = 0; inner < opts.max_inner; ++inner) {
            for (int v = 0; v < n; ++v) {
                column(v, col);
                for (int i = 0; i < rank; ++i)
                    dir[i] = -mu[i] - 2.0 * sigma * (s[i] - col[i]);
                for (int u : g.neighbors(v))
                    for (int i = 0; i < rank; ++i) dir[i] += r(i, u);
                double norm = 0.0;
                for (int i = 0; i < rank; ++i) norm += dir[i] * dir[i];
                norm = std::sqrt(norm);
                if (norm < 1e-14) continue;  // locally flat, leave the column alone
                for (int i = 0; i < rank; ++i) {
                    const double nv = dir[i] / norm;
                    s[i] += nv - r(i, v);
                    r(i, v) = nv;
                }
            }
            ++res.sweeps;
            s = r.col_sum();  // refresh to stop incremental drift
            const double f = augmented_objective();
            if (f < f_prev - 1e-7 * (1.0 + std::abs(f_prev))) res.monotone = false;
            if (std::abs(f - f_prev) <= opts.tol_obj * (1.0 + std::abs(f))) {
                stalled = true;
                break;
            }
            f_prev = f;
        }

        double feas = 0.0;
        for (int i = 0; i < rank; ++i) feas += s[i] * s[i];
        if (stalled && feas <= opts.tol_feas * n) {
            res.feasible = true;
            break;
        }
        for (int i = 0; i < rank; ++i) mu[i] += 2.0 * sigma * s[i];
        if (feas > 0.25 * feas_prev) sigma = std::min(sigma * opts.penalty_growth, 1e12);
        feas_prev = feas;
    }

    // exact renormalization; columns are already unit to machine precision
    for (int v = 0; v < n; ++v) {
        double norm = std::sqrt(r.col_norm_sq(v));
        if (norm < 1e-14) {
            for (int i = 0; i < rank; ++i) r(i, v) = 0.0;
            r(0, v) = 1.0;
        } else {
            for (int i = 0; i < rank; ++i) r(i, v) /= norm;
        }
    }
    s = r.col_sum();
    res.feasibility = 0.0;
    for (int i = 0; i < rank; ++i) res.feasibility += s[i] * s[i];
    res.objective = rho_edges(g, r);
    res.factor = std::move(r);
    return res;
}

}  // namespace detail

/// Maximize (1/2) A.X over unit-diagonal, zero-J, positive semidefinite X
/// through the low-rank factor X = R^T R: cyclic column updates on the unit
/// sphere with an augmented-Lagrangian treatment of the barycentre
/// constraint (the penalty term J.X = ||sum of columns||^2 is nonnegative,
/// so escalating the penalty drives it to zero). Runs a few random restarts
/// and keeps the best objective; ties break toward lower residual.
inline PrimalSolution solve_primal(const Graph& g, const SolverOptions& opts = {}) {
    const int n = g.vertex_count();
    if (n < 2) throw TrivialGraph("solve_primal: need at least 2 vertices");
    const int rank = opts.rank > 0 ? std::min(opts.rank, n) : std::min(default_factor_rank(n), n);
    const int restarts = std::max(1, opts.restarts);

    PrimalSolution best;
    bool have = false;
    for (int attempt = 0; attempt < restarts; ++attempt) {
        detail::AscentResult res =
            detail::ascend(g, opts, rank, RandomStream::mix(opts.seed, attempt));
        const bool better =
            !have || res.objective > best.objective + 1e-12 ||
            (std::abs(res.objective - best.objective) <= 1e-12 &&
             res.feasibility < best.residual_barycentre);
        if (better) {
            best.factor = std::move(res.factor);
            best.objective = res.objective;
            best.residual_barycentre = res.feasibility;
            best.iterations = res.sweeps;
            best.converged = res.feasible;
            best.inner_monotone = res.monotone;
            have = true;
        }
    }
    const Residuals residuals = validate(g, best.factor);
    best.residual_unit = residuals.unit;
    best.residual_barycentre = residuals.barycentre;
    best.converged = best.converged && best.residual_barycentre <= opts.tol_feas * n;
    best.n = n;
    best.graph_hash = g.hash();
    return best;
}

/// lambda_2 * v(G) / 2, the spectral upper bound on rho for regular graphs.
inline double upper_bound_regular(const Graph& g) {
    if (!g.is_regular()) throw NotRegular("upper_bound_regular: graph is not regular");
    if (g.vertex_count() < 2) throw TrivialGraph("upper_bound_regular: need at least 2 vertices");
    const SpectralData spec = sym_eigen(adjacency_matrix(g));
    return 0.5 * spec.eigenvalues[1] * g.vertex_count();
}

namespace detail {

inline DualCertificate dual_point(const Graph& g, double shift, double psd_floor,
                                  const char* what) {
    if (g.vertex_count() < 2) throw TrivialGraph("dual certificate: need at least 2 vertices");
    if (!g.is_regular()) throw NotRegular("dual certificate: graph is not regular");
    if (!g.is_connected()) throw NotConnected("dual certificate: graph is not connected");

    const int n = g.vertex_count();
    const SpectralData spec = sym_eigen(adjacency_matrix(g));
    const double lambda1 = spec.eigenvalues[0];
    const double lambda2 = spec.eigenvalues[1];

    DualCertificate cert;
    cert.n = n;
    cert.graph_hash = g.hash();
    cert.y.assign(n, 0.5 * lambda2 + shift);
    cert.y0 = (lambda1 - lambda2) / (2.0 * n);
    cert.dual_objective = n * (0.5 * lambda2 + shift);

    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, cert.y0);
    for (const auto& [u, v] : g.edges()) m.add(u, v, -0.5);
    for (int i = 0; i < n; ++i) m.add(i, i, cert.y[i]);

    cert.min_eig_m = sym_eigen(m).eigenvalues.back();
    if (cert.min_eig_m < psd_floor)
        throw CertificateInvalid(std::string(what) + ": min eigenvalue " +
                                 std::to_string(cert.min_eig_m) + " below floor " +
                                 std::to_string(psd_floor));
    return cert;
}

}  // namespace detail

/// Tight dual point y_v = lambda_2 / 2, y_0 = (lambda_1 - lambda_2) / 2n.
/// Its objective equals the spectral upper bound, so a matching primal
/// value certifies global optimality. Validated positive semidefinite.
inline DualCertificate dual_certificate_regular(const Graph& g) {
    return detail::dual_point(g, 0.0, -1e-8, "tight dual certificate");
}

/// Strictly feasible dual point y_v = lambda_2 / 2 + 1 (every eigenvalue of
/// the slack matrix is at least 1), the interior point behind strong
/// duality for regular graphs.
inline DualCertificate strict_feasible_point(const Graph& g) {
    return detail::dual_point(g, 1.0, 1.0 - 1e-8, "strict feasible point");
}

/// Dual objective minus primal objective. Nonnegative up to tolerance by
/// weak duality; a tiny gap against the tight certificate certifies the
/// primal factor globally optimal.
inline double duality_gap(const PrimalSolution& p, const DualCertificate& d) {
    if (p.graph_hash != d.graph_hash || p.n != d.n)
        throw GraphMismatch("duality_gap: primal and dual refer to different graphs");
    return d.dual_objective - p.objective;
}

}  // namespace sphererep
