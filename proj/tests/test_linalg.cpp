#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sphererep/graph.hpp"
#include "sphererep/linalg.hpp"
#include "sphererep/representation.hpp"
#include "test_support.hpp"

using namespace sphererep;
using Catch::Approx;

namespace {

SymMatrix random_symmetric(int n, std::uint64_t seed) {
    RandomStream rng(seed);
    SymMatrix s(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) s.set(i, j, rng.gaussian());
    return s;
}

}  // namespace

TEST_CASE("sym_eigen on known spectra") {
    const SpectralData id3 = sym_eigen(SymMatrix::identity(3));
    for (double v : id3.eigenvalues) CHECK(v == Approx(1.0).margin(1e-12));

    // characteristic polynomial of K3 adjacency: (x - 2)(x + 1)^2
    const SpectralData k3 = sym_eigen(adjacency_matrix(complete_graph(3)));
    CHECK(k3.eigenvalues[0] == Approx(2.0).margin(1e-10));
    CHECK(k3.eigenvalues[1] == Approx(-1.0).margin(1e-10));
    CHECK(k3.eigenvalues[2] == Approx(-1.0).margin(1e-10));

    // cycle eigenvalues 2 cos(2 pi j / n)
    const SpectralData c4 = sym_eigen(adjacency_matrix(cycle_graph(4)));
    CHECK(c4.eigenvalues[0] == Approx(2.0).margin(1e-10));
    CHECK(c4.eigenvalues[1] == Approx(0.0).margin(1e-10));
    CHECK(c4.eigenvalues[2] == Approx(0.0).margin(1e-10));
    CHECK(c4.eigenvalues[3] == Approx(-2.0).margin(1e-10));
}

TEST_CASE("sym_eigen invariants on random matrices") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const int n = 20;
        const SymMatrix s = random_symmetric(n, seed);
        const SpectralData spec = sym_eigen(s);

        // descending order
        for (int i = 0; i + 1 < n; ++i)
            CHECK(spec.eigenvalues[i] >= spec.eigenvalues[i + 1]);

        // orthonormal eigenvectors
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                CHECK(spec.eigenvectors.col_dot(i, j) ==
                      Approx(i == j ? 1.0 : 0.0).margin(1e-10));

        // eigen residual || S v - lambda v ||
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i) {
                double acc = 0.0;
                for (int j = 0; j < n; ++j) acc += s(i, j) * spec.eigenvectors(j, k);
                CHECK(acc == Approx(spec.eigenvalues[k] * spec.eigenvectors(i, k))
                                 .margin(1e-9 * (1.0 + std::abs(spec.eigenvalues[k]))));
            }
        }

        // reconstruction V diag(lambda) V^T = S
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                for (int k = 0; k < n; ++k)
                    acc += spec.eigenvalues[k] * spec.eigenvectors(i, k) * spec.eigenvectors(j, k);
                CHECK(acc == Approx(s(i, j)).margin(n * 1e-9));
            }
    }
}

TEST_CASE("sym_eigen determinism and convergence cap") {
    const SymMatrix s = random_symmetric(12, 9);
    const SpectralData a = sym_eigen(s);
    const SpectralData b = sym_eigen(s);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.eigenvectors.data() == b.eigenvectors.data());

    CHECK_THROWS_AS(sym_eigen(s, 1e-10, 0), NoConvergence);
}

TEST_CASE("regular connected graphs have top eigenpair (d, ones)") {
    for (const Graph& g : {petersen_graph(), hypercube_graph(4), cycle_graph(9)}) {
        const SpectralData spec = sym_eigen(adjacency_matrix(g));
        CHECK(spec.eigenvalues[0] == Approx(g.regular_degree()).margin(1e-9));
        const int n = g.vertex_count();
        const double expect = 1.0 / std::sqrt(static_cast<double>(n));
        const double sign = spec.eigenvectors(0, 0) >= 0 ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i)
            CHECK(spec.eigenvectors(i, 0) == Approx(sign * expect).margin(1e-9));
    }
}

TEST_CASE("dot") {
    CHECK(dot(SymMatrix::identity(3), SymMatrix::identity(3)) == Approx(3.0));
    CHECK(dot(SymMatrix::all_ones(2), SymMatrix::identity(2)) == Approx(2.0));
    // A(K3) . J3 = sum of adjacency entries = 2m
    CHECK(dot(adjacency_matrix(complete_graph(3)), SymMatrix::all_ones(3)) == Approx(6.0));
    CHECK_THROWS_AS(dot(SymMatrix::identity(2), SymMatrix::identity(3)), DimensionMismatch);
}

TEST_CASE("psd_factor") {
    const Matrix r_id = psd_factor(SymMatrix::identity(2));
    REQUIRE(r_id.rows() == 2);
    const SymMatrix back = gram(r_id);
    CHECK(back(0, 0) == Approx(1.0).margin(1e-12));
    CHECK(back(0, 1) == Approx(0.0).margin(1e-12));

    // rank-1: J2 factors into a single row (1, 1) up to sign
    const Matrix r_j = psd_factor(SymMatrix::all_ones(2));
    REQUIRE(r_j.rows() == 1);
    CHECK(std::abs(r_j(0, 0)) == Approx(1.0).margin(1e-10));
    CHECK(r_j(0, 0) == Approx(r_j(0, 1)).margin(1e-10));

    SymMatrix indefinite = SymMatrix::identity(2);
    indefinite.set(1, 1, -1.0);
    CHECK_THROWS_AS(psd_factor(indefinite), NotPSD);
}

TEST_CASE("psd_factor round trip on random Gram matrices") {
    for (std::uint64_t seed : {4ULL, 5ULL}) {
        RandomStream rng(seed);
        Matrix r(3, 7);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 7; ++j) r(i, j) = rng.gaussian();
        const SymMatrix x = gram(r);
        const SymMatrix again = gram(psd_factor(x));
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) CHECK(again(i, j) == Approx(x(i, j)).margin(1e-9));
    }
}

TEST_CASE("random_orthogonal") {
    const Matrix q1 = random_orthogonal(1, 3);
    CHECK(std::abs(q1(0, 0)) == Approx(1.0).margin(1e-12));

    for (int n : {2, 5, 10, 33}) {
        const Matrix q = random_orthogonal(n, 1000 + n);
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                worst = std::max(worst, std::abs(q.col_dot(i, j) - (i == j ? 1.0 : 0.0)));
        CHECK(worst <= 1e-10);
    }

    // seed determinism
    CHECK(random_orthogonal(6, 42).data() == random_orthogonal(6, 42).data());

    // Haar: the first entry squared averages 1/n
    const int n = 10, samples = 10000;
    double mean = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Matrix q = random_orthogonal(n, RandomStream::mix(77, i));
        mean += q(0, 0) * q(0, 0);
    }
    mean /= samples;
    // Var(x^2) for a sphere coordinate is 3/(n(n+2)) - 1/n^2
    const double sd = std::sqrt(3.0 / (n * (n + 2.0)) - 1.0 / (n * n));
    CHECK(std::abs(mean - 1.0 / n) <= 3.0 * sd / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("rayleigh") {
    const SymMatrix c4 = adjacency_matrix(cycle_graph(4));
    const std::vector<double> ones{1, 1, 1, 1};
    CHECK(rayleigh(c4, ones) == Approx(2.0));
    const std::vector<double> alt{1, 0, -1, 0};
    CHECK(rayleigh(c4, alt) == Approx(0.0).margin(1e-15));
    const std::vector<double> any{0.3, -2.0};
    CHECK(rayleigh(SymMatrix::identity(2), any) == Approx(1.0));
    const std::vector<double> zero{0, 0, 0, 0};
    CHECK_THROWS_AS(rayleigh(c4, zero), ZeroVector);

    // the computed second eigenvector attains lambda_2
    for (const Graph& g : {petersen_graph(), cycle_graph(7)}) {
        const SymMatrix a = adjacency_matrix(g);
        const SpectralData spec = sym_eigen(a);
        std::vector<double> v2(g.vertex_count());
        for (int i = 0; i < g.vertex_count(); ++i) v2[i] = spec.eigenvectors(i, 1);
        CHECK(rayleigh(a, v2) == Approx(spec.eigenvalues[1]).margin(1e-9));
    }
}
