// Shared fixtures and independent oracles for the test suites. Everything
// here is deliberately implemented without touching the library's own query
// paths, so the tests check two genuinely different routes.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sphererep/graph.hpp"
#include "sphererep/matrix.hpp"
#include "sphererep/rng.hpp"

namespace testsupport {

using sphererep::Edge;
using sphererep::Graph;
using sphererep::Matrix;
using sphererep::RandomStream;

/// Graph from LCF notation: a Hamiltonian cycle 0..n-1 plus the chord
/// i -- i + pattern[i mod |pattern|].
inline Graph lcf_graph(int n, const std::vector<int>& pattern) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        edges.push_back(sphererep::normalized(i, (i + 1) % n));
        const int offset = pattern[i % pattern.size()];
        edges.push_back(sphererep::normalized(i, ((i + offset) % n + n) % n));
    }
    return Graph::from_edges(n, edges);
}

inline Graph heawood_graph() { return lcf_graph(14, {5, -5}); }
inline Graph mcgee_graph() { return lcf_graph(24, {12, 7, -7}); }

/// Floyd-Warshall all-pairs distances, -1 for unreachable. Independent of
/// the library's BFS path.
inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
    const int n = g.vertex_count();
    constexpr int kInf = 1 << 28;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
    for (int v = 0; v < n; ++v) d[v][v] = 0;
    for (const auto& [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
    for (int via = 0; via < n; ++via)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][via] + d[via][j]);
    for (auto& row : d)
        for (int& x : row)
            if (x >= kInf) x = -1;
    return d;
}

/// Brute-force cycle counts by vertex subset: for every subset of size
/// 3..max_len, count Hamiltonian cycles of the subgraph on that subset.
/// Exponential, for tiny graphs only.
inline std::map<int, long long> subset_cycle_counts(const Graph& g, int max_len) {
    const int n = g.vertex_count();
    std::map<int, long long> counts;
    std::vector<int> subset;

    auto count_hamiltonian = [&](const std::vector<int>& verts) {
        // fix verts[0] first, enumerate the rest; direction killed by
        // requiring second < last
        std::vector<int> rest(verts.begin() + 1, verts.end());
        std::sort(rest.begin(), rest.end());
        long long found = 0;
        do {
            if (rest.front() > rest.back()) continue;
            bool ok = g.has_edge(verts[0], rest.front()) && g.has_edge(rest.back(), verts[0]);
            for (std::size_t i = 0; ok && i + 1 < rest.size(); ++i)
                ok = g.has_edge(rest[i], rest[i + 1]);
            if (ok) ++found;
        } while (std::next_permutation(rest.begin(), rest.end()));
        return found;
    };

    std::function<void(int)> choose = [&](int next) {
        const int size = static_cast<int>(subset.size());
        if (size >= 3) {
            const long long c = count_hamiltonian(subset);
            if (c > 0) counts[size] += c;
        }
        if (size == max_len) return;
        for (int v = next; v < n; ++v) {
            subset.push_back(v);
            choose(v + 1);
            subset.pop_back();
        }
    };
    choose(0);
    return counts;
}

/// Random unit barycentre-0 representation by alternating projection:
/// re-centre the columns, renormalize, repeat. Retries with fresh seeds on
/// the rare degenerate start.
inline Matrix random_unit_barycentre0(int rows, int cols, std::uint64_t seed) {
    for (int attempt = 0; attempt < 32; ++attempt) {
        RandomStream rng(RandomStream::mix(seed, attempt));
        Matrix r(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r(i, j) = rng.gaussian();
        bool bad = false;
        for (int iter = 0; iter < 5000 && !bad; ++iter) {
            double drift = 0.0;
            for (int i = 0; i < rows; ++i) {
                double mean = 0.0;
                for (int j = 0; j < cols; ++j) mean += r(i, j);
                mean /= cols;
                drift = std::max(drift, std::abs(mean));
                for (int j = 0; j < cols; ++j) r(i, j) -= mean;
            }
            double unit = 0.0;
            for (int j = 0; j < cols; ++j) {
                const double norm = std::sqrt(r.col_norm_sq(j));
                if (norm < 1e-9) {
                    bad = true;
                    break;
                }
                unit = std::max(unit, std::abs(norm - 1.0));
                for (int i = 0; i < rows; ++i) r(i, j) /= norm;
            }
            if (!bad && unit < 1e-14 && drift * cols < 1e-14) return r;
        }
    }
    throw std::runtime_error("random_unit_barycentre0: no convergence");
}

/// Simpson quadrature on [a, b].
inline double simpson(double a, double b, int intervals, const std::function<double(double)>& f) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace testsupport
