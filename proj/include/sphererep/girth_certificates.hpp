#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "sphererep/graph.hpp"
#include "sphererep/matrix.hpp"
#include "sphererep/representation.hpp"

namespace sphererep {

/// Vertex sets V_0..V_k at distance exactly s from the edge e (V_0 holds
/// its endpoints). Sets are sorted; deeper layers may be empty on small
/// graphs.
inline std::vector<std::vector<int>> ball_layers(const Graph& g, Edge e, int k) {
    g.edge_index(e.first, e.second);
    if (k < 0) throw OutOfRange("ball_layers: radius must be nonnegative");
    const std::vector<int> d = bfs_distances(g, {e.first, e.second});
    std::vector<std::vector<int>> layers(k + 1);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (d[v] >= 0 && d[v] <= k) layers[d[v]].push_back(v);
    return layers;
}

/// Sparse test vector supported on the distance layers around two far-apart
/// edges: +(d-1)^(-s/2) on the layers of e, the negative on the layers of
/// ebar.
struct NilliVector {
    Edge e;
    Edge ebar;
    int k = 0;
    int n = 0;
    std::vector<std::pair<int, double>> entries;  // sorted by vertex

    std::vector<double> dense() const {
        std::vector<double> v(n, 0.0);
        for (const auto& [vertex, value] : entries) v[vertex] = value;
        return v;
    }
};

inline NilliVector nilli_vector(const Graph& g, Edge e, Edge ebar, int k) {
    if (!g.is_regular()) throw NotRegular("nilli_vector: graph is not regular");
    if (k < 0) throw OutOfRange("nilli_vector: radius must be nonnegative");
    const int d = g.regular_degree();
    const std::optional<int> separation = edge_dist(g, e, ebar);
    if (separation.has_value() && *separation < 2 * k + 2)
        throw TooClose("nilli_vector: edges at distance " + std::to_string(*separation) +
                       ", need at least " + std::to_string(2 * k + 2));

    NilliVector w;
    w.e = normalized(e.first, e.second);
    w.ebar = normalized(ebar.first, ebar.second);
    w.k = k;
    w.n = g.vertex_count();
    const auto add_side = [&](Edge side, double sign) {
        const std::vector<int> dist_to = bfs_distances(g, {side.first, side.second});
        for (int v = 0; v < g.vertex_count(); ++v)
            if (dist_to[v] >= 0 && dist_to[v] <= k)
                w.entries.emplace_back(v, sign * std::pow(static_cast<double>(d - 1),
                                                          -0.5 * dist_to[v]));
    };
    add_side(w.e, 1.0);
    add_side(w.ebar, -1.0);
    std::sort(w.entries.begin(), w.entries.end());
    return w;
}

struct NilliIdentities {
    double norm_sq = 0.0;
    double quad = 0.0;      // w A w^T
    bool tree_like = false;  // induced subgraph on the support is acyclic
};

/// Exact ||w||^2 and w A w^T, plus whether the support neighbourhoods are
/// acyclic. In the tree-like case these equal 4(k+1) and 4 + 8k sqrt(d-1).
inline NilliIdentities nilli_identities(const Graph& g, const NilliVector& w) {
    NilliIdentities out;
    std::vector<double> dense = w.dense();
    std::vector<char> support(g.vertex_count(), 0);
    for (const auto& [v, value] : w.entries) {
        out.norm_sq += value * value;
        support[v] = 1;
    }
    int induced_edges = 0;
    for (const auto& [u, v] : g.edges()) {
        if (support[u] && support[v]) ++induced_edges;
        out.quad += 2.0 * dense[u] * dense[v];
    }
    // acyclic iff edges = vertices - components on the induced subgraph
    int components = 0;
    std::vector<char> seen(g.vertex_count(), 0);
    for (const auto& [root, value] : w.entries) {
        if (seen[root]) continue;
        ++components;
        std::vector<int> stack{root};
        seen[root] = 1;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int y : g.neighbors(x))
                if (support[y] && !seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
        }
    }
    out.tree_like = induced_edges == static_cast<int>(w.entries.size()) - components;
    return out;
}

/// Two enumerations of E(G) pairing every edge with a partner at distance
/// at least 2k+2: pairs[i] = (edge index, partner edge index), with both
/// coordinate sequences permutations of the edge list.
struct EdgePairing {
    std::vector<std::pair<int, int>> pairs;
    int k = 0;
};

namespace detail {

/// Hopcroft-Karp maximum matching on a bipartite graph given as left-side
/// adjacency lists. Returns match_left (-1 for unmatched).
inline std::vector<int> hopcroft_karp(const std::vector<std::vector<int>>& adj, int right_size) {
    const int left_size = static_cast<int>(adj.size());
    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<int> match_left(left_size, -1), match_right(right_size, -1), layer(left_size);

    auto bfs = [&]() {
        std::queue<int> queue;
        for (int u = 0; u < left_size; ++u) {
            if (match_left[u] < 0) {
                layer[u] = 0;
                queue.push(u);
            } else {
                layer[u] = kInf;
            }
        }
        bool reachable = false;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop();
            for (int v : adj[u]) {
                const int w = match_right[v];
                if (w < 0) {
                    reachable = true;
                } else if (layer[w] == kInf) {
                    layer[w] = layer[u] + 1;
                    queue.push(w);
                }
            }
        }
        return reachable;
    };

    std::function<bool(int)> dfs = [&](int u) {
        for (int v : adj[u]) {
            const int w = match_right[v];
            if (w < 0 || (layer[w] == layer[u] + 1 && dfs(w))) {
                match_left[u] = v;
                match_right[v] = u;
                return true;
            }
        }
        layer[u] = kInf;
        return false;
    };

    while (bfs())
        for (int u = 0; u < left_size; ++u)
            if (match_left[u] < 0) dfs(u);
    return match_left;
}

/// Distance from every vertex to edge i, one multi-source BFS per edge.
inline std::vector<std::vector<int>> edge_vertex_distances(const Graph& g) {
    std::vector<std::vector<int>> out;
    out.reserve(g.edges().size());
    for (const auto& [u, v] : g.edges()) out.push_back(bfs_distances(g, {u, v}));
    return out;
}

}  // namespace detail

/// Perfect matching in the auxiliary bipartite graph whose sides are two
/// copies of E(G) and whose edges join pairs at distance >= 2k+2
/// (unreachable counts as far). Throws NoPairing when no perfect matching
/// exists, which is the implicit size condition of the construction.
inline EdgePairing edge_pairing(const Graph& g, int k) {
    if (!g.is_regular()) throw NotRegular("edge_pairing: graph is not regular");
    if (k < 0) throw OutOfRange("edge_pairing: radius must be nonnegative");
    const int m = g.edge_count();
    const int threshold = 2 * k + 2;
    const std::vector<std::vector<int>> dist = detail::edge_vertex_distances(g);

    std::vector<std::vector<int>> adj(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const auto& [u, v] = g.edges()[j];
            const int du = dist[i][u];
            const int dv = dist[i][v];
            const bool unreachable = du < 0 && dv < 0;
            int separation = std::numeric_limits<int>::max();
            if (du >= 0) separation = du;
            if (dv >= 0) separation = std::min(separation, dv);
            if (i == j) continue;  // an edge is at distance 0 from itself
            if (unreachable || separation >= threshold) adj[i].push_back(j);
        }
    }

    const std::vector<int> match = detail::hopcroft_karp(adj, m);
    int matched = 0;
    for (int x : match)
        if (x >= 0) ++matched;
    if (matched != m)
        throw NoPairing("edge_pairing: only " + std::to_string(matched) + " of " +
                        std::to_string(m) + " edges can be paired at distance >= " +
                        std::to_string(threshold));

    EdgePairing pairing;
    pairing.k = k;
    pairing.pairs.reserve(m);
    for (int i = 0; i < m; ++i) pairing.pairs.emplace_back(i, match[i]);
    return pairing;
}

struct GirthRepresentation {
    Matrix matrix;            // rows are the scaled test vectors
    double rho = 0.0;         // exact rho of the matrix
    double closed_form = 0.0;  // (v/2)(2 sqrt(d-1) - (2 sqrt(d-1) - 1)/(k+1))
};

/// Constructive lower-bound representation for d-regular graphs of girth
/// above 2k+2: one scaled test vector per edge pair, scaled by
/// 1/sqrt(2d(k+1)). Under the girth hypothesis the result is exactly unit
/// and barycentre-0 and its rho matches the closed form.
inline GirthRepresentation girth_representation(const Graph& g, int k) {
    if (!g.is_regular()) throw NotRegular("girth_representation: graph is not regular");
    const std::optional<int> gi = girth(g);
    if (gi.has_value() && *gi <= 2 * k + 2)
        throw GirthTooSmall("girth_representation: girth " + std::to_string(*gi) +
                            " must exceed " + std::to_string(2 * k + 2));
    const EdgePairing pairing = edge_pairing(g, k);

    const int n = g.vertex_count();
    const int m = g.edge_count();
    const int d = g.regular_degree();
    const double t = std::sqrt(2.0 * d * (k + 1));

    Matrix w(m, n);
    for (int i = 0; i < m; ++i) {
        const NilliVector row = nilli_vector(g, g.edges()[pairing.pairs[i].first],
                                             g.edges()[pairing.pairs[i].second], k);
        for (const auto& [v, value] : row.entries) w(i, v) = value / t;
    }

    const Residuals res = validate(g, w);
    if (res.unit > 1e-9)
        throw NotUnit("girth_representation: column norm residual " + std::to_string(res.unit) +
                      " (tree-likeness violated)");
    if (res.barycentre > 1e-9 * n)
        throw NotUnit("girth_representation: barycentre residual " + std::to_string(res.barycentre));

    GirthRepresentation out;
    out.rho = rho_edges(g, w);
    const double root = std::sqrt(static_cast<double>(d - 1));
    out.closed_form = 0.5 * n * (2.0 * root - (2.0 * root - 1.0) / (k + 1));
    out.matrix = std::move(w);
    return out;
}

/// Smallest radius k for which the certificate's deficit
/// (2 sqrt(d-1) - 1)/(k+1) drops to eps/2, i.e. the radius that brings the
/// lower bound within eps of 2 sqrt(d-1) per vertex pair.
inline int radius_for_accuracy(int d, double eps) {
    if (d < 2) throw OutOfRange("radius_for_accuracy: need degree >= 2");
    if (eps <= 0.0) throw OutOfRange("radius_for_accuracy: need eps > 0");
    const double deficit = 2.0 * std::sqrt(static_cast<double>(d - 1)) - 1.0;
    int k = 0;
    while (deficit / (k + 1) > 0.5 * eps) ++k;
    return k;
}

/// Edges within distance k of a cycle of length at most 2k+2.
inline std::vector<Edge> bad_edges(const Graph& g, int k, long long budget = 50'000'000) {
    if (k < 0) throw OutOfRange("bad_edges: radius must be nonnegative");
    std::vector<Edge> out;
    if (2 * k + 2 < 3) return out;
    const std::vector<std::vector<int>> cycles = enumerate_cycles_upto(g, 2 * k + 2, budget);
    if (cycles.empty()) return out;
    std::vector<int> sources;
    std::vector<char> on_cycle(g.vertex_count(), 0);
    for (const auto& cycle : cycles)
        for (int v : cycle)
            if (!on_cycle[v]) {
                on_cycle[v] = 1;
                sources.push_back(v);
            }
    const std::vector<int> d = bfs_distances(g, sources);
    for (const auto& e : g.edges()) {
        const int du = d[e.first];
        const int dv = d[e.second];
        if ((du >= 0 && du <= k) || (dv >= 0 && dv <= k)) out.push_back(e);
    }
    return out;
}

/// Nonnegative vertex weights on a complete graph; the repair construction
/// requires the star condition f(v) <= f(V)/2 for every vertex.
using WeightProfile = std::vector<double>;

struct PairWeight {
    int u = 0;
    int v = 0;
    double value = 0.0;
};

namespace detail {

inline void repair_recurse(std::vector<int>& active, std::vector<double>& f,
                           std::vector<PairWeight>& out) {
    const std::size_t count = active.size();
    double total = 0.0;
    for (int v : active) total += f[v];
    const double eps = 1e-12 * std::max(1.0, total);
    if (count <= 1 || total <= eps) return;

    auto emit = [&out](int a, int b, double value) {
        if (value > 0.0) out.push_back({std::min(a, b), std::max(a, b), value});
    };

    // equality case: a vertex carrying half the total weight takes every
    // positive edge
    for (int v : active)
        if (f[v] >= 0.5 * total - eps) {
            for (int u : active)
                if (u != v && f[u] > 0.0) emit(u, v, std::sqrt(f[u]));
            return;
        }

    // x: smallest positive weight; y: heaviest among the rest
    int x = -1;
    for (int v : active)
        if (f[v] > eps && (x < 0 || f[v] < f[x])) x = v;
    int y = -1;
    for (int v : active)
        if (v != x && (y < 0 || f[v] > f[y])) y = v;

    // move x's weight onto the edge xy and recurse on the smaller graph,
    // unless that breaks the star condition somewhere
    const double fx = f[x];
    double worst = -1.0;
    int violator = -1;
    for (int v : active)
        if (v != x && v != y && f[v] > worst) {
            worst = f[v];
            violator = v;
        }
    const double reduced_total = total - 2.0 * fx;
    if (violator < 0 || worst <= 0.5 * reduced_total + eps) {
        f[y] -= fx;
        if (f[y] < 0.0) f[y] = 0.0;
        std::vector<int> rest;
        rest.reserve(count - 1);
        for (int v : active)
            if (v != x) rest.push_back(v);
        repair_recurse(rest, f, out);
        emit(x, y, std::sqrt(fx));
        return;
    }

    // shifting weight off x and y makes the worst vertex exactly tight,
    // which the equality case resolves directly; the edge xy then absorbs
    // the shifted amount
    const double delta = 0.5 * total - f[violator];
    f[x] = std::max(0.0, f[x] - delta);
    f[y] = std::max(0.0, f[y] - delta);
    for (int u : active)
        if (u != violator && f[u] > 0.0) emit(u, violator, std::sqrt(f[u]));
    emit(x, y, std::sqrt(std::max(0.0, delta)));
}

}  // namespace detail

/// Edge weights g on the complete graph with sum_{e : v in e} g(e)^2 = f(v)
/// for every vertex, following the recursive construction. Throws
/// StarViolated when some f(v) exceeds half the total weight.
inline std::vector<PairWeight> weight_repair(const WeightProfile& f) {
    const int n = static_cast<int>(f.size());
    double total = 0.0;
    for (int v = 0; v < n; ++v) {
        if (f[v] < 0.0)
            throw OutOfRange("weight_repair: negative weight at vertex " + std::to_string(v));
        total += f[v];
    }
    const double eps = 1e-12 * std::max(1.0, total);
    for (int v = 0; v < n; ++v)
        if (f[v] > 0.5 * total + eps)
            throw StarViolated("weight_repair: vertex " + std::to_string(v) + " holds " +
                               std::to_string(f[v]) + " > half of " + std::to_string(total));

    std::vector<int> active(n);
    std::iota(active.begin(), active.end(), 0);
    std::vector<double> work(f);
    std::vector<PairWeight> out;
    detail::repair_recurse(active, work, out);
    return out;
}

struct RandomRegularRepresentation {
    Matrix matrix;
    double rho = 0.0;        // exact rho of the full matrix
    double row_bound = 0.0;  // (1/2t^2) sum over good pairs of w_i A w_i^T
    int good_pairs = 0;
    int bad_edge_count = 0;
    int repair_rows = 0;
    bool repair_touches_edges = false;  // some repair pair is an edge of G
};

/// Lower-bound representation for regular graphs with short cycles: pair
/// all edges, keep the pairs in which both edges are good (far from every
/// short cycle), scale as in the girth construction, then top up the
/// deficient column norms with two-entry repair rows from weight_repair.
/// Every row sums to zero, so the result is exactly barycentre-0; the
/// repair makes every column unit. rho is reported exactly; row_bound is
/// the partial sum the inequality chain uses, which lower-bounds rho only
/// when no repair pair is an edge of G (hence the flag).
inline RandomRegularRepresentation random_regular_representation(const Graph& g, int k,
                                                                 long long budget = 50'000'000) {
    const EdgePairing pairing = edge_pairing(g, k);
    const std::vector<Edge> bad = bad_edges(g, k, budget);
    std::vector<char> is_bad(g.edge_count(), 0);
    for (const auto& e : bad) is_bad[g.edge_index(e.first, e.second)] = 1;

    const int n = g.vertex_count();
    const int d = g.regular_degree();
    const double t = std::sqrt(2.0 * d * (k + 1));

    std::vector<int> good_indices;
    for (int i = 0; i < g.edge_count(); ++i)
        if (!is_bad[pairing.pairs[i].first] && !is_bad[pairing.pairs[i].second])
            good_indices.push_back(i);

    RandomRegularRepresentation out;
    out.good_pairs = static_cast<int>(good_indices.size());
    out.bad_edge_count = static_cast<int>(bad.size());

    std::vector<NilliVector> rows;
    rows.reserve(good_indices.size());
    for (int i : good_indices)
        rows.push_back(nilli_vector(g, g.edges()[pairing.pairs[i].first],
                                    g.edges()[pairing.pairs[i].second], k));

    for (const NilliVector& w : rows) out.row_bound += nilli_identities(g, w).quad;
    out.row_bound /= 2.0 * t * t;

    // column deficiencies f(v) = 1 - ||u_v||^2 of the scaled good rows
    std::vector<double> deficiency(n, 1.0);
    for (const NilliVector& w : rows)
        for (const auto& [v, value] : w.entries) deficiency[v] -= value * value / (t * t);
    for (int v = 0; v < n; ++v) {
        if (deficiency[v] < -1e-9)
            throw Error("random_regular_representation: column norm exceeds 1 at vertex " +
                        std::to_string(v) + " by " + std::to_string(-deficiency[v]));
        if (deficiency[v] < 0.0) deficiency[v] = 0.0;
    }

    const std::vector<PairWeight> repair = weight_repair(deficiency);
    out.repair_rows = static_cast<int>(repair.size());

    Matrix full(static_cast<int>(rows.size()) + out.repair_rows, n);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [v, value] : rows[i].entries) full(static_cast<int>(i), v) = value / t;
    for (std::size_t j = 0; j < repair.size(); ++j) {
        const int row = static_cast<int>(rows.size() + j);
        full(row, repair[j].u) = repair[j].value;
        full(row, repair[j].v) = -repair[j].value;
        if (g.has_edge(repair[j].u, repair[j].v)) out.repair_touches_edges = true;
    }

    const Residuals res = validate(g, full);
    if (res.unit > 1e-8 || res.barycentre > 1e-8 * n)
        throw NotUnit("random_regular_representation: residuals (" + std::to_string(res.unit) +
                      ", " + std::to_string(res.barycentre) + ") too large");

    out.rho = rho_edges(g, full);
    out.matrix = std::move(full);
    return out;
}

}  // namespace sphererep
