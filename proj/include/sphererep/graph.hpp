#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sphererep/errors.hpp"
#include "sphererep/rng.hpp"

namespace sphererep {

using Edge = std::pair<int, int>;  // stored normalized, first < second

inline Edge normalized(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Undirected simple graph on vertices 0..n-1. Edges are deduplicated and
/// kept in sorted order, adjacency lists sorted ascending; all queries are
/// read-only and safe to call concurrently.
class Graph {
public:
    Graph() = default;

    static Graph from_edges(int n, const std::vector<Edge>& edge_list) {
        if (n < 0) throw OutOfRange("graph: negative vertex count");
        Graph g;
        g.n_ = n;
        std::set<Edge> dedup;
        for (const auto& [u, v] : edge_list) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw OutOfRange("graph: vertex id out of range in edge (" + std::to_string(u) +
                                 ", " + std::to_string(v) + ") with n = " + std::to_string(n));
            if (u == v) throw SelfLoop("graph: self-loop at vertex " + std::to_string(u));
            dedup.insert(normalized(u, v));
        }
        g.edges_.assign(dedup.begin(), dedup.end());
        g.adj_.assign(n, {});
        for (const auto& [u, v] : g.edges_) {
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
        }
        for (auto& list : g.adj_) std::sort(list.begin(), list.end());
        return g;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    const std::vector<int>& neighbors(int v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(int v) const {
        check_vertex(v);
        return static_cast<int>(adj_[v].size());
    }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
    }

    bool is_regular() const {
        if (n_ == 0) return true;
        const std::size_t d = adj_[0].size();
        for (const auto& list : adj_)
            if (list.size() != d) return false;
        return true;
    }

    /// Common degree of a regular graph.
    int regular_degree() const {
        if (!is_regular()) throw NotRegular("regular_degree: graph is not regular");
        return n_ == 0 ? 0 : static_cast<int>(adj_[0].size());
    }

    bool is_connected() const {
        if (n_ <= 1) return true;
        std::vector<char> seen(n_, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int u : adj_[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    ++count;
                    stack.push_back(u);
                }
        }
        return count == n_;
    }

    /// Index of an edge in the sorted edge list.
    int edge_index(int u, int v) const {
        const Edge e = normalized(u, v);
        const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e)
            throw EdgeNotInGraph("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                 ") not in graph");
        return static_cast<int>(it - edges_.begin());
    }

    /// FNV-1a over the vertex count and the sorted edge list; identifies the
    /// graph in reports and guards against mixing solutions across graphs.
    std::uint64_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto feed = [&h](std::uint64_t x) {
            for (int b = 0; b < 8; ++b) {
                h ^= (x >> (8 * b)) & 0xff;
                h *= 0x100000001b3ULL;
            }
        };
        feed(static_cast<std::uint64_t>(n_));
        for (const auto& [u, v] : edges_) {
            feed(static_cast<std::uint64_t>(u));
            feed(static_cast<std::uint64_t>(v));
        }
        return h;
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_)
            throw OutOfRange("vertex id " + std::to_string(v) + " out of range, n = " +
                             std::to_string(n_));
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

// ---------------------------------------------------------------------------
// generators

inline Graph cycle_graph(int n) {
    if (n < 3) throw OutOfRange("cycle: need at least 3 vertices");
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, e);
}

inline Graph complete_graph(int n) {
    if (n < 1) throw OutOfRange("complete: need at least 1 vertex");
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

inline Graph complete_bipartite_graph(int a, int b) {
    if (a < 1 || b < 1) throw OutOfRange("complete_bipartite: both sides must be non-empty");
    std::vector<Edge> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return Graph::from_edges(a + b, e);
}

/// k-dimensional hypercube with binary vertex labels: u ~ v iff the labels
/// differ in exactly one bit.
inline Graph hypercube_graph(int k) {
    if (k < 1) throw OutOfRange("hypercube: dimension must be at least 1");
    if (k > 20) throw OutOfRange("hypercube: dimension too large");
    const int n = 1 << k;
    std::vector<Edge> e;
    for (int v = 0; v < n; ++v)
        for (int b = 0; b < k; ++b) {
            const int u = v ^ (1 << b);
            if (u > v) e.emplace_back(v, u);
        }
    return Graph::from_edges(n, e);
}

/// Petersen graph: outer 5-cycle 0..4, spokes i -- i+5, inner pentagram
/// 5..9 with step 2.
inline Graph petersen_graph() {
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return Graph::from_edges(10, e);
}

/// 1-skeletons of the five Platonic solids. The dodecahedron uses the
/// generalized-Petersen form GP(10, 2); the icosahedron the two-pentagon
/// antiprism form with apexes 0 and 11.
inline Graph platonic_graph(const std::string& name) {
    if (name == "tetrahedron") return complete_graph(4);
    if (name == "cube") return hypercube_graph(3);
    if (name == "octahedron") {
        std::vector<Edge> e;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                if (j != i + 3) e.emplace_back(i, j);
        return Graph::from_edges(6, e);
    }
    if (name == "dodecahedron") {
        std::vector<Edge> e;
        for (int i = 0; i < 10; ++i) {
            e.emplace_back(i, (i + 1) % 10);
            e.emplace_back(i, 10 + i);
            e.emplace_back(10 + i, 10 + (i + 2) % 10);
        }
        return Graph::from_edges(20, e);
    }
    if (name == "icosahedron") {
        std::vector<Edge> e;
        for (int i = 1; i <= 5; ++i) {
            e.emplace_back(0, i);
            e.emplace_back(i, i % 5 + 1);                 // top pentagon
            e.emplace_back(i + 5, (i % 5) + 6);           // bottom pentagon
            e.emplace_back(11, i + 5);
            e.emplace_back(i, i + 5);                     // zigzag down
            e.emplace_back(i, (i % 5) + 6);               // zigzag across
        }
        return Graph::from_edges(12, e);
    }
    throw UnknownName("platonic: unknown solid '" + name + "'");
}

// ---------------------------------------------------------------------------
// metric queries

/// Distances from a set of source vertices; -1 marks unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, const std::vector<int>& sources) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<int> queue;
    for (int s : sources) {
        g.check_vertex(s);
        if (dist[s] != 0) {
            dist[s] = 0;
            queue.push(s);
        }
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop();
        for (int u : g.neighbors(v))
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push(u);
            }
    }
    return dist;
}

/// Shortest-path distance; nullopt when the vertices are in different
/// components.
inline std::optional<int> dist(const Graph& g, int u, int v) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (u == v) return 0;
    const std::vector<int> d = bfs_distances(g, {u});
    return d[v] < 0 ? std::nullopt : std::optional<int>(d[v]);
}

/// Distance between two edges: the minimum vertex distance over endpoint
/// pairs, 0 when they share an endpoint. nullopt when the edges live in
/// different components.
inline std::optional<int> edge_dist(const Graph& g, Edge e, Edge f) {
    g.edge_index(e.first, e.second);
    g.edge_index(f.first, f.second);
    if (e.first == f.first || e.first == f.second || e.second == f.first || e.second == f.second)
        return 0;
    const std::vector<int> d = bfs_distances(g, {e.first, e.second});
    int best = -1;
    for (int x : {f.first, f.second})
        if (d[x] >= 0 && (best < 0 || d[x] < best)) best = d[x];
    return best < 0 ? std::nullopt : std::optional<int>(best);
}

/// Length of a shortest cycle; nullopt for forests. Classic BFS bound: for
/// every root, any non-tree edge (x, y) found during BFS closes a walk of
/// length dist(x) + dist(y) + 1 containing a cycle no longer than that, and
/// the minimum over all roots is attained exactly.
inline std::optional<int> girth(const Graph& g) {
    const int n = g.vertex_count();
    int best = -1;
    std::vector<int> d(n), parent(n);
    for (int root = 0; root < n; ++root) {
        std::fill(d.begin(), d.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::queue<int> queue;
        d[root] = 0;
        queue.push(root);
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop();
            if (best > 0 && 2 * d[v] + 1 > best) break;
            for (int u : g.neighbors(v)) {
                if (d[u] < 0) {
                    d[u] = d[v] + 1;
                    parent[u] = v;
                    queue.push(u);
                } else if (u != parent[v]) {
                    const int len = d[u] + d[v] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
        if (best == 3) break;
    }
    return best < 0 ? std::nullopt : std::optional<int>(best);
}

// ---------------------------------------------------------------------------
// cycle enumeration

/// Counts of distinct cycles by length; lengths with no cycles are absent.
struct CycleCensus {
    int max_length = 0;
    std::map<int, long long> counts;
};

namespace detail {

/// Enumerates every distinct cycle of length 3..max_length once. A cycle is
/// rooted at its minimum vertex and traversed in the direction that makes
/// the second vertex smaller than the last, which kills rotations and
/// reflections. `budget` caps the number of DFS expansions.
inline void enumerate_cycles(const Graph& g, int max_length, long long budget,
                             const std::function<void(const std::vector<int>&)>& emit) {
    if (max_length < 3) throw OutOfRange("cycle enumeration: max length below 3");
    const int n = g.vertex_count();
    long long expansions = 0;
    std::vector<int> path;
    std::vector<char> on_path(n, 0);

    auto dfs = [&](auto&& self, int v, int root) -> void {
        for (int w : g.neighbors(v)) {
            if (++expansions > budget)
                throw BudgetExceeded("cycle enumeration: budget of " + std::to_string(budget) +
                                     " expansions exceeded");
            if (w == root) {
                if (path.size() >= 3 && path[1] < path.back()) emit(path);
                continue;
            }
            if (w <= root || on_path[w] || static_cast<int>(path.size()) >= max_length) continue;
            path.push_back(w);
            on_path[w] = 1;
            self(self, w, root);
            on_path[w] = 0;
            path.pop_back();
        }
    };

    for (int root = 0; root < n; ++root) {
        path.assign(1, root);
        on_path[root] = 1;
        dfs(dfs, root, root);
        on_path[root] = 0;
    }
}

}  // namespace detail

inline std::vector<std::vector<int>> enumerate_cycles_upto(const Graph& g, int max_length,
                                                           long long budget = 50'000'000) {
    std::vector<std::vector<int>> cycles;
    detail::enumerate_cycles(g, max_length, budget,
                             [&](const std::vector<int>& c) { cycles.push_back(c); });
    return cycles;
}

/// Exact census of distinct cycles of each length 3..max_length. Intended
/// for short lengths on sparse graphs; denser inputs hit the budget.
inline CycleCensus count_cycles_upto(const Graph& g, int max_length,
                                     long long budget = 50'000'000) {
    CycleCensus census;
    census.max_length = max_length;
    detail::enumerate_cycles(g, max_length, budget, [&](const std::vector<int>& c) {
        ++census.counts[static_cast<int>(c.size())];
    });
    return census;
}

// ---------------------------------------------------------------------------
// random regular graphs

/// Uniform d-regular simple graph by the configuration (pairing) model:
/// shuffle the n*d half-edges, pair them consecutively, and restart from
/// scratch whenever the pairing produces a loop or a parallel edge. The full
/// restart preserves uniformity over simple pairings. Deterministic for a
/// fixed seed.
inline Graph random_regular(int n, int d, std::uint64_t seed, int max_restarts = 10'000) {
    if (n < 1) throw OutOfRange("random_regular: need at least one vertex");
    if (d < 0 || d >= n) throw OutOfRange("random_regular: need 0 <= d < n");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw DegreeParity("random_regular: n*d = " + std::to_string(static_cast<long long>(n) * d) +
                           " is odd");
    if (d == 0) return Graph::from_edges(n, {});

    RandomStream rng(seed);
    const int points = n * d;
    std::vector<int> perm(points);
    std::vector<char> seen;
    for (int attempt = 0; attempt < max_restarts; ++attempt) {
        for (int i = 0; i < points; ++i) perm[i] = i;
        for (int i = points - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
            std::swap(perm[i], perm[j]);
        }
        seen.assign(static_cast<std::size_t>(n) * n, 0);
        std::vector<Edge> edges;
        edges.reserve(points / 2);
        bool ok = true;
        for (int i = 0; i < points; i += 2) {
            const int u = perm[i] / d;
            const int v = perm[i + 1] / d;
            if (u == v) {
                ok = false;
                break;
            }
            char& flag = seen[static_cast<std::size_t>(std::min(u, v)) * n + std::max(u, v)];
            if (flag) {
                ok = false;
                break;
            }
            flag = 1;
            edges.push_back(normalized(u, v));
        }
        if (ok) return Graph::from_edges(n, edges);
    }
    throw RejectionLimit("random_regular: no simple pairing found in " +
                         std::to_string(max_restarts) + " restarts (n = " + std::to_string(n) +
                         ", d = " + std::to_string(d) + ")");
}

/// Disjoint union, relabelling the second graph's vertices upward.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<Edge> e = a.edges();
    for (const auto& [u, v] : b.edges()) e.emplace_back(a.vertex_count() + u, a.vertex_count() + v);
    return Graph::from_edges(a.vertex_count() + b.vertex_count(), e);
}

}  // namespace sphererep
