#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sphererep/graph.hpp"
#include "sphererep/matrix.hpp"
#include "sphererep/sdp.hpp"

namespace sphererep {

using json = nlohmann::json;

/// Edge-list text format: first non-comment line `n m`, then m lines `u v`,
/// 0-indexed and whitespace-separated. Lines starting with '#' are ignored.
inline Graph read_edge_list(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++line_no;
            std::size_t first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string header;
    if (!next_line(header)) throw ParseError("edge list: missing header line");
    long long n = 0, m = 0;
    {
        std::istringstream ss(header);
        if (!(ss >> n >> m) || n < 0 || m < 0)
            throw ParseError("edge list: bad header at line " + std::to_string(line_no));
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        std::string body;
        if (!next_line(body))
            throw ParseError("edge list: expected " + std::to_string(m) + " edges, got " +
                             std::to_string(i));
        std::istringstream ss(body);
        long long u = 0, v = 0;
        if (!(ss >> u >> v))
            throw ParseError("edge list: bad edge at line " + std::to_string(line_no));
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError("edge list: vertex out of range at line " + std::to_string(line_no));
        if (u == v) throw ParseError("edge list: self-loop at line " + std::to_string(line_no));
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return Graph::from_edges(static_cast<int>(n), edges);
}

inline Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

/// Atomic file write: write to a sibling temp file, then rename over the
/// target.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out << content;
    }
    std::filesystem::rename(tmp, target);
}

inline std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// JSON serialization

inline json matrix_to_json(const Matrix& m) {
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

inline Matrix matrix_from_json(const json& j) {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const std::vector<double> data = j.at("data").get<std::vector<double>>();
    if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows) * cols)
        throw ParseError("matrix json: inconsistent dimensions");
    Matrix m(rows, cols);
    m.data() = data;
    return m;
}

/// Solution report: objective, residuals and the factor; bound and gap are
/// present for regular graphs only, where the tight dual point exists.
inline json solution_to_json(const PrimalSolution& p, std::optional<double> upper_bound,
                             std::optional<double> gap) {
    json j{{"objective", p.objective},
           {"residual_unit", p.residual_unit},
           {"residual_barycentre", p.residual_barycentre},
           {"rank", p.factor.rows()},
           {"iterations", p.iterations},
           {"converged", p.converged},
           {"factor", matrix_to_json(p.factor)}};
    j["upper_bound"] = upper_bound.has_value() ? json(*upper_bound) : json(nullptr);
    j["gap"] = gap.has_value() ? json(*gap) : json(nullptr);
    return j;
}

}  // namespace sphererep
