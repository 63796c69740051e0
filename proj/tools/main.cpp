// Command-line front end: graph ingestion, the semidefinite solver, bound
// certificates, random-regular experiments, projection checks and SVG
// drawings, all as reproducible seeded runs emitting JSON reports.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sphererep/girth_certificates.hpp"
#include "sphererep/io.hpp"
#include "sphererep/representation.hpp"
#include "sphererep/sdp.hpp"
#include "sphererep/svg.hpp"
#include "sphererep/version.hpp"

namespace {

using namespace sphererep;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitCertificate = 3;

struct GraphSource {
    std::string path;
    std::string gen;
    std::string save_path;  // when set, the loaded graph is written back out
};

struct SolverFlags {
    int rank = 0;
    double tol = 1e-8;
    int max_iters = 500;
    int max_outer = 50;
    int restarts = 3;
};

std::vector<long long> parse_int_list(const std::string& text) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw ParseError("empty field in '" + text + "'");
        out.push_back(std::stoll(item));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw ParseError("empty field in '" + text + "'");
        out.push_back(std::stod(item));
    }
    return out;
}

/// Generator spec syntax: name[:params], e.g. cycle:20, hypercube:5,
/// complete_bipartite:3,3, platonic:cube, random:200,3 (random samples with
/// the run seed).
Graph graph_from_spec(const std::string& spec, std::uint64_t seed) {
    const std::size_t colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string params = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto need = [&](std::size_t count) {
        const auto values = parse_int_list(params);
        if (values.size() != count)
            throw ParseError("generator '" + name + "' expects " + std::to_string(count) +
                             " parameter(s)");
        return values;
    };
    try {
        if (name == "cycle") return cycle_graph(static_cast<int>(need(1)[0]));
        if (name == "complete") return complete_graph(static_cast<int>(need(1)[0]));
        if (name == "complete_bipartite") {
            const auto v = need(2);
            return complete_bipartite_graph(static_cast<int>(v[0]), static_cast<int>(v[1]));
        }
        if (name == "hypercube") return hypercube_graph(static_cast<int>(need(1)[0]));
        if (name == "petersen") return petersen_graph();
        if (name == "platonic") return platonic_graph(params);
        if (name == "random") {
            const auto v = need(2);
            return random_regular(static_cast<int>(v[0]), static_cast<int>(v[1]), seed);
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("generator '" + spec + "': bad integer parameter");
    }
    throw UnknownName("unknown generator '" + name + "'");
}

Graph load_graph(const GraphSource& src, std::uint64_t seed) {
    if (src.path.empty() == src.gen.empty())
        throw ParseError("exactly one input source required: a file argument or --gen");
    const Graph g = src.gen.empty() ? read_edge_list_file(src.path) : graph_from_spec(src.gen, seed);
    if (!src.save_path.empty()) {
        std::ostringstream buffer;
        write_edge_list(buffer, g);
        write_file_atomic(src.save_path, buffer.str());
    }
    return g;
}

json envelope(const std::string& command, std::uint64_t seed) {
    return json{{"schema", 1}, {"version", kVersion}, {"command", command}, {"seed", seed}};
}

json graph_summary(const Graph& g) {
    json j{{"n", g.vertex_count()},
           {"m", g.edge_count()},
           {"regular", g.is_regular()},
           {"connected", g.is_connected()}};
    if (g.is_regular()) j["degree"] = g.regular_degree();
    return j;
}

void emit(const json& report, const std::string& report_path) {
    const std::string text = report.dump(2) + "\n";
    if (report_path.empty())
        std::cout << text;
    else
        write_file_atomic(report_path, text);
}

void emit_raw(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file_atomic(out_path, content);
}

SolverOptions make_solver_options(const SolverFlags& flags, std::uint64_t seed) {
    SolverOptions opts;
    if (flags.rank > 0) opts.rank = flags.rank;
    opts.tol_feas = flags.tol;
    opts.max_inner = flags.max_iters;
    opts.max_outer = flags.max_outer;
    opts.restarts = flags.restarts;
    opts.seed = seed;
    return opts;
}

json solver_tolerances(const SolverOptions& opts) {
    return json{{"tol_feas", opts.tol_feas}, {"tol_obj", opts.tol_obj}};
}

// ---------------------------------------------------------------------------

int run_rho(const GraphSource& src, const SolverFlags& flags, std::uint64_t seed,
            const std::string& report_path) {
    const Graph g = load_graph(src, seed);
    const SolverOptions opts = make_solver_options(flags, seed);
    const PrimalSolution sol = solve_primal(g, opts);

    std::optional<double> upper;
    std::optional<double> gap;
    json cert_json = nullptr;
    if (g.is_regular() && g.vertex_count() >= 2) {
        // the bound holds for any regular graph; the tight certificate and
        // the gap claim need connectivity
        upper = upper_bound_regular(g);
        if (g.is_connected()) {
            const DualCertificate cert = dual_certificate_regular(g);
            gap = duality_gap(sol, cert);
            cert_json = json{{"dual_objective", cert.dual_objective},
                             {"y0", cert.y0},
                             {"y_v", cert.y.front()},
                             {"min_eig_m", cert.min_eig_m}};
        }
    }

    json report = envelope("rho", seed);
    report["input_hash"] = hash_hex(g.hash());
    report["tolerances"] = solver_tolerances(opts);
    report["graph"] = graph_summary(g);
    report["solution"] = solution_to_json(sol, upper, gap);
    report["certificate"] = cert_json;
    emit(report, report_path);
    return sol.converged ? kExitOk : kExitNotConverged;
}

int run_draw(const GraphSource& src, const SolverFlags& flags, const std::string& method, int dim,
             std::uint64_t seed, const std::string& out_path) {
    const Graph g = load_graph(src, seed);
    Matrix layout;
    if (method == "spectral") {
        layout = spectral_drawing(g, dim);
    } else if (method == "sdp") {
        layout = solve_primal(g, make_solver_options(flags, seed)).factor;
    } else {
        throw ParseError("draw: method must be 'sdp' or 'spectral'");
    }
    layout = project(layout, dim, RandomStream::mix(seed, 0x70726f6aULL));
    if (dim == 2) {
        emit_raw(render_svg(g, layout), out_path);
    } else {
        json report = envelope("draw", seed);
        report["input_hash"] = hash_hex(g.hash());
        report["method"] = method;
        report["dim"] = dim;
        report["layout"] = matrix_to_json(layout);
        emit(report, out_path);
    }
    return kExitOk;
}

int run_bound(const GraphSource& src, int k, std::uint64_t seed, const std::string& report_path) {
    const Graph g = load_graph(src, seed);
    json report = envelope("bound", seed);
    report["input_hash"] = hash_hex(g.hash());
    report["graph"] = graph_summary(g);
    report["k"] = k;
    report["tolerances"] = json{{"residuals", 1e-9}};

    const double upper = upper_bound_regular(g);
    report["upper_bound"] = upper;
    const std::optional<int> gi = girth(g);
    report["girth"] = gi.has_value() ? json(*gi) : json(nullptr);

    try {
        const GirthRepresentation rep = girth_representation(g, k);
        report["lower_bound"] = rep.closed_form;
        report["certificate"] = json{{"k", k},
                                     {"paired", g.edge_count()},
                                     {"good_pairs", g.edge_count()},
                                     {"bad_edges", 0},
                                     {"rho_certificate", rep.rho},
                                     {"theorem5_bound", rep.closed_form},
                                     {"upper_bound", upper}};
    } catch (const GirthTooSmall& e) {
        report["lower_bound"] = nullptr;
        report["certificate"] = nullptr;
        report["reason"] = std::string("GirthTooSmall: ") + e.what();
    } catch (const NoPairing& e) {
        report["lower_bound"] = nullptr;
        report["certificate"] = nullptr;
        report["reason"] = std::string("NoPairing: ") + e.what();
    }
    emit(report, report_path);
    return kExitOk;
}

int run_nilli(const GraphSource& src, int k, std::vector<int> e_spec, std::vector<int> ebar_spec,
              std::uint64_t seed, const std::string& report_path) {
    const Graph g = load_graph(src, seed);
    Edge e;
    Edge ebar;
    if (!e_spec.empty() || !ebar_spec.empty()) {
        if (e_spec.size() != 2 || ebar_spec.size() != 2)
            throw ParseError("nilli: --edge and --ebar each need two vertex ids");
        e = normalized(e_spec[0], e_spec[1]);
        ebar = normalized(ebar_spec[0], ebar_spec[1]);
    } else {
        // first edge pair far enough apart, in edge-list order
        bool found = false;
        for (std::size_t i = 0; i < g.edges().size() && !found; ++i)
            for (std::size_t j = 0; j < g.edges().size() && !found; ++j) {
                if (i == j) continue;
                const std::optional<int> sep = edge_dist(g, g.edges()[i], g.edges()[j]);
                if (!sep.has_value() || *sep >= 2 * k + 2) {
                    e = g.edges()[i];
                    ebar = g.edges()[j];
                    found = true;
                }
            }
        if (!found)
            throw TooClose("nilli: no edge pair at distance >= " + std::to_string(2 * k + 2));
    }

    const NilliVector w = nilli_vector(g, e, ebar, k);
    const NilliIdentities ids = nilli_identities(g, w);
    const int d = g.regular_degree();

    json report = envelope("nilli", seed);
    report["input_hash"] = hash_hex(g.hash());
    report["graph"] = graph_summary(g);
    report["k"] = k;
    report["e"] = {w.e.first, w.e.second};
    report["ebar"] = {w.ebar.first, w.ebar.second};
    const auto sep = edge_dist(g, w.e, w.ebar);
    report["edge_dist"] = sep.has_value() ? json(*sep) : json(nullptr);
    report["tolerances"] = json{{"identity", 1e-12}};
    report["norm_sq"] = ids.norm_sq;
    report["quad"] = ids.quad;
    report["tree_like"] = ids.tree_like;
    report["expected_norm_sq"] = 4.0 * (k + 1);
    report["expected_quad"] = 4.0 + 8.0 * k * std::sqrt(static_cast<double>(d - 1));
    json entries = json::array();
    for (const auto& [v, value] : w.entries) entries.push_back({v, value});
    report["entries"] = entries;
    emit(report, report_path);
    return kExitOk;
}

int run_random_regular(int n, int d, int count, int k, const SolverFlags& flags,
                       std::uint64_t seed, const std::string& report_path) {
    const int census_limit = std::max(3, 2 * k + 2);
    json samples = json::array();
    std::map<int, std::vector<double>> counts_by_len;
    std::vector<double> solver_rhos, cert_rhos;
    bool sandwich_all = true;

    for (int i = 0; i < count; ++i) {
        const std::uint64_t sample_seed = RandomStream::mix(seed, static_cast<std::uint64_t>(i));
        const Graph g = random_regular(n, d, sample_seed);
        const CycleCensus census = count_cycles_upto(g, census_limit);
        const SpectralData spec = sym_eigen(adjacency_matrix(g));
        const double lambda2 = spec.eigenvalues[1];
        const double upper = 0.5 * lambda2 * n;

        SolverOptions opts = make_solver_options(flags, sample_seed);
        const PrimalSolution sol = solve_primal(g, opts);
        solver_rhos.push_back(sol.objective);

        json cert_json = nullptr;
        std::optional<double> cert_rho;
        try {
            const RandomRegularRepresentation rep = random_regular_representation(g, k);
            cert_rho = rep.rho;
            cert_rhos.push_back(rep.rho);
            cert_json = json{{"k", k},
                             {"paired", g.edge_count()},
                             {"good_pairs", rep.good_pairs},
                             {"bad_edges", rep.bad_edge_count},
                             {"rho_certificate", rep.rho},
                             {"theorem5_bound", rep.row_bound},
                             {"upper_bound", upper}};
        } catch (const NoPairing&) {
        } catch (const StarViolated&) {
        }

        const bool sandwich = (!cert_rho.has_value() || *cert_rho <= sol.objective + 1e-6) &&
                              sol.objective <= upper + 1e-6;
        sandwich_all = sandwich_all && sandwich;

        json counts = json::object();
        for (int len = 3; len <= census_limit; ++len) {
            const auto it = census.counts.find(len);
            const double c = it == census.counts.end() ? 0.0 : static_cast<double>(it->second);
            counts[std::to_string(len)] = c;
            counts_by_len[len].push_back(c);
        }
        samples.push_back(json{{"sample", i},
                               {"seed", sample_seed},
                               {"input_hash", hash_hex(g.hash())},
                               {"cycle_counts", counts},
                               {"lambda2", lambda2},
                               {"upper_bound", upper},
                               {"certificate", cert_json},
                               {"solver_rho", sol.objective},
                               {"converged", sol.converged},
                               {"sandwich_ok", sandwich}});
    }

    auto mean_of = [](const std::vector<double>& xs) {
        double s = 0.0;
        for (double x : xs) s += x;
        return xs.empty() ? 0.0 : s / xs.size();
    };
    auto stderr_of = [&](const std::vector<double>& xs) {
        if (xs.size() < 2) return 0.0;
        const double m = mean_of(xs);
        double var = 0.0;
        for (double x : xs) var += (x - m) * (x - m);
        var /= xs.size() - 1;
        return std::sqrt(var / xs.size());
    };

    json aggregate;
    json mean_counts = json::object(), se_counts = json::object(), expected = json::object();
    bool wormald_ok = true;
    for (auto& [len, values] : counts_by_len) {
        const double mean = mean_of(values);
        const double se = stderr_of(values);
        const double predicted = std::pow(d - 1.0, len) / (2.0 * len);
        mean_counts[std::to_string(len)] = mean;
        se_counts[std::to_string(len)] = se;
        expected[std::to_string(len)] = predicted;
        if (count >= 2 && std::abs(mean - predicted) > 3.0 * se) wormald_ok = false;
    }
    aggregate["mean_counts"] = mean_counts;
    aggregate["stderr_counts"] = se_counts;
    aggregate["expected_counts"] = expected;
    aggregate["wormald_within_3se"] = wormald_ok;
    aggregate["mean_solver_rho"] = mean_of(solver_rhos);
    aggregate["mean_solver_rho_normalized"] = mean_of(solver_rhos) / (0.5 * n);
    aggregate["mean_certificate_rho"] = cert_rhos.empty() ? json(nullptr) : json(mean_of(cert_rhos));
    aggregate["sandwich_ok"] = sandwich_all;

    json report = envelope("random-regular", seed);
    report["n"] = n;
    report["d"] = d;
    report["count"] = count;
    report["k"] = k;
    report["tolerances"] = json{{"sandwich_slack", 1e-6}};
    report["samples"] = samples;
    report["aggregate"] = aggregate;
    emit(report, report_path);
    return kExitOk;
}

int run_project_check(int n, double x, long long trials, std::uint64_t seed,
                      const std::string& report_path) {
    const ProjectionCheck pc = projection_expectation_check(n, x, trials, seed);
    const bool pass = std::abs(pc.empirical_mean - pc.predicted) <= 3.0 * pc.standard_error;
    json report = envelope("project-check", seed);
    report["n"] = n;
    report["x"] = x;
    report["trials"] = trials;
    report["tolerances"] = json{{"z_threshold", 3.0}};
    report["empirical_mean"] = pc.empirical_mean;
    report["predicted"] = pc.predicted;
    report["standard_error"] = pc.standard_error;
    report["pass_3se"] = pass;
    report["angle_histogram"] = pc.angle_histogram;
    report["histogram_bins"] = pc.histogram_bins;
    emit(report, report_path);
    return kExitOk;
}

int run_repair_demo(const std::string& profile_text, int n, std::uint64_t seed,
                    const std::string& report_path) {
    WeightProfile profile;
    if (!profile_text.empty()) {
        profile = parse_double_list(profile_text);
    } else {
        if (n < 2) throw ParseError("repair-demo: need --f or --n >= 2");
        RandomStream rng(seed);
        if (n == 2) {
            // the star condition forces an equal pair
            const double w = rng.uniform01();
            profile = {w, w};
        } else {
            // rejection-sample a profile satisfying the star condition
            for (int attempt = 0; attempt < 10000 && profile.empty(); ++attempt) {
                std::vector<double> candidate;
                double total = 0.0, biggest = 0.0;
                for (int i = 0; i < n; ++i) {
                    const double w = rng.uniform01();
                    candidate.push_back(w);
                    total += w;
                    biggest = std::max(biggest, w);
                }
                if (biggest <= 0.5 * total) profile = std::move(candidate);
            }
            if (profile.empty()) throw Error("repair-demo: sampling failed");
        }
    }

    const std::vector<PairWeight> weights = weight_repair(profile);
    std::vector<double> sums(profile.size(), 0.0);
    for (const PairWeight& w : weights) {
        sums[w.u] += w.value * w.value;
        sums[w.v] += w.value * w.value;
    }
    double max_error = 0.0;
    for (std::size_t v = 0; v < profile.size(); ++v)
        max_error = std::max(max_error, std::abs(sums[v] - profile[v]));

    json report = envelope("repair-demo", seed);
    report["profile"] = profile;
    json pairs = json::array();
    for (const PairWeight& w : weights) pairs.push_back({w.u, w.v, w.value});
    report["weights"] = pairs;
    report["vertex_sums"] = sums;
    report["max_error"] = max_error;
    report["tolerances"] = json{{"vertex_sum", 1e-9}};
    emit(report, report_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum-energy spherical graph representations"};
    app.require_subcommand(1);

    GraphSource src;
    SolverFlags flags;
    std::uint64_t seed = 0;
    std::string report_path, out_path, method = "sdp", gen_help = "generator spec name[:params]";
    int dim = 2, k = 0, n = 0, d = 0, count = 1;
    double x = 1.0;
    long long trials = 100000;
    std::vector<int> e_spec, ebar_spec;
    std::string profile_text;

    auto add_graph_opts = [&](CLI::App* cmd) {
        cmd->add_option("input", src.path, "edge-list file (line 1: n m, then u v per line)");
        cmd->add_option("--gen", src.gen, gen_help);
        cmd->add_option("--seed", seed, "random seed, echoed in reports");
        cmd->add_option("--save-graph", src.save_path, "write the loaded graph as an edge list");
    };
    auto add_solver_opts = [&](CLI::App* cmd) {
        cmd->add_option("--rank", flags.rank, "factor rank (0 = ceil(sqrt(2n)) + 1)");
        cmd->add_option("--tol", flags.tol, "barycentre feasibility tolerance");
        cmd->add_option("--max-iters", flags.max_iters, "coordinate-ascent sweeps per round");
        cmd->add_option("--max-outer", flags.max_outer, "penalty rounds");
        cmd->add_option("--restarts", flags.restarts, "random restarts");
    };

    CLI::App* rho = app.add_subcommand("rho", "solve for the optimal representation");
    add_graph_opts(rho);
    add_solver_opts(rho);
    rho->add_option("--report", report_path, "write the JSON report here (atomic)");

    CLI::App* draw = app.add_subcommand("draw", "draw a graph (SVG for --dim 2)");
    add_graph_opts(draw);
    add_solver_opts(draw);
    draw->add_option("--method", method, "sdp or spectral")
        ->check(CLI::IsMember({"sdp", "spectral"}));
    draw->add_option("--dim", dim, "target dimension");
    draw->add_option("--out", out_path, "output file (atomic); stdout when absent");

    CLI::App* bound = app.add_subcommand("bound", "spectral upper bound and girth lower bound");
    add_graph_opts(bound);
    bound->add_option("--k", k, "neighbourhood radius of the certificate");
    bound->add_option("--report", report_path, "write the JSON report here (atomic)");

    CLI::App* nilli = app.add_subcommand("nilli", "test vector for an edge pair and its identities");
    add_graph_opts(nilli);
    nilli->add_option("--k", k, "neighbourhood radius");
    nilli->add_option("--edge", e_spec, "first edge as two vertex ids")->expected(2);
    nilli->add_option("--ebar", ebar_spec, "second edge as two vertex ids")->expected(2);
    nilli->add_option("--report", report_path, "write the JSON report here (atomic)");

    CLI::App* rr = app.add_subcommand("random-regular", "sampled experiment over random regular graphs");
    rr->add_option("--n", n, "vertices")->required();
    rr->add_option("--d", d, "degree")->required();
    rr->add_option("--count", count, "number of samples");
    rr->add_option("--k", k, "certificate radius");
    rr->add_option("--seed", seed, "random seed, echoed in reports");
    add_solver_opts(rr);
    rr->add_option("--report", report_path, "write the JSON report here (atomic)");

    CLI::App* pc = app.add_subcommand("project-check", "Monte-Carlo projection expectation check");
    pc->add_option("--n", n, "ambient dimension (>= 3)")->required();
    pc->add_option("--x", x, "segment length");
    pc->add_option("--trials", trials, "Monte-Carlo trials");
    pc->add_option("--seed", seed, "random seed, echoed in reports");
    pc->add_option("--report", report_path, "write the JSON report here (atomic)");

    CLI::App* repair = app.add_subcommand("repair-demo", "weight repair on a vertex profile");
    repair->add_option("--f", profile_text, "comma-separated integer profile, e.g. 1,1,2");
    repair->add_option("--n", n, "random profile size");
    repair->add_option("--seed", seed, "random seed, echoed in reports");
    repair->add_option("--report", report_path, "write the JSON report here (atomic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (rho->parsed()) return run_rho(src, flags, seed, report_path);
        if (draw->parsed()) return run_draw(src, flags, method, dim, seed, out_path);
        if (bound->parsed()) return run_bound(src, k, seed, report_path);
        if (nilli->parsed()) return run_nilli(src, k, e_spec, ebar_spec, seed, report_path);
        if (rr->parsed()) return run_random_regular(n, d, count, k, flags, seed, report_path);
        if (pc->parsed()) return run_project_check(n, x, trials, seed, report_path);
        if (repair->parsed()) return run_repair_demo(profile_text, n, seed, report_path);
    } catch (const CertificateInvalid& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        return kExitCertificate;
    } catch (const NotUnit& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        return kExitCertificate;
    } catch (const StarViolated& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        return kExitCertificate;
    } catch (const NoConvergence& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNotConverged;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
