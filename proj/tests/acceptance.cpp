// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Run with no arguments for all criteria, or pass criterion numbers to run a
// subset. Exit status is nonzero when any executed criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "sphererep/girth_certificates.hpp"
#include "sphererep/sdp.hpp"
#include "test_support.hpp"

using namespace sphererep;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
    void note(const std::string& text) {
        if (pass) detail = text;
    }
};

std::vector<std::pair<std::string, Graph>> transitive_corpus() {
    std::vector<std::pair<std::string, Graph>> corpus;
    for (int n = 4; n <= 12; ++n) corpus.push_back({"C" + std::to_string(n), cycle_graph(n)});
    corpus.push_back({"petersen", petersen_graph()});
    for (int k = 3; k <= 5; ++k)
        corpus.push_back({"Q" + std::to_string(k), hypercube_graph(k)});
    for (int n = 3; n <= 6; ++n) corpus.push_back({"K" + std::to_string(n), complete_graph(n)});
    corpus.push_back({"K_{3,3}", complete_bipartite_graph(3, 3)});
    for (const char* name :
         {"tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"})
        corpus.push_back({name, platonic_graph(name)});
    return corpus;
}

// 1. solver matches lambda_2 v(G) / 2 on vertex-transitive and
//    distance-regular graphs: relative error and duality gap both <= 1e-4
Outcome criterion_1() {
    Outcome out;
    double worst_rel = 0.0, worst_gap = 0.0;
    for (const auto& [name, g] : transitive_corpus()) {
        const PrimalSolution sol = solve_primal(g);
        const DualCertificate cert = dual_certificate_regular(g);
        const double target = cert.dual_objective;
        const double rel = std::abs(sol.objective - target) / std::max(1.0, std::abs(target));
        const double gap = duality_gap(sol, cert);
        worst_rel = std::max(worst_rel, rel);
        worst_gap = std::max(worst_gap, gap);
        out.require(rel <= 1e-4, name + ": relative error " + std::to_string(rel));
        out.require(gap <= 1e-4 && gap >= -1e-8, name + ": gap " + std::to_string(gap));
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "23 graphs, worst rel %.2e, worst gap %.2e", worst_rel,
                  worst_gap);
    out.note(buf);
    return out;
}

// 2. the spectral bound is never violated over random regular graphs
Outcome criterion_2() {
    Outcome out;
    int runs = 0;
    double tightest = 1e9;
    for (int i = 0; i < 210; ++i) {
        const int d = 3 + i % 3;
        const int n = 20 + 2 * static_cast<int>(RandomStream::mix(2024, i) % 91);  // even, 20..200
        const Graph g = random_regular(n, d, RandomStream::mix(77, i));
        SolverOptions opts;
        opts.seed = RandomStream::mix(78, i);
        const PrimalSolution sol = solve_primal(g, opts);
        const double bound = upper_bound_regular(g);
        tightest = std::min(tightest, bound - sol.objective);
        out.require(sol.objective <= bound + 1e-6,
                    "n=" + std::to_string(n) + " d=" + std::to_string(d) + ": objective " +
                        std::to_string(sol.objective) + " above bound " + std::to_string(bound));
        ++runs;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d runs, smallest slack %.2e", runs, tightest);
    out.note(buf);
    return out;
}

// 3. dual certificates: strict point with every eigenvalue >= 1, tight
//    point positive semidefinite, across the regular corpus
Outcome criterion_3() {
    Outcome out;
    auto corpus = transitive_corpus();
    corpus.push_back({"heawood", testsupport::heawood_graph()});
    corpus.push_back({"mcgee", testsupport::mcgee_graph()});
    for (int i = 0; i < 5; ++i)
        corpus.push_back({"random" + std::to_string(i), random_regular(40 + 10 * i, 3 + i % 3,
                                                                       RandomStream::mix(31, i))});
    double worst_strict = 1e9, worst_tight = 1e9;
    for (const auto& [name, g] : corpus) {
        const DualCertificate strict = strict_feasible_point(g);
        const DualCertificate tight = dual_certificate_regular(g);
        worst_strict = std::min(worst_strict, strict.min_eig_m);
        worst_tight = std::min(worst_tight, tight.min_eig_m);
        out.require(strict.min_eig_m >= 1.0 - 1e-8,
                    name + ": strict min eig " + std::to_string(strict.min_eig_m));
        out.require(tight.min_eig_m >= -1e-8,
                    name + ": tight min eig " + std::to_string(tight.min_eig_m));
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%zu graphs, strict min %.6f, tight min %.2e", corpus.size(),
                  worst_strict, worst_tight);
    out.note(buf);
    return out;
}

// 4. the norm and quadratic-form identities of the test vectors, exactly
Outcome criterion_4() {
    Outcome out;
    const Graph c20 = cycle_graph(20);
    // antipodal pairs support radii up to 3; at radius 4 the required
    // separation 2k+2 = 10 exceeds the maximum edge distance 9 in C20 and
    // the construction must refuse
    for (int k = 0; k <= 3; ++k) {
        const NilliVector w = nilli_vector(c20, {0, 1}, {10, 11}, k);
        const NilliIdentities ids = nilli_identities(c20, w);
        out.require(ids.tree_like, "C20 k=" + std::to_string(k) + ": not tree-like");
        out.require(std::abs(ids.norm_sq - 4.0 * (k + 1)) <= 1e-12,
                    "C20 k=" + std::to_string(k) + ": norm " + std::to_string(ids.norm_sq));
        out.require(std::abs(ids.quad - (4.0 + 8.0 * k)) <= 1e-12,
                    "C20 k=" + std::to_string(k) + ": quad " + std::to_string(ids.quad));
    }
    bool refused = false;
    try {
        nilli_vector(c20, {0, 1}, {10, 11}, 4);
    } catch (const TooClose&) {
        refused = true;
    }
    out.require(refused, "C20 k=4: expected TooClose for separation 9 < 10");

    // random cubic graphs: identities on verified tree-like pairs
    const double root2 = std::sqrt(2.0);
    int verified = 0;
    for (std::uint64_t seed : {12345ULL, 777ULL}) {
        const Graph g = random_regular(200, 3, seed);
        for (int k : {1, 2}) {
            int found = 0;
            for (std::size_t i = 0; i < g.edges().size() && found < 4; i += 7)
                for (std::size_t j = i + 1; j < g.edges().size() && found < 4; ++j) {
                    const auto sep = edge_dist(g, g.edges()[i], g.edges()[j]);
                    if (!sep.has_value() || *sep < 2 * k + 2) continue;
                    const NilliVector w = nilli_vector(g, g.edges()[i], g.edges()[j], k);
                    const NilliIdentities ids = nilli_identities(g, w);
                    if (!ids.tree_like) continue;
                    ++found;
                    ++verified;
                    out.require(std::abs(ids.norm_sq - 4.0 * (k + 1)) <= 1e-12,
                                "cubic k=" + std::to_string(k) + ": norm");
                    out.require(std::abs(ids.quad - (4.0 + 8.0 * k * root2)) <= 1e-12,
                                "cubic k=" + std::to_string(k) + ": quad");
                }
        }
    }
    out.require(verified >= 8, "too few tree-like pairs verified");
    out.note("C20 radii 0..3 exact, refusal at 4, " + std::to_string(verified) +
             " cubic pairs exact");
    return out;
}

// 5. the girth certificate on cycles: valid representation, closed-form
//    rho, below the spectral bound
Outcome criterion_5() {
    Outcome out;
    int built = 0;
    for (int k = 0; k <= 3; ++k) {
        for (int n : {4 * k + 6, 4 * k + 7, 4 * k + 12, 30}) {
            if (n < 4 * k + 6) continue;
            const Graph g = cycle_graph(n);
            const GirthRepresentation rep = girth_representation(g, k);
            const Residuals res = validate(g, rep.matrix);
            const std::string tag = "C" + std::to_string(n) + " k=" + std::to_string(k);
            out.require(res.unit <= 1e-9, tag + ": unit residual " + std::to_string(res.unit));
            out.require(res.barycentre <= 1e-9 * n,
                        tag + ": barycentre residual " + std::to_string(res.barycentre));
            const double expected = 0.5 * n * (2.0 - 1.0 / (k + 1));  // d = 2
            out.require(std::abs(rep.closed_form - expected) <= 1e-12, tag + ": closed form");
            out.require(std::abs(rep.rho - expected) <= 1e-9,
                        tag + ": rho " + std::to_string(rep.rho) + " vs " + std::to_string(expected));
            out.require(rep.rho <= upper_bound_regular(g) + 1e-9, tag + ": above the bound");
            ++built;
        }
    }
    out.note(std::to_string(built) + " certificates exact");
    return out;
}

// 6. desk-scale stand-in for the random-regular sandwich: certificate <=
//    solver <= bound on every sample, mean normalized solver value inside
//    [2 sqrt 2 - 0.5, 2 sqrt 2 + 0.1]
Outcome criterion_6() {
    Outcome out;
    const int samples = 50, n = 500, k = 3;
    double mean = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Graph g = random_regular(n, 3, RandomStream::mix(606, i));
        const SpectralData spec = sym_eigen(adjacency_matrix(g));
        const double bound = 0.5 * spec.eigenvalues[1] * n;
        SolverOptions opts;
        opts.seed = RandomStream::mix(607, i);
        const PrimalSolution sol = solve_primal(g, opts);
        const RandomRegularRepresentation rep = random_regular_representation(g, k);
        const std::string tag = "sample " + std::to_string(i);
        out.require(rep.rho <= sol.objective + 1e-6, tag + ": certificate above solver");
        out.require(sol.objective <= bound + 1e-6, tag + ": solver above bound");
        mean += sol.objective / (0.5 * n);
    }
    mean /= samples;
    const double lo = 2.0 * std::sqrt(2.0) - 0.5;
    const double hi = 2.0 * std::sqrt(2.0) + 0.1;
    out.require(mean >= lo && mean <= hi,
                "mean normalized solver rho " + std::to_string(mean) + " outside [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d samples, mean normalized rho %.4f in [%.4f, %.4f]",
                  samples, mean, lo, hi);
    out.note(buf);
    return out;
}

// 7. short-cycle statistics of the sampler against the asymptotic counts
Outcome criterion_7() {
    Outcome out;
    const int samples = 500;
    std::vector<std::vector<double>> counts(6);
    for (int i = 0; i < samples; ++i) {
        const Graph g = random_regular(200, 3, RandomStream::mix(700, i));
        const CycleCensus census = count_cycles_upto(g, 5);
        for (int j = 3; j <= 5; ++j) {
            const auto it = census.counts.find(j);
            counts[j].push_back(it == census.counts.end() ? 0.0
                                                          : static_cast<double>(it->second));
        }
    }
    std::string summary;
    for (int j = 3; j <= 5; ++j) {
        double mean = 0.0;
        for (double c : counts[j]) mean += c;
        mean /= samples;
        double var = 0.0;
        for (double c : counts[j]) var += (c - mean) * (c - mean);
        var /= samples - 1;
        const double se = std::sqrt(var / samples);
        const double predicted = std::pow(2.0, j) / (2.0 * j);
        out.require(std::abs(mean - predicted) <= 3.0 * se,
                    "j=" + std::to_string(j) + ": mean " + std::to_string(mean) + " vs " +
                        std::to_string(predicted) + " (se " + std::to_string(se) + ")");
        char buf[64];
        std::snprintf(buf, sizeof(buf), "j=%d: %.3f~%.3f ", j, mean, predicted);
        summary += buf;
    }
    out.note(summary);
    return out;
}

// 8. the weight repair: a thousand random admissible profiles reproduce
//    their vertex sums; inadmissible profiles are rejected
Outcome criterion_8() {
    Outcome out;
    RandomStream rng(808);
    int repaired = 0, rejected = 0;
    double worst = 0.0;
    while (repaired < 1000) {
        const int n = 2 + static_cast<int>(rng.uniform_below(49));
        WeightProfile f(n);
        for (int v = 0; v < n; ++v) f[v] = rng.uniform01() < 0.2 ? 0.0 : rng.uniform01() * 4.0;
        if (n == 2) f[1] = f[0];
        double total = 0.0, biggest = 0.0;
        for (double x : f) {
            total += x;
            biggest = std::max(biggest, x);
        }
        if (biggest > 0.5 * total) {
            bool threw = false;
            try {
                weight_repair(f);
            } catch (const StarViolated&) {
                threw = true;
            }
            out.require(threw, "inadmissible profile accepted");
            ++rejected;
            continue;
        }
        const auto weights = weight_repair(f);
        std::vector<double> sums(n, 0.0);
        for (const PairWeight& w : weights) {
            out.require(w.value >= 0.0, "negative repair weight");
            sums[w.u] += w.value * w.value;
            sums[w.v] += w.value * w.value;
        }
        for (int v = 0; v < n; ++v) worst = std::max(worst, std::abs(sums[v] - f[v]));
        ++repaired;
    }
    out.require(worst <= 1e-9, "vertex sum error " + std::to_string(worst));
    char buf[128];
    std::snprintf(buf, sizeof(buf), "1000 profiles repaired (max error %.1e), %d rejected", worst,
                  rejected);
    out.note(buf);
    return out;
}

// 9. the projection expectation (2/n) x^2, within 3 standard errors
//    everywhere and within 2% for n <= 10 at 1e5 trials
Outcome criterion_9() {
    Outcome out;
    double worst_z = 0.0;
    std::uint64_t cell = 0;
    for (int n : {3, 5, 10, 50}) {
        for (double x : {0.5, 1.0, 2.0}) {
            const ProjectionCheck pc =
                projection_expectation_check(n, x, 100000, RandomStream::mix(909, cell++));
            const double err = std::abs(pc.empirical_mean - pc.predicted);
            const std::string tag = "n=" + std::to_string(n) + " x=" + std::to_string(x);
            out.require(err <= 3.0 * pc.standard_error, tag + ": off by " + std::to_string(err));
            if (n <= 10)
                out.require(err <= 0.02 * pc.predicted, tag + ": relative error above 2%");
            if (pc.standard_error > 0.0) worst_z = std::max(worst_z, err / pc.standard_error);
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "12 cells x 1e5 trials, worst z-score %.2f", worst_z);
    out.note(buf);
    return out;
}

// 10. the two rho routes and the energy identity across the corpus
Outcome criterion_10() {
    Outcome out;
    std::vector<std::pair<Graph, Matrix>> corpus;
    for (const auto& [name, g] : transitive_corpus()) {
        corpus.push_back({g, solve_primal(g).factor});
        if (g.vertex_count() >= 3) corpus.push_back({g, spectral_drawing(g, 2)});
    }
    corpus.push_back({cycle_graph(20), girth_representation(cycle_graph(20), 2).matrix});
    corpus.push_back({cycle_graph(30), girth_representation(cycle_graph(30), 3).matrix});
    corpus.push_back(
        {testsupport::heawood_graph(), girth_representation(testsupport::heawood_graph(), 0).matrix});
    {
        const Graph g = random_regular(60, 3, 12);
        corpus.push_back({g, random_regular_representation(g, 1).matrix});
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int n = 6 + static_cast<int>(seed) * 3;
        const Graph g = random_regular(n + (n % 2), 3, seed);
        corpus.push_back(
            {g, testsupport::random_unit_barycentre0(4, g.vertex_count(), seed + 1000)});
    }

    double worst_rho = 0.0, worst_energy = 0.0;
    int energy_checked = 0;
    for (const auto& [g, r] : corpus) {
        const double a = rho_edges(g, r);
        const double b = rho_rows(g, r);
        const double rho_err = std::abs(a - b) / (1.0 + std::abs(a));
        worst_rho = std::max(worst_rho, rho_err);
        out.require(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)),
                    "rho routes disagree by " + std::to_string(std::abs(a - b)));
        if (validate(g, r).unit <= 1e-8) {
            const double err = std::abs(energy(g, r) - (2.0 * g.edge_count() - 2.0 * a));
            worst_energy = std::max(worst_energy, err);
            out.require(err <= 1e-9, "energy identity off by " + std::to_string(err));
            ++energy_checked;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%zu matrices, worst rho mismatch %.1e, %d unit matrices, worst energy error %.1e",
                  corpus.size(), worst_rho, energy_checked, worst_energy);
    out.note(buf);
    return out;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria = {
    {"vertex-transitive equality (solver matches lambda2 v/2, gap <= 1e-4)", criterion_1},
    {"spectral bound never violated over random regular graphs", criterion_2},
    {"dual certificates positive semidefinite (strict >= 1, tight >= -1e-8)", criterion_3},
    {"test-vector identities 4(k+1) and 4+8k sqrt(d-1) to 1e-12", criterion_4},
    {"girth certificate on cycles: exact closed form, valid, below bound", criterion_5},
    {"random cubic sandwich at n=500, mean inside the 2 sqrt 2 window", criterion_6},
    {"short-cycle counts match (d-1)^j/2j within 3 SE", criterion_7},
    {"weight repair: 1000 profiles to 1e-9, violators rejected", criterion_8},
    {"projection expectation (2/n) x^2 within 3 SE (2% for n <= 10)", criterion_9},
    {"rho row/edge routes to 1e-12 and energy identity to 1e-9", criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        const int number = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(number)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = kCriteria[i].second();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %2d [%s] %s -- %s (%.1fs)\n", number,
                    outcome.pass ? "PASS" : "FAIL", kCriteria[i].first.c_str(),
                    outcome.detail.c_str(), seconds);
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
