// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "udense/densest.hpp"
#include "udense/estimators.hpp"
#include "udense/graph.hpp"
#include "udense/metrics.hpp"
#include "udense/oracle.hpp"

using namespace udense;

namespace {

int failures = 0;

void report(int id, const std::string& what, bool ok, const std::string& detail = "") {
    std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", id, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

UncertainGraph fig1() {
    return UncertainGraph::from_edges(4, {{0, 1, 0.4}, {0, 2, 0.4}, {1, 3, 0.7}});
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

DetGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::uint64_t c = 0;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (stream_uniform(seed, 0xacce97, c++) < p) edges.push_back({u, v});
    return DetGraph::from_edges(n, std::move(edges));
}

bool densest_matches_brute(const DetGraph& g, const DensityNotion& notion) {
    auto got = enumerate_all_densest(g, notion);
    auto want = brute_force_densest(g, notion);
    if (got.degenerate != want.degenerate) return false;
    if (got.degenerate) return true;
    return got.optimum == want.optimum && got.all_densest == want.all_densest &&
           got.maximal == want.maximal;
}

std::string run_cli(const std::string& args) {
    std::string cmd = std::string(UDENSE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
}

// 1. Table-1 reproduction: DSP and EED columns, exact to two decimals.
void criterion_1() {
    const double t0 = now_ms();
    auto g = fig1();
    auto edge = DensityNotion::edge();
    const std::vector<std::vector<NodeId>> sets{{0, 1}, {0, 2}, {1, 3},
                                                {0, 1, 2}, {0, 1, 3}, {0, 1, 2, 3}};
    const std::vector<double> dsp{0.07, 0.24, 0.42, 0.05, 0.17, 0.28};
    const std::vector<double> eed{0.20, 0.20, 0.35, 0.27, 0.37, 0.38};
    bool ok = true;
    std::ostringstream detail;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        NodeSet s(sets[i]);
        double tau = exact_tau(g, s, edge);
        double ed = expected_density(g, s, edge);
        if (round2(tau) != dsp[i] || round2(ed) != eed[i]) {
            ok = false;
            detail << " set#" << i << " tau=" << tau << " eed=" << ed;
        }
    }
    const double ms = now_ms() - t0;
    if (ms >= 1000.0) ok = false;
    detail << "runtime " << ms << " ms";
    report(1, "Table-1 DSP and EED columns, two-decimal exact, < 1 s", ok, detail.str());
}

// 2. MPDS estimator at theta = 1e5: top-1 {B,D} within 0.01 of 0.42, < 5 s.
void criterion_2() {
    const double t0 = now_ms();
    auto res = estimate_topk_mpds(fig1(), DensityNotion::edge(), 1, 100000, 7);
    const double ms = now_ms() - t0;
    bool ok = res.ranked.size() == 1 && res.ranked[0].set == NodeSet({1, 3}) &&
              std::fabs(res.ranked[0].estimate - 0.42) <= 0.01 && ms < 5000.0;
    std::ostringstream detail;
    detail << "tau_hat=" << (res.ranked.empty() ? -1.0 : res.ranked[0].estimate)
           << ", runtime " << ms << " ms";
    report(2, "MPDS estimator: theta=1e5 top-1 {B,D}, |tau_hat - 0.42| <= 0.01, < 5 s", ok,
           detail.str());
}

// 3. NDS: oracle gamma = 0.7, estimator gamma-hat within 0.01 at theta = 1e5.
void criterion_3() {
    auto g = fig1();
    double gamma = exact_gamma(g, NodeSet({1, 3}), DensityNotion::edge());
    auto res = estimate_topk_nds(g, DensityNotion::edge(), 1, 2, 100000, 7);
    bool ok = std::fabs(gamma - 0.7) <= 1e-12 && res.ranked.size() == 1 &&
              res.ranked[0].set == NodeSet({1, 3}) &&
              std::fabs(res.ranked[0].estimate - 0.7) <= 0.01;
    std::ostringstream detail;
    detail << "gamma=" << gamma
           << ", gamma_hat=" << (res.ranked.empty() ? -1.0 : res.ranked[0].estimate);
    report(3, "NDS: oracle gamma({B,D}) = 0.7 exactly, estimator within 0.01", ok,
           detail.str());
}

// 4. Enumeration equals brute force on 200 random graphs, < 60 s total.
void criterion_4() {
    const double t0 = now_ms();
    int runs = 0, bad = 0;
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        double p = 0.15 + 0.09 * static_cast<double>(seed % 8);
        if (!densest_matches_brute(random_graph(9, p, seed), DensityNotion::edge())) ++bad;
        ++runs;
    }
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        double p = 0.35 + 0.1 * static_cast<double>(seed % 5);
        auto g = random_graph(8, p, seed + 500);
        for (int h : {3, 4}) {
            if (!densest_matches_brute(g, DensityNotion::clique(h))) ++bad;
            ++runs;
        }
    }
    const Pattern pats[] = {Pattern::star(2), Pattern::star(3), Pattern::diamond()};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        double p = 0.3 + 0.1 * static_cast<double>(seed % 5);
        auto g = random_graph(8, p, seed + 900);
        for (const auto& pat : pats) {
            if (!densest_matches_brute(g, DensityNotion::pattern(pat))) ++bad;
            ++runs;
        }
    }
    const double ms = now_ms() - t0;
    bool ok = runs == 200 && bad == 0 && ms < 60000.0;
    std::ostringstream detail;
    detail << runs << " graphs, " << bad << " mismatches, runtime " << ms << " ms";
    report(4, "all-densest enumeration == brute force on 200 random graphs, < 60 s", ok,
           detail.str());
}

// 5. Example 4: bridged triangles, 3-clique density.
void criterion_5() {
    auto g = DetGraph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
    auto res = enumerate_all_densest(g, DensityNotion::clique(3));
    bool ok = res.optimum == Rational(1, 3) && res.all_densest.size() == 3 &&
              res.all_densest[0] == NodeSet({0, 1, 2}) &&
              res.all_densest[1] == NodeSet({0, 1, 2, 3, 4, 5}) &&
              res.all_densest[2] == NodeSet({3, 4, 5});
    report(5, "two bridged triangles: rho* = 1/3 with exactly {A,B,C}, {D,E,F}, {A..F}", ok,
           "rho* = " + res.optimum.to_string() + ", " +
               std::to_string(res.all_densest.size()) + " sets");
}

// 6. World G7 enumerates the three bold Table-1 sets at rho* = 1/2.
void criterion_6() {
    auto g = DetGraph::from_edges(4, {{0, 2}, {1, 3}});
    auto res = enumerate_all_densest(g, DensityNotion::edge());
    bool ok = res.optimum == Rational(1, 2) && res.all_densest.size() == 3 &&
              res.all_densest[0] == NodeSet({0, 1, 2, 3}) &&
              res.all_densest[1] == NodeSet({0, 2}) &&
              res.all_densest[2] == NodeSet({1, 3});
    report(6, "world G7: exactly {A,C}, {B,D}, {A,B,C,D} at rho* = 1/2", ok,
           "rho* = " + res.optimum.to_string() + ", " +
               std::to_string(res.all_densest.size()) + " sets");
}

// 7. Matching identity, exact equality on 50 random graphs with m <= 12.
void criterion_7() {
    int checked = 0, bad = 0;
    {
        auto mi = matching_identity_check(
            DetGraph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}));
        if (mi.lhs != mi.rhs || mi.rhs != 0.5) ++bad;
        ++checked;
    }
    std::uint64_t seed = 0;
    while (checked < 50) {
        auto g = random_graph(6 + seed % 3, 0.45, seed + 4000);
        ++seed;
        if (g.edges.size() > 12 || g.edges.empty()) continue;
        auto mi = matching_identity_check(g);
        if (mi.lhs != mi.rhs) ++bad;
        ++checked;
    }
    report(7, "matching identity lhs == rhs exactly on 50 graphs (m <= 12)", bad == 0,
           std::to_string(bad) + " mismatches");
}

// 8. Unbiasedness within 3 standard errors plus the empirical inclusion-bound check.
void criterion_8() {
    auto g = fig1();
    const std::size_t runs = 200;
    const std::uint64_t theta = 500;
    double sum = 0.0;
    for (std::size_t seed = 0; seed < runs; ++seed) {
        CandidatePool pool;
        extend_mpds_pool(g, DensityNotion::edge(), 0, theta, seed * 131 + 5, {}, pool);
        auto it = pool.counts.find(NodeSet({1, 3}));
        if (it != pool.counts.end())
            sum += static_cast<double>(it->second) / static_cast<double>(theta);
    }
    const double mean = sum / static_cast<double>(runs);
    const double se = std::sqrt(0.42 * 0.58 / static_cast<double>(runs * theta));
    const bool unbiased = std::fabs(mean - 0.42) <= 3.0 * se;

    const double bound = mpds_inclusion_bound({0.42}, 10);
    std::size_t included = 0;
    const std::size_t trials = 500;
    for (std::size_t t = 0; t < trials; ++t) {
        CandidatePool pool;
        extend_mpds_pool(g, DensityNotion::edge(), 0, 10, 31337 + t, {}, pool);
        if (pool.counts.count(NodeSet({1, 3}))) ++included;
    }
    const double freq = static_cast<double>(included) / trials;
    const bool inclusion = freq >= bound - 0.03;

    std::ostringstream detail;
    detail << "mean tau_hat = " << mean << " (3SE = " << 3.0 * se << ")"
           << ", inclusion freq = " << freq << " vs bound " << bound;
    report(8, "unbiasedness within 3 SE and empirical inclusion-bound frequency", unbiased && inclusion,
           detail.str());
}

// 9. Cut identities at the snapped optimum for all three notions.
void criterion_9() {
    bool ok = true;
    std::ostringstream detail;
    int checked = 0;
    auto check_graph = [&](const DetGraph& g) {
        // edge
        {
            Rational rho = optimal_density(g, DensityNotion::edge());
            if (!g.edges.empty()) {
                auto net = build_edge_flow_network(g, rho);
                auto mf = max_flow(net);
                if (mf.value !=
                    2 * static_cast<std::int64_t>(g.edges.size()) * net.scale)
                    ok = false;
                ++checked;
            }
        }
        for (int h : {3, 4}) {
            auto idx = list_h_cliques(g, h);
            if (idx.mu() == 0) continue;
            Rational rho = optimal_density(g, DensityNotion::clique(h));
            auto net = build_clique_flow_network(g, idx, rho);
            auto mf = max_flow(net);
            if (mf.value != h * static_cast<std::int64_t>(idx.mu()) * net.scale) ok = false;
            ++checked;
        }
        for (const auto& pat : {Pattern::star(2), Pattern::diamond()}) {
            auto idx = list_pattern_instances(g, pat);
            if (idx.mu == 0) continue;
            Rational rho = optimal_density(g, DensityNotion::pattern(pat));
            auto net = build_pattern_flow_network(g, idx, rho);
            auto mf = max_flow(net);
            if (mf.value != static_cast<std::int64_t>(pat.node_count) *
                                static_cast<std::int64_t>(idx.mu) * net.scale)
                ok = false;
            ++checked;
        }
    };
    check_graph(DetGraph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}));
    check_graph(DetGraph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}}));
    for (std::uint64_t seed = 0; seed < 12; ++seed)
        check_graph(random_graph(8, 0.5, seed + 7000));
    detail << checked << " cut identities";
    report(9, "min cut at snapped rho* equals unit * mu * scale for every notion", ok,
           detail.str());
}

// 10. Baseline contrast plus PD/PCC of the half-probability triangle.
void criterion_10() {
    auto g = fig1();
    auto eds = expected_densest_subgraph(g, DensityNotion::edge());
    auto mpds = exact_topk(g, DensityNotion::edge(), 1);
    auto tri = UncertainGraph::from_edges(3, {{0, 1, 0.5}, {0, 2, 0.5}, {1, 2, 0.5}});
    double pd = probabilistic_density(tri, NodeSet({0, 1, 2}));
    double pcc = probabilistic_clustering_coefficient(tri, NodeSet({0, 1, 2}));
    bool ok = eds.set == NodeSet({0, 1, 2, 3}) && std::fabs(eds.density - 0.375) <= 1e-9 &&
              mpds.size() == 1 && mpds[0].set == NodeSet({1, 3}) &&
              std::fabs(pd - 0.5) <= 1e-12 && std::fabs(pcc - 0.5) <= 1e-12;
    std::ostringstream detail;
    detail << "EDS density = " << eds.density << ", PD = " << pd << ", PCC = " << pcc;
    report(10, "EDS = {A,B,C,D} @ 0.375 vs MPDS = {B,D}; triangle PD = PCC = 0.5", ok,
           detail.str());
}

// 11. Heuristic bound on 100 random graphs.
void criterion_11() {
    int violations = 0, sets_checked = 0;
    const Pattern pats[] = {Pattern::star(2), Pattern::clique(3)};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto g = random_graph(8, 0.45 + 0.05 * (seed % 4), seed + 8000);
        for (const auto& pat : pats) {
            auto notion = DensityNotion::pattern(pat);
            auto sets = heuristic_pattern_dense(g, pat);
            if (sets.empty()) continue;
            Rational rho = optimal_density(g, notion);
            Rational bound = rho * Rational(1, static_cast<std::int64_t>(pat.node_count));
            for (const auto& s : sets) {
                ++sets_checked;
                if (induced_density_exact(g, s, notion) < bound) ++violations;
            }
        }
    }
    report(11, "heuristic sets all meet the rho*/|V_psi| density bound (100 graphs)",
           violations == 0,
           std::to_string(sets_checked) + " sets, " + std::to_string(violations) +
               " violations");
}

// 12. CLI determinism: byte-identical JSON at 1, 4 and 8 workers.
void criterion_12() {
    const std::string graph_file = "/tmp/udense_acceptance_fig1.txt";
    {
        FILE* f = fopen(graph_file.c_str(), "w");
        fputs("0 1 0.4\n0 2 0.4\n1 3 0.7\n", f);
        fclose(f);
    }
    bool ok = true;
    for (const std::string base :
         {"mpds --graph " + graph_file + " --k 3 --theta 2000 --seed 13",
          "nds --graph " + graph_file + " --k 2 --lm 2 --theta 2000 --seed 13",
          "mpds --graph " + graph_file + " --density clique:2 --k 2 --theta 1000 --seed 4"}) {
        auto t1 = run_cli(base + " --threads 1");
        auto t4 = run_cli(base + " --threads 4");
        auto t8 = run_cli(base + " --threads 8");
        if (t1.empty() || t1 != t4 || t1 != t8) ok = false;
    }
    report(12, "fixed-seed CLI output byte-identical at 1, 4 and 8 workers", ok);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures == 0)
        std::printf("acceptance: all 12 criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
