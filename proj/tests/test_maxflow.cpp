#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "udense/maxflow.hpp"

using namespace udense;

namespace {

// Exhaustive min-cut: every s-side subset of the non-terminal nodes.
std::int64_t brute_min_cut(const FlowNetwork& net) {
    REQUIRE(net.node_count <= 16);
    std::vector<std::int32_t> others;
    for (std::int32_t v = 0; v < net.node_count; ++v)
        if (v != net.source && v != net.sink) others.push_back(v);
    std::int64_t best = -1;
    for (std::uint32_t mask = 0; mask < (1u << others.size()); ++mask) {
        std::vector<char> in_s(net.node_count, 0);
        in_s[net.source] = 1;
        for (std::size_t i = 0; i < others.size(); ++i)
            if ((mask >> i) & 1) in_s[others[i]] = 1;
        std::int64_t cut = 0;
        for (std::int32_t v = 0; v < net.node_count; ++v) {
            if (!in_s[v]) continue;
            for (std::int32_t a : net.out[v])
                if (!in_s[net.arcs[a].to]) cut += net.arcs[a].cap;
        }
        if (best < 0 || cut < best) best = cut;
    }
    return best;
}

}  // namespace

TEST_CASE("max flow basics") {
    SUBCASE("single arc") {
        FlowNetwork net;
        net.source = net.add_node();
        net.sink = net.add_node();
        net.add_arc(net.source, net.sink, 5);
        CHECK(max_flow(net).value == 5);
    }
    SUBCASE("triangle edge network at alpha 1") {
        auto net = build_edge_flow_network(testutil::triangle(), Rational(1));
        CHECK(net.scale == 1);
        auto mf = max_flow(net);
        CHECK(mf.value == 6);  // 2m at the optimum
        CHECK(mf.value == brute_min_cut(net));
    }
    SUBCASE("single edge at alpha 1/2") {
        auto net = build_edge_flow_network(DetGraph::from_edges(2, {{0, 1}}), Rational(1, 2));
        CHECK(net.scale == 2);
        auto mf = max_flow(net);
        CHECK(mf.value == 4);  // 2 * m * scale
        CHECK(mf.value == brute_min_cut(net));
    }
    SUBCASE("empty graph") {
        auto net = build_edge_flow_network(DetGraph::from_edges(3, {}), Rational(0));
        CHECK(max_flow(net).value == 0);
    }
}

TEST_CASE("clique flow network") {
    SUBCASE("K3 construction shape") {
        auto g = testutil::triangle();
        auto idx = list_h_cliques(g, 3);
        auto net = build_clique_flow_network(g, idx, Rational(1, 3));
        // s, t, three vertices, three lambda nodes (the edges of the triangle)
        CHECK(net.node_count == 8);
        CHECK(net.scale == 3);
        // each completion arc has capacity b = 3
        std::size_t completion_arcs = 0;
        for (std::int32_t v = 2; v < 5; ++v)
            for (std::int32_t a : net.out[v])
                if (net.arcs[a].to >= 5 && net.arcs[a].cap == 3) ++completion_arcs;
        CHECK(completion_arcs == 3);  // one completing vertex per lambda
    }
    SUBCASE("no h-clique yields zero flow") {
        auto path = DetGraph::from_edges(3, {{0, 1}, {1, 2}});
        auto idx = list_h_cliques(path, 3);
        auto net = build_clique_flow_network(path, idx, Rational(1, 3));
        CHECK(max_flow(net).value == 0);
    }
    SUBCASE("bridged triangles at the optimum") {
        auto g = testutil::bridged_triangles();
        auto idx = list_h_cliques(g, 3);
        auto net = build_clique_flow_network(g, idx, Rational(1, 3));
        auto mf = max_flow(net);
        CHECK(mf.value == 18);  // h * mu_h * scale = 3 * 2 * 3
        CHECK(mf.value == brute_min_cut(net));
    }
}

TEST_CASE("pattern flow network") {
    SUBCASE("single-edge pattern matches the edge network min cut") {
        auto g = testutil::triangle();
        auto idx = list_pattern_instances(g, Pattern::single_edge());
        auto pnet = build_pattern_flow_network(g, idx, Rational(1));
        auto enet = build_edge_flow_network(g, Rational(1));
        CHECK(max_flow(pnet).value == max_flow(enet).value);
    }
    SUBCASE("2-star on a triangle saturates at |V_psi| * mu") {
        auto g = testutil::triangle();
        auto idx = list_pattern_instances(g, Pattern::star(2));
        auto net = build_pattern_flow_network(g, idx, Rational(1));
        auto mf = max_flow(net);
        CHECK(mf.value == 9);
        CHECK(mf.value == brute_min_cut(net));
    }
    SUBCASE("no instances yields zero flow") {
        auto path = DetGraph::from_edges(3, {{0, 1}, {1, 2}});
        auto idx = list_pattern_instances(path, Pattern::clique(3));
        auto net = build_pattern_flow_network(path, idx, Rational(1, 2));
        CHECK(max_flow(net).value == 0);
    }
}

TEST_CASE("max flow equals brute-force min cut on random networks") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = testutil::random_graph(6, 0.5, seed + 100);
        auto net = build_edge_flow_network(g, Rational(2, 3));
        auto mf = max_flow(net);
        CHECK(mf.value == brute_min_cut(net));
        for (std::int32_t v = 0; v < net.node_count; ++v)
            if (v != net.source && v != net.sink)
                CHECK(flow_divergence(net, mf.residual, v) == 0);
    }
}

TEST_CASE("residual SCC structure at the optimum") {
    // triangle {1,2,3} with pendant edge 0-1: densest are {1,2,3} and all four
    auto g = DetGraph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}, {2, 3}});
    auto net = build_edge_flow_network(g, Rational(1));
    auto mf = max_flow(net);
    CHECK(mf.value == 8);  // saturated: alpha is exactly the optimum
    auto dag = residual_scc_dag(net, mf.residual);

    // source component is a singleton without outgoing edges
    CHECK(dag.components[dag.scc_of_source].size() == 1);
    CHECK(dag.dag_edges[dag.scc_of_source].empty());
    // sink component has no incoming edge
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(dag.dag_edges.size()); ++c)
        for (std::int32_t to : dag.dag_edges[c]) CHECK(to != dag.scc_of_sink);

    // every graph vertex keeps a residual arc to s and is reachable from t
    std::vector<char> adj_to_s(net.node_count, 0);
    for (std::int32_t v = 0; v < net.node_count; ++v)
        for (std::int32_t a : net.out[v])
            if (net.arcs[a].to == net.source && mf.residual[a] > 0) adj_to_s[v] = 1;
    std::vector<char> from_t(net.node_count, 0);
    std::vector<std::int32_t> stack{net.sink};
    from_t[net.sink] = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (std::int32_t a : net.out[v])
            if (mf.residual[a] > 0 && !from_t[net.arcs[a].to]) {
                from_t[net.arcs[a].to] = 1;
                stack.push_back(net.arcs[a].to);
            }
    }
    for (std::int32_t v = 0; v < net.node_count; ++v) {
        if (net.vertex_of_node[v] == FlowNetwork::NO_VERTEX) continue;
        CHECK(adj_to_s[v] == 1);
        CHECK(from_t[v] == 1);
    }
    // no residual arc leaves the source
    for (std::int32_t a : net.out[net.source]) CHECK(mf.residual[a] == 0);
}

TEST_CASE("clique network residual reaches every lambda from t") {
    auto g = testutil::bridged_triangles();
    auto idx = list_h_cliques(g, 3);
    auto net = build_clique_flow_network(g, idx, Rational(1, 3));
    auto mf = max_flow(net);
    std::vector<char> from_t(net.node_count, 0);
    std::vector<std::int32_t> stack{net.sink};
    from_t[net.sink] = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (std::int32_t a : net.out[v])
            if (mf.residual[a] > 0 && !from_t[net.arcs[a].to]) {
                from_t[net.arcs[a].to] = 1;
                stack.push_back(net.arcs[a].to);
            }
    }
    // graph vertices occupy nodes 2..7, the lambdas everything above
    for (std::int32_t v = 2; v < net.node_count; ++v) CHECK(from_t[v] == 1);
}

TEST_CASE("dimacs dump") {
    auto net = build_edge_flow_network(testutil::triangle(), Rational(1));
    std::ostringstream os;
    dump_dimacs(net, os);
    auto text = os.str();
    CHECK(text.find("p max 5") == 0);
    CHECK(text.find("n 1 s") != std::string::npos);
    CHECK(text.find("n 2 t") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') >= 10);
}
