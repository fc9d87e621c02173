#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "udense/motifs.hpp"

using namespace udense;

namespace {

// Independent check: count h-subsets that are cliques by direct subset scan.
std::size_t brute_clique_count(const DetGraph& g, int h) {
    const auto& nodes = g.nodes;
    std::size_t count = 0;
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (static_cast<int>(pick.size()) == h) {
            for (std::size_t i = 0; i < pick.size(); ++i)
                for (std::size_t j = i + 1; j < pick.size(); ++j)
                    if (!g.has_edge(nodes[pick[i]], nodes[pick[j]])) return;
            ++count;
            return;
        }
        for (std::size_t i = start; i < nodes.size(); ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return count;
}

}  // namespace

TEST_CASE("h-clique listing") {
    SUBCASE("K4 triangles") {
        auto idx = list_h_cliques(testutil::complete_graph(4), 3);
        CHECK(idx.mu() == 4);
        for (NodeId v = 0; v < 4; ++v) CHECK(idx.clique_degree[v] == 3);
    }
    SUBCASE("bridged triangles") {
        auto idx = list_h_cliques(testutil::bridged_triangles(), 3);
        CHECK(idx.mu() == 2);
    }
    SUBCASE("path has no triangle") {
        auto path = DetGraph::from_edges(3, {{0, 1}, {1, 2}});
        auto idx = list_h_cliques(path, 3);
        CHECK(idx.mu() == 0);
        CHECK(idx.lambda_set.empty());
    }
    SUBCASE("h below 2 rejected") {
        CHECK_THROWS_AS(list_h_cliques(testutil::triangle(), 1), std::invalid_argument);
    }
    SUBCASE("h = 2 yields exactly the edge set") {
        auto g = testutil::random_graph(8, 0.4, 3);
        auto idx = list_h_cliques(g, 2);
        REQUIRE(idx.mu() == g.edges.size());
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            CHECK(idx.cliques[i][0] == g.edges[i].first);
            CHECK(idx.cliques[i][1] == g.edges[i].second);
        }
    }
    SUBCASE("every lambda has at least one completion and degrees sum to h*mu") {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            auto g = testutil::random_graph(9, 0.5, seed);
            for (int h : {3, 4}) {
                auto idx = list_h_cliques(g, h);
                CHECK(idx.mu() == brute_clique_count(g, h));
                std::size_t degsum = 0;
                for (NodeId v = 0; v < 9; ++v) degsum += idx.clique_degree[v];
                CHECK(degsum == static_cast<std::size_t>(h) * idx.mu());
                for (const auto& lam : idx.lambda_set) CHECK(!lam.completions.empty());
            }
        }
    }
    SUBCASE("output independent of edge order") {
        std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {1, 3}};
        auto a = list_h_cliques(DetGraph::from_edges(4, edges), 3);
        std::reverse(edges.begin(), edges.end());
        auto b = list_h_cliques(DetGraph::from_edges(4, edges), 3);
        CHECK(a.cliques == b.cliques);
    }
}

TEST_CASE("pattern instance listing") {
    SUBCASE("2-star on a triangle: three instances on one node set") {
        auto idx = list_pattern_instances(testutil::triangle(), Pattern::star(2));
        CHECK(idx.mu == 3);
        REQUIRE(idx.groups.size() == 1);
        CHECK(idx.groups[0].nodes == NodeSet({0, 1, 2}));
        CHECK(idx.groups[0].multiplicity() == 3);
        // every vertex lies in all three wedges
        for (NodeId v = 0; v < 3; ++v) CHECK(idx.pattern_degree[v] == 3);
    }
    SUBCASE("triangle pattern on K4 equals 3-clique count") {
        auto idx = list_pattern_instances(testutil::complete_graph(4), Pattern::clique(3));
        CHECK(idx.mu == 4);
    }
    SUBCASE("diamond needs five edges on four nodes") {
        auto sparse = DetGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
        auto idx = list_pattern_instances(sparse, Pattern::diamond());
        CHECK(idx.mu == 0);
    }
    SUBCASE("pattern above the size cap rejected") {
        CHECK_THROWS_AS(list_pattern_instances(testutil::complete_graph(8), Pattern::star(6)),
                        TooLargeError);
    }
    SUBCASE("clique patterns agree with clique listing on random graphs") {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            auto g = testutil::random_graph(8, 0.55, seed + 20);
            for (int h : {3, 4}) {
                auto cl = list_h_cliques(g, h);
                auto pt = list_pattern_instances(g, Pattern::clique(h));
                CHECK(pt.mu == cl.mu());
                for (NodeId v = 0; v < 8; ++v)
                    CHECK(pt.pattern_degree[v] == cl.clique_degree[v]);
            }
        }
    }
    SUBCASE("group multiplicities sum to mu") {
        auto g = testutil::random_graph(8, 0.5, 77);
        auto idx = list_pattern_instances(g, Pattern::star(2));
        std::size_t total = 0;
        for (const auto& grp : idx.groups) total += grp.multiplicity();
        CHECK(total == idx.mu);
        std::size_t degsum = 0;
        for (NodeId v = 0; v < 8; ++v) degsum += idx.pattern_degree[v];
        CHECK(degsum == idx.mu * 3);  // |V_psi| = 3
    }
    SUBCASE("instances are distinct edge subsets") {
        auto g = testutil::random_graph(7, 0.6, 5);
        auto idx = list_pattern_instances(g, Pattern::diamond());
        std::set<std::vector<std::pair<NodeId, NodeId>>> seen;
        for (const auto& grp : idx.groups)
            for (const auto& inst : grp.instances) CHECK(seen.insert(inst).second);
    }
}
