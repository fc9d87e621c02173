#pragma once

#include <string>
#include <vector>

#include "udense/graph.hpp"

namespace testutil {

using namespace udense;

// The four-node running example: edges A-B and A-C with p 0.4, B-D with 0.7.
// A=0, B=1, C=2, D=3.
inline UncertainGraph example_graph() {
    return UncertainGraph::from_edges(4, {{0, 1, 0.4}, {0, 2, 0.4}, {1, 3, 0.7}});
}

inline World world_from_edges(const UncertainGraph& g,
                              const std::vector<std::pair<NodeId, NodeId>>& present) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        for (const auto& [u, v] : present) {
            NodeId a = std::min(u, v), b = std::max(u, v);
            if (g.edges[i].u == a && g.edges[i].v == b) mask |= 1ULL << i;
        }
    }
    return World(g, mask);
}

// Two triangles joined by one bridge edge: {0,1,2} and {3,4,5}, bridge 2-3.
inline DetGraph bridged_triangles() {
    return DetGraph::from_edges(
        6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
}

inline DetGraph triangle() { return DetGraph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}); }

inline DetGraph complete_graph(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
    return DetGraph::from_edges(n, std::move(edges));
}

// Seeded Erdos-Renyi graph; test-local so the library sampler is not
// involved in generating its own test inputs.
inline DetGraph random_graph(std::size_t n, double edge_prob, std::uint64_t seed) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::uint64_t counter = 0;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (stream_uniform(seed, 0x7e57, counter++) < edge_prob) edges.push_back({u, v});
    return DetGraph::from_edges(n, std::move(edges));
}

inline UncertainGraph random_uncertain_graph(std::size_t n, double edge_prob,
                                             std::uint64_t seed) {
    std::vector<UncertainGraph::Edge> edges;
    std::uint64_t counter = 0;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (stream_uniform(seed, 0x7e57, counter++) < edge_prob) {
                double p = stream_uniform(seed, 0x9801, counter);
                if (p <= 0.01) p = 0.01;
                edges.push_back({u, v, p});
            }
    return UncertainGraph::from_edges(n, std::move(edges));
}

}  // namespace testutil
