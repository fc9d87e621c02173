#pragma once

#include <cstdint>
#include <vector>

#include "udense/graph.hpp"

namespace udense {

/// h-cliques of a deterministic graph, plus the (h-1)-clique side table the
/// flow network needs: each lambda with its completing vertices.
struct CliqueIndex {
    int h = 2;
    std::vector<std::vector<NodeId>> cliques;  // sorted tuples, lexicographic
    struct Lambda {
        std::vector<NodeId> members;      // the (h-1)-clique, sorted
        std::vector<NodeId> completions;  // vertices forming an h-clique with it
    };
    std::vector<Lambda> lambda_set;            // only lambdas inside h-cliques
    std::vector<std::uint32_t> clique_degree;  // deg_G(v, h), indexed by raw id

    std::size_t mu() const { return cliques.size(); }
};

/// h >= 2; every h-clique listed exactly once as a sorted tuple.
CliqueIndex list_h_cliques(const DetGraph& g, int h);

/// psi-instances: non-induced subgraphs isomorphic to psi, one per distinct
/// edge subset, grouped by node set.
struct InstanceIndex {
    Pattern pattern;
    struct Group {
        NodeSet nodes;
        // one entry per instance on this node set; each is the instance's
        // sorted edge list
        std::vector<std::vector<std::pair<NodeId, NodeId>>> instances;
        std::size_t multiplicity() const { return instances.size(); }
    };
    std::vector<Group> groups;                  // sorted by node set
    std::vector<std::uint32_t> pattern_degree;  // deg_G(v, psi), indexed by raw id
    std::size_t mu = 0;                         // total instances
};

InstanceIndex list_pattern_instances(const DetGraph& g, const Pattern& psi,
                                     std::size_t max_pattern_nodes = 6);

}  // namespace udense
