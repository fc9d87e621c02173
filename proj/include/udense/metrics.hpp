#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "udense/graph.hpp"

namespace udense {

/// Expected density of G[U]: per-edge probabilities for the edge notion,
/// per-instance products of edge probabilities for cliques and patterns,
/// divided by |U|.
double expected_density(const UncertainGraph& g, const NodeSet& set,
                        const DensityNotion& notion);

struct ExpectedDensest {
    NodeSet set;        // maximal maximizer of the expected density
    double density = 0.0;
};

/// Expected densest subgraph baseline via the weighted parametric network;
/// probabilities quantized at 1e-6 (exact on two-decimal inputs).
ExpectedDensest expected_densest_subgraph(const UncertainGraph& g, const DensityNotion& notion);

/// 2 * sum p(e) / (|U| (|U|-1)); requires |U| >= 2.
double probabilistic_density(const UncertainGraph& g, const NodeSet& set);

/// 3 * weighted triangles / weighted wedges; 0 when U has no wedge.
double probabilistic_clustering_coefficient(const UncertainGraph& g, const NodeSet& set);

/// Highest fraction of the set inside one ground-truth community.
double purity(const NodeSet& set, const std::map<NodeId, int>& labels);

/// Labels file: lines "node community-id".
std::map<NodeId, int> load_labels(const std::string& path);

/// Mean over ranks of the F1 score between ours[i] and exact[i];
/// the rankings must have equal length.
double rank_f1(const std::vector<NodeSet>& ours, const std::vector<NodeSet>& exact);

}  // namespace udense
