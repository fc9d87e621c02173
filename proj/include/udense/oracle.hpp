#pragma once

#include <cstdint>
#include <vector>

#include "udense/graph.hpp"
#include "udense/itemsets.hpp"

namespace udense {

/// Exact ground truth by exhaustive possible-world and subset enumeration.
/// Every routine here is deliberately independent of the flow-network path:
/// densities come from brute-force subset scans over bitmask DP tables.
/// Feasible for m <= 20 and n <= 16; the ranking entry points default to
/// tighter limits.

struct OracleLimits {
    std::size_t max_edges = 20;
    std::size_t max_nodes = 10;
};

/// Densest subgraph probability tau(U): total probability of worlds where
/// G[U] attains the maximum density.
double exact_tau(const UncertainGraph& g, const NodeSet& set, const DensityNotion& notion,
                 const OracleLimits& limits = {});

/// Containment probability gamma(U): total probability of worlds where U is
/// inside some densest subgraph (equivalently, inside the maximal one).
double exact_gamma(const UncertainGraph& g, const NodeSet& set, const DensityNotion& notion,
                   const OracleLimits& limits = {});

struct RankedSet {
    NodeSet set;
    double score = 0.0;
};

/// True top-k node sets by tau; ties broken lexicographically.
std::vector<RankedSet> exact_topk(const UncertainGraph& g, const DensityNotion& notion,
                                  std::size_t k, const OracleLimits& limits = {});

/// True top-k closed node sets of size >= l_m by gamma; ties larger-size
/// first, then lexicographic.
std::vector<RankedSet> exact_topk_nds(const UncertainGraph& g, const DensityNotion& notion,
                                      std::size_t k, std::size_t l_m,
                                      const OracleLimits& limits = {});

/// Per-world summary for bound calculators and tests.
struct WorldRecord {
    std::uint64_t mask = 0;    // bit i = edge i present (free edges only, see note)
    double prob = 0.0;
    NodeSet maximal_densest;   // empty when degenerate
    bool degenerate = true;
};

/// All possible worlds with their probabilities and maximal densest
/// subgraphs. Worlds ruled out by p = 1 edges are not listed.
std::vector<WorldRecord> enumerate_worlds(const UncertainGraph& g, const DensityNotion& notion,
                                          const OracleLimits& limits = {});

/// Brute-force densest subgraphs of one deterministic graph: the exact
/// optimum and every maximizing subset, by scanning all 2^n - 1 subsets.
struct BruteDensest {
    Rational optimum;
    std::vector<NodeSet> all_densest;  // lexicographic
    NodeSet maximal;
    bool degenerate = false;
};
BruteDensest brute_force_densest(const DetGraph& g, const DensityNotion& notion);

struct MatchingIdentity {
    double lhs = 0.0;  // tau({v1,v2}) on the augmented uncertain graph
    double rhs = 0.0;  // 0.5^m * number of matchings (empty matching included)
    std::uint64_t matchings = 0;
};

/// Numerical cross-check of the matching-count identity: augment the graph
/// with a fresh p = 1 edge (v1, v2), give every original edge p = 0.5, and
/// compare tau({v1, v2}) against the matching count. The two sides are
/// computed by unrelated routes.
MatchingIdentity matching_identity_check(const DetGraph& det_graph);

}  // namespace udense
