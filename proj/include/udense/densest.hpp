#pragma once

#include <cstdint>
#include <vector>

#include "udense/graph.hpp"
#include "udense/maxflow.hpp"
#include "udense/motifs.hpp"

namespace udense {

struct DensestResult {
    Rational optimum;                // rho*, exact
    std::vector<NodeSet> all_densest;  // canonical order (lexicographic)
    NodeSet maximal;                 // union of all densest subgraphs
    bool degenerate = false;         // zero-density world: no edges/cliques/instances
};

struct DensestOptions {
    std::size_t enumeration_cap = 1'000'000;  // max densest subgraphs per world
    std::size_t max_pattern_nodes = 6;
};

/// Density reached by iterative minimum-degree peeling; a lower bound on
/// the exact optimum (and frequently equal to it).
Rational peel_lower_bound(const DetGraph& g, const DensityNotion& notion,
                          const DensestOptions& opts = {});

/// The (k, h)- / (k, psi)-core: repeatedly drop nodes with notion-degree
/// below k. k = 0 returns the graph unchanged.
DetGraph core_prune(const DetGraph& g, const DensityNotion& notion, std::uint32_t k,
                    const DensestOptions& opts = {});

/// Exact maximum density over all node subsets, found by binary search on
/// the parametric flow network down to a gap below 1/(n_c(n_c-1)) and then
/// snapped to the unique rational with denominator <= n_c.
Rational optimal_density(const DetGraph& g, const DensityNotion& notion,
                         const DensestOptions& opts = {});

/// All densest subgraphs of the world, found by condensing the residual
/// graph at alpha = rho* and enumerating independent component sets.
DensestResult enumerate_all_densest(const DetGraph& g, const DensityNotion& notion,
                                    const DensestOptions& opts = {});

struct MaximalDensest {
    NodeSet set;
    Rational optimum;
    bool degenerate = false;
};

/// Union of all densest subgraphs, without enumerating the members:
/// stops right after the SCC condensation.
MaximalDensest maximal_densest(const DetGraph& g, const DensityNotion& notion,
                               const DensestOptions& opts = {});

/// Pattern heuristic: the (k_max, psi)-core plus every intermediate peeling
/// subgraph that is strictly denser than it. Empty when the world has no
/// psi-instance. Every returned set has density >= rho_psi* / |V_psi|.
std::vector<NodeSet> heuristic_pattern_dense(const DetGraph& g, const Pattern& psi,
                                             const DensestOptions& opts = {});

}  // namespace udense
