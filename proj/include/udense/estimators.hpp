#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "udense/densest.hpp"
#include "udense/graph.hpp"
#include "udense/itemsets.hpp"

namespace udense {

/// Node sets harvested across sampling rounds with occurrence counts.
/// Rounds whose world has zero density contribute no candidate but still
/// count toward theta, keeping the estimates unbiased over all worlds.
struct CandidatePool {
    std::map<NodeSet, std::uint64_t> counts;
    std::uint64_t rounds = 0;
    std::uint64_t degenerate_rounds = 0;
};

struct EstimateResult {
    struct Entry {
        NodeSet set;
        double estimate = 0.0;
    };
    std::vector<Entry> ranked;
    std::string mode;  // "mpds" or "nds"
    std::string notion;
    std::uint64_t theta = 0;
    std::uint64_t seed = 0;
    std::size_t k = 0;
    std::vector<std::string> warnings;
};

struct EstimatorOptions {
    std::size_t threads = 1;
    DensestOptions densest;
    MineOptions mine;
    bool heuristic = false;  // pattern notions only: harvest heuristic sets
};

/// theta rounds of sample -> enumerate-all-densest -> count; returns the k
/// sets with the highest estimated densest subgraph probability tau-hat.
/// Ties break lexicographically.
EstimateResult estimate_topk_mpds(const UncertainGraph& g, const DensityNotion& notion,
                                  std::size_t k, std::uint64_t theta, std::uint64_t seed,
                                  const EstimatorOptions& opts = {});

/// theta rounds harvesting one maximal densest subgraph each, then top-k
/// closed node-set mining at minimum size l_m; estimates are gamma-hat.
EstimateResult estimate_topk_nds(const UncertainGraph& g, const DensityNotion& notion,
                                 std::size_t k, std::size_t l_m, std::uint64_t theta,
                                 std::uint64_t seed, const EstimatorOptions& opts = {});

// pool-level building blocks (also used by the auto-theta ladder and tests)
void extend_mpds_pool(const UncertainGraph& g, const DensityNotion& notion,
                      std::uint64_t round_begin, std::uint64_t round_end, std::uint64_t seed,
                      const EstimatorOptions& opts, CandidatePool& pool);
void extend_nds_pool(const UncertainGraph& g, const DensityNotion& notion,
                     std::uint64_t round_begin, std::uint64_t round_end, std::uint64_t seed,
                     const EstimatorOptions& opts, CandidatePool& pool);
EstimateResult mpds_from_pool(const CandidatePool& pool, std::size_t k);
EstimateResult nds_from_pool(const CandidatePool& pool, std::size_t k, std::size_t l_m,
                             const MineOptions& opts = {});

/// Doubling ladder 10*2^0 .. 10*2^8; stops when the top-k is identical
/// (Jaccard similarity 1) to the previous rung.
struct LadderRung {
    std::uint64_t theta = 0;
    double runtime_ms = 0.0;
    double jaccard = -1.0;  // vs previous rung; -1 on the first
    EstimateResult result;
};
struct AutoThetaResult {
    std::vector<LadderRung> rungs;
    EstimateResult final;
    bool converged = false;
};
AutoThetaResult auto_theta(const UncertainGraph& g, const DensityNotion& notion, std::size_t k,
                           std::size_t l_m, bool nds, std::uint64_t seed,
                           const EstimatorOptions& opts = {});

/// Jaccard similarity of two collections of node sets.
double topk_jaccard(const std::vector<EstimateResult::Entry>& a,
                    const std::vector<EstimateResult::Entry>& b);

// ---- accuracy bounds ----

/// Probability that the true top-k sets all enter the candidate pool after
/// theta rounds: 1 - sum_i (1 - tau(V_i))^theta, floored at 0.
double mpds_inclusion_bound(const std::vector<double>& true_taus, std::uint64_t theta);

/// Probability that the true top-k sets are returned. true_taus holds the
/// top-(k+1) true values sorted descending; candidate_taus the true values
/// of every candidate set. Each bracket of the product is floored at 0.
double mpds_return_bound(const std::vector<double>& true_taus,
                         const std::vector<double>& candidate_taus, std::uint64_t theta);

struct NdsBounds {
    double closure_bound = 0.0;
    double return_bound = 0.0;
};

/// Oracle-backed nucleus bounds: closure over the worlds whose maximal
/// densest subgraphs contain the true top-k closed sets, and the
/// two-bracket return bound over all closed sets of size >= l_m.
NdsBounds nds_bounds(const UncertainGraph& g, const DensityNotion& notion, std::size_t k,
                     std::size_t l_m, std::uint64_t theta);

}  // namespace udense
