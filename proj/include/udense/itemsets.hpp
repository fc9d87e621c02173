#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "udense/common.hpp"

namespace udense {

/// Candidate-pool transactions for the nucleus miner: one maximal densest
/// subgraph per non-degenerate round, deduplicated with weights. Weights are
/// round counts for the estimator and world probabilities for the oracle.
struct TransactionDb {
    std::map<NodeSet, double> distinct;

    void add(const NodeSet& t, double weight = 1.0) { distinct[t] += weight; }
    std::size_t distinct_count() const { return distinct.size(); }
};

struct ClosedSet {
    NodeSet set;
    double support = 0.0;
};

struct MineOptions {
    std::size_t explored_cap = 1'000'000;  // closed sets explored before erroring
};

/// Top-k closed node sets of size >= l_m by support. Closed = no strict
/// superset with equal support; every closed set is an intersection of the
/// transactions containing it. Ties: larger size first, then lexicographic.
std::vector<ClosedSet> mine_topk_closed(const TransactionDb& db, std::size_t k, std::size_t l_m,
                                        const MineOptions& opts = {});

/// All closed sets of size >= l_m (used by the exact oracle and the bound
/// calculators, where the full candidate list is needed).
std::vector<ClosedSet> mine_all_closed(const TransactionDb& db, std::size_t l_m,
                                       const MineOptions& opts = {});

}  // namespace udense
