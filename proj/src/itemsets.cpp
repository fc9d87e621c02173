#include "udense/itemsets.hpp"

#include <set>

namespace udense {

namespace {

// Closed sets are enumerated top-down by prefix-preserving closure
// extension over per-item tidsets: each closed set with positive support is
// visited exactly once, and support only shrinks along a DFS branch. That
// anti-monotonicity is what lets the top-k threshold prune: once k closed
// sets of size >= l_m are held, any branch whose support falls strictly
// below the k-th best can be dropped.
struct Miner {
    using Words = std::vector<std::uint64_t>;

    std::size_t item_count = 0;     // items in frequency order
    std::size_t tid_count = 0;      // distinct transactions
    std::size_t tid_words = 0;
    std::vector<Words> item_tids;   // per item: transactions containing it
    std::vector<double> tid_weight;
    std::vector<NodeId> node_of_item;

    std::size_t l_m = 1;
    std::size_t k = 0;              // 0 = collect everything
    std::size_t explored_cap = 0;
    std::size_t explored = 0;

    struct RankCmp {
        bool operator()(const ClosedSet& a, const ClosedSet& b) const {
            if (a.support != b.support) return a.support > b.support;
            if (a.set.size() != b.set.size()) return a.set.size() > b.set.size();
            return a.set < b.set;
        }
    };
    std::set<ClosedSet, RankCmp> best;  // the current top-k (k mode)
    std::vector<ClosedSet> all;         // collect-everything mode

    explicit Miner(const TransactionDb& db) {
        tid_count = db.distinct.size();
        tid_words = (tid_count + 63) / 64;
        tid_weight.reserve(tid_count);
        std::map<NodeId, double> freq;
        std::vector<const NodeSet*> transactions;
        for (const auto& [t, w] : db.distinct) {
            transactions.push_back(&t);
            tid_weight.push_back(w);
            for (NodeId v : t.members) freq[v] += w;
        }
        // items by descending weight (node id breaks ties) so that heavy
        // branches come first and the threshold rises early
        std::vector<std::pair<double, NodeId>> order;
        for (const auto& [v, w] : freq) order.push_back({w, v});
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        item_count = order.size();
        node_of_item.resize(item_count);
        std::vector<std::size_t> item_of_node_rank;
        std::map<NodeId, std::size_t> item_of;
        for (std::size_t i = 0; i < item_count; ++i) {
            node_of_item[i] = order[i].second;
            item_of[order[i].second] = i;
        }
        item_tids.assign(item_count, Words(tid_words, 0));
        for (std::size_t t = 0; t < tid_count; ++t)
            for (NodeId v : transactions[t]->members)
                item_tids[item_of[v]][t >> 6] |= 1ULL << (t & 63);
    }

    double weight_of(const Words& tids) const {
        double s = 0.0;
        for (std::size_t w = 0; w < tid_words; ++w) {
            std::uint64_t bits = tids[w];
            while (bits) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
                s += tid_weight[w * 64 + b];
                bits &= bits - 1;
            }
        }
        return s;
    }

    bool tids_subset(const Words& a, const Words& b) const {  // a <= b
        for (std::size_t w = 0; w < tid_words; ++w)
            if (a[w] & ~b[w]) return false;
        return true;
    }

    double prune_threshold() const {
        if (k == 0 || best.size() < k) return -1.0;
        return std::prev(best.end())->support;
    }

    void record(const std::vector<char>& in_set, double support) {
        if (++explored > explored_cap)
            throw EnumerationCapError(explored, "closed-set search cap exceeded");
        std::vector<NodeId> members;
        for (std::size_t i = 0; i < item_count; ++i)
            if (in_set[i]) members.push_back(node_of_item[i]);
        if (members.size() < l_m) return;
        ClosedSet entry{NodeSet(std::move(members)), support};
        if (k == 0) {
            all.push_back(std::move(entry));
        } else {
            best.insert(std::move(entry));
            if (best.size() > k) best.erase(std::prev(best.end()));
        }
    }

    // C is closed with tidset `tids`; extend with items after `core`.
    void dfs(std::vector<char>& in_set, const Words& tids, double support,
             std::size_t core_plus_one) {
        record(in_set, support);
        Words ext(tid_words);
        for (std::size_t j = core_plus_one; j < item_count; ++j) {
            if (in_set[j]) continue;
            bool empty = true;
            for (std::size_t w = 0; w < tid_words; ++w) {
                ext[w] = tids[w] & item_tids[j][w];
                if (ext[w]) empty = false;
            }
            if (empty) continue;
            const double sup = weight_of(ext);
            if (sup < prune_threshold()) continue;  // ties survive: strict raise only
            // closure of C + j; items below j joining the closure would mean
            // this closed set belongs to an earlier branch
            bool prefix_ok = true;
            std::vector<std::size_t> added;
            for (std::size_t v = 0; v < item_count; ++v) {
                if (in_set[v] || v == j) continue;
                if (tids_subset(ext, item_tids[v])) {
                    if (v < j) {
                        prefix_ok = false;
                        break;
                    }
                    added.push_back(v);
                }
            }
            if (!prefix_ok) continue;
            in_set[j] = 1;
            for (std::size_t v : added) in_set[v] = 1;
            dfs(in_set, ext, sup, j + 1);
            in_set[j] = 0;
            for (std::size_t v : added) in_set[v] = 0;
        }
    }

    void run() {
        if (tid_count == 0) return;
        // root: closure of the empty set under the full tidset
        Words full(tid_words, 0);
        for (std::size_t t = 0; t < tid_count; ++t) full[t >> 6] |= 1ULL << (t & 63);
        std::vector<char> in_set(item_count, 0);
        for (std::size_t v = 0; v < item_count; ++v)
            if (tids_subset(full, item_tids[v])) in_set[v] = 1;
        dfs(in_set, full, weight_of(full), 0);
    }
};

void sort_by_rank(std::vector<ClosedSet>& sets) {
    std::sort(sets.begin(), sets.end(), Miner::RankCmp{});
}

}  // namespace

std::vector<ClosedSet> mine_all_closed(const TransactionDb& db, std::size_t l_m,
                                       const MineOptions& opts) {
    if (l_m < 1) throw std::invalid_argument("l_m must be at least 1");
    Miner miner(db);
    miner.l_m = l_m;
    miner.explored_cap = opts.explored_cap;
    miner.run();
    sort_by_rank(miner.all);
    return std::move(miner.all);
}

std::vector<ClosedSet> mine_topk_closed(const TransactionDb& db, std::size_t k, std::size_t l_m,
                                        const MineOptions& opts) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (l_m < 1) throw std::invalid_argument("l_m must be at least 1");
    Miner miner(db);
    miner.l_m = l_m;
    miner.k = k;
    miner.explored_cap = opts.explored_cap;
    miner.run();
    return std::vector<ClosedSet>(miner.best.begin(), miner.best.end());
}

}  // namespace udense
