#include "udense/oracle.hpp"

#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

namespace udense {

namespace {

struct SkeletonItem {
    std::uint32_t node_mask = 0;  // over compact node indices
    std::uint32_t edge_mask = 0;  // over parent edge indices
};

constexpr std::size_t MAX_BRUTE_NODES = 16;

std::uint32_t popcnt(std::uint32_t x) { return static_cast<std::uint32_t>(__builtin_popcount(x)); }

// All density units of the skeleton graph, by direct subset/permutation
// scans. Kept free of the motifs module so the oracle is an independent
// route for cross-checks.
std::vector<SkeletonItem> skeleton_items(const DetGraph& skel, const DensityNotion& notion,
                                         const std::vector<std::uint32_t>& compact_of,
                                         const std::map<std::pair<NodeId, NodeId>, std::uint32_t>& edge_index) {
    std::vector<SkeletonItem> items;
    auto edge_bit = [&](NodeId a, NodeId b) {
        if (a > b) std::swap(a, b);
        return std::uint32_t(1) << edge_index.at({a, b});
    };
    switch (notion.kind) {
        case DensityNotion::Kind::Edge: {
            for (const auto& e : skel.edges) {
                SkeletonItem it;
                it.node_mask = (1u << compact_of[e.first]) | (1u << compact_of[e.second]);
                it.edge_mask = edge_bit(e.first, e.second);
                items.push_back(it);
            }
            break;
        }
        case DensityNotion::Kind::Clique: {
            const int h = notion.h;
            // enumerate h-subsets of active nodes via recursion
            std::vector<NodeId> active = skel.nodes;
            std::vector<std::size_t> pick;
            auto rec = [&](auto&& self, std::size_t start) -> void {
                if (static_cast<int>(pick.size()) == h) {
                    for (std::size_t i = 0; i < pick.size(); ++i)
                        for (std::size_t j = i + 1; j < pick.size(); ++j)
                            if (!skel.has_edge(active[pick[i]], active[pick[j]])) return;
                    SkeletonItem it;
                    for (std::size_t i = 0; i < pick.size(); ++i) {
                        it.node_mask |= 1u << compact_of[active[pick[i]]];
                        for (std::size_t j = i + 1; j < pick.size(); ++j)
                            it.edge_mask |= edge_bit(active[pick[i]], active[pick[j]]);
                    }
                    items.push_back(it);
                    return;
                }
                for (std::size_t i = start; i < active.size(); ++i) {
                    pick.push_back(i);
                    self(self, i + 1);
                    pick.pop_back();
                }
            };
            rec(rec, 0);
            break;
        }
        case DensityNotion::Kind::Pattern: {
            const Pattern& psi = notion.psi;
            const std::size_t q = psi.node_count;
            std::vector<NodeId> active = skel.nodes;
            if (active.size() < q) break;
            std::vector<std::size_t> pick;
            std::set<std::uint32_t> seen_edge_masks;
            auto try_perms = [&]() {
                std::vector<NodeId> verts(q);
                for (std::size_t i = 0; i < q; ++i) verts[i] = active[pick[i]];
                std::sort(verts.begin(), verts.end());
                std::vector<NodeId> perm = verts;
                do {
                    std::uint32_t emask = 0;
                    bool ok = true;
                    for (const auto& pe : psi.edges) {
                        NodeId a = perm[pe.first], b = perm[pe.second];
                        if (!skel.has_edge(a, b)) {
                            ok = false;
                            break;
                        }
                        emask |= edge_bit(a, b);
                    }
                    if (ok && seen_edge_masks.insert(emask).second) {
                        SkeletonItem it;
                        it.edge_mask = emask;
                        for (NodeId v : verts) it.node_mask |= 1u << compact_of[v];
                        items.push_back(it);
                    }
                } while (std::next_permutation(perm.begin(), perm.end()));
            };
            auto rec = [&](auto&& self, std::size_t start) -> void {
                if (pick.size() == q) {
                    try_perms();
                    return;
                }
                for (std::size_t i = start; i < active.size(); ++i) {
                    pick.push_back(i);
                    self(self, i + 1);
                    pick.pop_back();
                }
            };
            rec(rec, 0);
            break;
        }
    }
    return items;
}

// Subset counting table: cnt[S] = number of present items whose node mask is
// inside S (sum-over-subsets DP).
void fill_counts(const std::vector<SkeletonItem>& items, std::uint32_t world_mask,
                 std::size_t n, std::vector<std::int32_t>& cnt) {
    std::fill(cnt.begin(), cnt.end(), 0);
    for (const auto& it : items)
        if ((it.edge_mask & ~world_mask) == 0) ++cnt[it.node_mask];
    for (std::size_t b = 0; b < n; ++b)
        for (std::uint32_t s = 0; s < cnt.size(); ++s)
            if (s & (1u << b)) cnt[s] += cnt[s ^ (1u << b)];
}

struct WorldDensest {
    std::int32_t best_count = 0;   // numerator of the max density
    std::uint32_t best_size = 1;   // its denominator
    std::vector<std::uint32_t> argmax;  // all maximizing subsets (compact masks)
    std::uint32_t union_mask = 0;
};

// Max density over all nonempty subsets plus every maximizer.
WorldDensest scan_world(const std::vector<std::int32_t>& cnt) {
    WorldDensest wd;
    const std::uint32_t full = static_cast<std::uint32_t>(cnt.size());
    for (std::uint32_t s = 1; s < full; ++s) {
        std::int64_t lhs = static_cast<std::int64_t>(cnt[s]) * wd.best_size;
        std::int64_t rhs = static_cast<std::int64_t>(wd.best_count) * popcnt(s);
        if (lhs > rhs) {
            wd.best_count = cnt[s];
            wd.best_size = popcnt(s);
        }
    }
    if (wd.best_count == 0) return wd;  // degenerate world
    for (std::uint32_t s = 1; s < full; ++s) {
        if (static_cast<std::int64_t>(cnt[s]) * wd.best_size ==
            static_cast<std::int64_t>(wd.best_count) * popcnt(s)) {
            wd.argmax.push_back(s);
            wd.union_mask |= s;
        }
    }
    return wd;
}

struct OracleContext {
    const UncertainGraph* g = nullptr;
    std::vector<std::uint32_t> compact_of;   // raw id -> compact index
    std::vector<NodeId> raw_of;              // compact index -> raw id
    std::vector<SkeletonItem> items;
    std::vector<std::size_t> free_edges;     // indices with p < 1
    std::uint32_t fixed_mask = 0;            // edges with p = 1
    std::size_t n = 0;
};

OracleContext make_context(const UncertainGraph& g, const DensityNotion& notion,
                           std::size_t max_edges) {
    if (g.edge_count() > max_edges)
        throw TooLargeError("graph has " + std::to_string(g.edge_count()) +
                            " edges, oracle cap is " + std::to_string(max_edges));
    if (g.node_count > MAX_BRUTE_NODES)
        throw TooLargeError("graph has " + std::to_string(g.node_count) +
                            " nodes, oracle cap is " + std::to_string(MAX_BRUTE_NODES));
    OracleContext ctx;
    ctx.g = &g;
    ctx.n = g.node_count;
    ctx.compact_of.resize(g.node_count);
    ctx.raw_of.resize(g.node_count);
    for (std::size_t i = 0; i < g.node_count; ++i) {
        ctx.compact_of[i] = static_cast<std::uint32_t>(i);
        ctx.raw_of[i] = static_cast<NodeId>(i);
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::map<std::pair<NodeId, NodeId>, std::uint32_t> edge_index;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        edges.push_back({g.edges[i].u, g.edges[i].v});
        edge_index[{g.edges[i].u, g.edges[i].v}] = static_cast<std::uint32_t>(i);
        if (g.edges[i].p < 1.0)
            ctx.free_edges.push_back(i);
        else
            ctx.fixed_mask |= std::uint32_t(1) << i;
    }
    DetGraph skel = DetGraph::from_edges(g.node_count, std::move(edges));
    ctx.items = skeleton_items(skel, notion, ctx.compact_of, edge_index);
    return ctx;
}

double world_probability(const UncertainGraph& g, const std::vector<std::size_t>& free_edges,
                         std::uint64_t free_bits) {
    double prob = 1.0;
    for (std::size_t i = 0; i < free_edges.size(); ++i) {
        const double p = g.edges[free_edges[i]].p;
        prob *= ((free_bits >> i) & 1u) ? p : (1.0 - p);
    }
    return prob;
}

std::uint32_t compact_mask(const OracleContext& ctx, const NodeSet& s) {
    std::uint32_t m = 0;
    for (NodeId v : s.members) {
        if (v >= ctx.n) throw std::invalid_argument("node id out of range");
        m |= 1u << ctx.compact_of[v];
    }
    return m;
}

NodeSet mask_to_nodeset(const OracleContext& ctx, std::uint32_t mask) {
    std::vector<NodeId> out;
    while (mask) {
        unsigned b = static_cast<unsigned>(__builtin_ctz(mask));
        out.push_back(ctx.raw_of[b]);
        mask &= mask - 1;
    }
    return NodeSet(std::move(out));
}

template <typename Visit>
void for_each_world(const OracleContext& ctx, Visit&& visit) {
    const std::size_t f = ctx.free_edges.size();
    std::vector<std::int32_t> cnt(std::size_t(1) << ctx.n);
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << f); ++bits) {
        std::uint32_t world_mask = ctx.fixed_mask;
        for (std::size_t i = 0; i < f; ++i)
            if ((bits >> i) & 1u) world_mask |= std::uint32_t(1) << ctx.free_edges[i];
        const double prob = world_probability(*ctx.g, ctx.free_edges, bits);
        fill_counts(ctx.items, world_mask, ctx.n, cnt);
        WorldDensest wd = scan_world(cnt);
        visit(world_mask, prob, wd, cnt);
    }
}

}  // namespace

double exact_tau(const UncertainGraph& g, const NodeSet& set, const DensityNotion& notion,
                 const OracleLimits& limits) {
    if (set.empty()) throw std::invalid_argument("tau of an empty node set");
    OracleContext ctx = make_context(g, notion, limits.max_edges);
    const std::uint32_t target = compact_mask(ctx, set);
    const std::uint32_t tsize = popcnt(target);
    double tau = 0.0;
    for_each_world(ctx, [&](std::uint32_t, double prob, const WorldDensest& wd,
                            const std::vector<std::int32_t>& cnt) {
        if (wd.best_count == 0) return;  // degenerate worlds mark no set densest
        if (static_cast<std::int64_t>(cnt[target]) * wd.best_size ==
            static_cast<std::int64_t>(wd.best_count) * tsize)
            tau += prob;
    });
    return tau;
}

double exact_gamma(const UncertainGraph& g, const NodeSet& set, const DensityNotion& notion,
                   const OracleLimits& limits) {
    if (set.empty()) throw std::invalid_argument("gamma of an empty node set");
    OracleContext ctx = make_context(g, notion, limits.max_edges);
    const std::uint32_t target = compact_mask(ctx, set);
    double gamma = 0.0;
    for_each_world(ctx, [&](std::uint32_t, double prob, const WorldDensest& wd,
                            const std::vector<std::int32_t>&) {
        if (wd.best_count == 0) return;
        if ((target & ~wd.union_mask) == 0) gamma += prob;
    });
    return gamma;
}

std::vector<RankedSet> exact_topk(const UncertainGraph& g, const DensityNotion& notion,
                                  std::size_t k, const OracleLimits& limits) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (g.node_count > limits.max_nodes)
        throw TooLargeError("exact top-k supports at most " + std::to_string(limits.max_nodes) +
                            " nodes");
    OracleContext ctx = make_context(g, notion, limits.max_edges);
    std::unordered_map<std::uint32_t, double> tau;
    for_each_world(ctx, [&](std::uint32_t, double prob, const WorldDensest& wd,
                            const std::vector<std::int32_t>&) {
        for (std::uint32_t s : wd.argmax) tau[s] += prob;
    });
    std::vector<RankedSet> ranked;
    ranked.reserve(tau.size());
    for (const auto& [mask, t] : tau) ranked.push_back({mask_to_nodeset(ctx, mask), t});
    std::sort(ranked.begin(), ranked.end(), [](const RankedSet& a, const RankedSet& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.set < b.set;
    });
    if (ranked.size() > k) ranked.resize(k);
    return ranked;
}

std::vector<RankedSet> exact_topk_nds(const UncertainGraph& g, const DensityNotion& notion,
                                      std::size_t k, std::size_t l_m,
                                      const OracleLimits& limits) {
    if (k < 1 || l_m < 1) throw std::invalid_argument("k and l_m must be at least 1");
    if (g.node_count > limits.max_nodes)
        throw TooLargeError("exact top-k supports at most " + std::to_string(limits.max_nodes) +
                            " nodes");
    OracleContext ctx = make_context(g, notion, limits.max_edges);
    TransactionDb db;
    for_each_world(ctx, [&](std::uint32_t, double prob, const WorldDensest& wd,
                            const std::vector<std::int32_t>&) {
        if (wd.best_count == 0) return;
        db.add(mask_to_nodeset(ctx, wd.union_mask), prob);
    });
    auto closed = mine_topk_closed(db, k, l_m);
    std::vector<RankedSet> ranked;
    for (auto& c : closed) ranked.push_back({std::move(c.set), c.support});
    return ranked;
}

std::vector<WorldRecord> enumerate_worlds(const UncertainGraph& g, const DensityNotion& notion,
                                          const OracleLimits& limits) {
    OracleContext ctx = make_context(g, notion, limits.max_edges);
    std::vector<WorldRecord> out;
    for_each_world(ctx, [&](std::uint32_t mask, double prob, const WorldDensest& wd,
                            const std::vector<std::int32_t>&) {
        WorldRecord rec;
        rec.mask = mask;
        rec.prob = prob;
        rec.degenerate = (wd.best_count == 0);
        if (!rec.degenerate) rec.maximal_densest = mask_to_nodeset(ctx, wd.union_mask);
        out.push_back(std::move(rec));
    });
    return out;
}

BruteDensest brute_force_densest(const DetGraph& g, const DensityNotion& notion) {
    if (g.order() > MAX_BRUTE_NODES)
        throw TooLargeError("brute-force densest supports at most 16 active nodes");
    BruteDensest result;
    // compact the active nodes
    std::vector<std::uint32_t> compact_of(g.universe, 0);
    std::vector<NodeId> raw_of(g.order());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        compact_of[g.nodes[i]] = static_cast<std::uint32_t>(i);
        raw_of[i] = g.nodes[i];
    }
    std::map<std::pair<NodeId, NodeId>, std::uint32_t> edge_index;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        edge_index[g.edges[i]] = static_cast<std::uint32_t>(i);
    auto items = skeleton_items(g, notion, compact_of, edge_index);

    const std::size_t n = g.order();
    std::vector<std::int32_t> cnt(std::size_t(1) << n);
    fill_counts(items, ~std::uint32_t(0), n, cnt);
    WorldDensest wd = scan_world(cnt);
    if (wd.best_count == 0) {
        result.degenerate = true;
        result.optimum = Rational(0);
        for (NodeId v : g.nodes) result.all_densest.push_back(NodeSet({v}));
        std::vector<NodeId> all(g.nodes);
        result.maximal = NodeSet(std::move(all));
        return result;
    }
    result.optimum = Rational(wd.best_count, wd.best_size);
    for (std::uint32_t s : wd.argmax) {
        std::vector<NodeId> members;
        std::uint32_t m = s;
        while (m) {
            unsigned b = static_cast<unsigned>(__builtin_ctz(m));
            members.push_back(raw_of[b]);
            m &= m - 1;
        }
        result.all_densest.push_back(NodeSet(std::move(members)));
    }
    std::sort(result.all_densest.begin(), result.all_densest.end());
    std::vector<NodeId> union_members;
    std::uint32_t um = wd.union_mask;
    while (um) {
        unsigned b = static_cast<unsigned>(__builtin_ctz(um));
        union_members.push_back(raw_of[b]);
        um &= um - 1;
    }
    result.maximal = NodeSet(std::move(union_members));
    return result;
}

namespace {

std::uint64_t count_matchings(const std::vector<std::pair<NodeId, NodeId>>& edges,
                              std::size_t i, std::uint32_t used) {
    if (i == edges.size()) return 1;
    std::uint64_t total = count_matchings(edges, i + 1, used);  // skip edge i
    std::uint32_t em = (1u << edges[i].first) | (1u << edges[i].second);
    if ((used & em) == 0) total += count_matchings(edges, i + 1, used | em);
    return total;
}

}  // namespace

MatchingIdentity matching_identity_check(const DetGraph& det_graph) {
    const std::size_t m = det_graph.edges.size();
    const std::size_t n = det_graph.universe;
    if (m > 18) throw TooLargeError("matching identity check supports at most 18 edges");
    if (n + 2 > MAX_BRUTE_NODES)
        throw TooLargeError("matching identity check supports at most 14 nodes");

    std::vector<UncertainGraph::Edge> edges;
    for (const auto& e : det_graph.edges) edges.push_back({e.first, e.second, 0.5});
    const NodeId v1 = static_cast<NodeId>(n);
    const NodeId v2 = static_cast<NodeId>(n + 1);
    edges.push_back({v1, v2, 1.0});
    UncertainGraph aug = UncertainGraph::from_edges(n + 2, std::move(edges));

    MatchingIdentity mi;
    OracleLimits limits;
    limits.max_edges = m + 1;
    limits.max_nodes = n + 2;
    mi.lhs = exact_tau(aug, NodeSet({v1, v2}), DensityNotion::edge(), limits);
    mi.matchings = count_matchings(det_graph.edges, 0, 0);
    mi.rhs = std::ldexp(static_cast<double>(mi.matchings), -static_cast<int>(m));
    return mi;
}

}  // namespace udense
