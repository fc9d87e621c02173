#include "udense/densest.hpp"

#include <map>
#include <set>

namespace udense {

namespace {

// Unified per-world item view: an item is one density unit (edge, h-clique
// or psi-instance) given by its member vertices.
std::vector<std::vector<NodeId>> collect_items(const DetGraph& g, const DensityNotion& notion,
                                               std::size_t max_pattern_nodes) {
    std::vector<std::vector<NodeId>> items;
    switch (notion.kind) {
        case DensityNotion::Kind::Edge:
            items.reserve(g.edges.size());
            for (const auto& e : g.edges) items.push_back({e.first, e.second});
            break;
        case DensityNotion::Kind::Clique:
            items = list_h_cliques(g, notion.h).cliques;
            break;
        case DensityNotion::Kind::Pattern: {
            auto idx = list_pattern_instances(g, notion.psi, max_pattern_nodes);
            for (const auto& grp : idx.groups)
                for (std::size_t i = 0; i < grp.multiplicity(); ++i)
                    items.push_back(grp.nodes.members);
            break;
        }
    }
    return items;
}

struct PeelTrace {
    std::vector<NodeId> removal_order;   // alive set before step i is order[i..]
    std::vector<Rational> density;       // density of the alive set before step i
    std::vector<std::uint32_t> core_number;  // per raw id
    std::uint32_t k_max = 0;
    Rational best;                       // max density over all steps
};

PeelTrace peel_trace(const DetGraph& g, const std::vector<std::vector<NodeId>>& items) {
    const std::size_t universe = g.universe;
    std::vector<std::vector<std::uint32_t>> node_items(universe);
    for (std::uint32_t i = 0; i < items.size(); ++i)
        for (NodeId v : items[i]) node_items[v].push_back(i);
    std::vector<std::uint32_t> deg(universe, 0);
    for (NodeId v : g.nodes) deg[v] = static_cast<std::uint32_t>(node_items[v].size());
    std::vector<char> item_alive(items.size(), 1);
    std::vector<char> node_alive(universe, 0);
    for (NodeId v : g.nodes) node_alive[v] = 1;

    std::set<std::pair<std::uint32_t, NodeId>> queue;
    for (NodeId v : g.nodes) queue.insert({deg[v], v});

    PeelTrace trace;
    trace.core_number.assign(universe, 0);
    std::int64_t alive_items = static_cast<std::int64_t>(items.size());
    std::int64_t alive_nodes = static_cast<std::int64_t>(g.order());
    trace.best = Rational(0);
    std::uint32_t k = 0;
    while (alive_nodes > 0) {
        trace.density.push_back(Rational(alive_items, alive_nodes));
        if (trace.density.back() > trace.best) trace.best = trace.density.back();
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        k = std::max(k, d);
        trace.core_number[v] = k;
        trace.removal_order.push_back(v);
        node_alive[v] = 0;
        --alive_nodes;
        for (std::uint32_t ii : node_items[v]) {
            if (!item_alive[ii]) continue;
            item_alive[ii] = 0;
            --alive_items;
            for (NodeId u : items[ii]) {
                if (u == v || !node_alive[u]) continue;
                queue.erase({deg[u], u});
                --deg[u];
                queue.insert({deg[u], u});
            }
        }
    }
    trace.k_max = k;
    return trace;
}

DetGraph prune_by_degree(const DetGraph& g, const std::vector<std::vector<NodeId>>& items,
                         std::uint32_t k) {
    if (k == 0) return g;
    const std::size_t universe = g.universe;
    std::vector<std::vector<std::uint32_t>> node_items(universe);
    for (std::uint32_t i = 0; i < items.size(); ++i)
        for (NodeId v : items[i]) node_items[v].push_back(i);
    std::vector<std::uint32_t> deg(universe, 0);
    std::vector<char> node_alive(universe, 0), item_alive(items.size(), 1);
    for (NodeId v : g.nodes) {
        node_alive[v] = 1;
        deg[v] = static_cast<std::uint32_t>(node_items[v].size());
    }
    std::vector<NodeId> pending;
    for (NodeId v : g.nodes)
        if (deg[v] < k) pending.push_back(v);
    while (!pending.empty()) {
        NodeId v = pending.back();
        pending.pop_back();
        if (!node_alive[v]) continue;
        node_alive[v] = 0;
        for (std::uint32_t ii : node_items[v]) {
            if (!item_alive[ii]) continue;
            item_alive[ii] = 0;
            for (NodeId u : items[ii]) {
                if (u == v || !node_alive[u]) continue;
                if (deg[u]-- == k) pending.push_back(u);
            }
        }
    }
    std::vector<NodeId> keep;
    for (NodeId v : g.nodes)
        if (node_alive[v]) keep.push_back(v);
    return g.induced(keep);
}

struct NotionIndex {
    CliqueIndex cliques;
    InstanceIndex instances;
    std::int64_t mu = 0;
};

NotionIndex build_index(const DetGraph& g, const DensityNotion& notion,
                        std::size_t max_pattern_nodes) {
    NotionIndex idx;
    switch (notion.kind) {
        case DensityNotion::Kind::Edge:
            idx.mu = static_cast<std::int64_t>(g.edges.size());
            break;
        case DensityNotion::Kind::Clique:
            idx.cliques = list_h_cliques(g, notion.h);
            idx.mu = static_cast<std::int64_t>(idx.cliques.mu());
            break;
        case DensityNotion::Kind::Pattern:
            idx.instances = list_pattern_instances(g, notion.psi, max_pattern_nodes);
            idx.mu = static_cast<std::int64_t>(idx.instances.mu);
            break;
    }
    return idx;
}

FlowNetwork build_network(const DetGraph& g, const DensityNotion& notion, const NotionIndex& idx,
                          const Rational& alpha) {
    switch (notion.kind) {
        case DensityNotion::Kind::Edge:
            return build_edge_flow_network(g, alpha);
        case DensityNotion::Kind::Clique:
            return build_clique_flow_network(g, idx.cliques, alpha);
        case DensityNotion::Kind::Pattern:
            return build_pattern_flow_network(g, idx.instances, alpha);
    }
    throw std::logic_error("unknown notion");
}

std::uint32_t ceil_of(const Rational& r) {
    return static_cast<std::uint32_t>((r.num + r.den - 1) / r.den);
}

struct SolveContext {
    DetGraph core;
    NotionIndex idx;
    Rational rho;
    FlowNetwork net;
    MaxflowResult flow;
};

// Saturation value of the network at parameter a/b: unit * mu(core) * b.
std::int64_t full_value(const DensityNotion& notion, std::int64_t mu, std::int64_t b) {
    return static_cast<std::int64_t>(notion.unit_size()) * mu * b;
}

// True iff some subgraph of `core` is strictly denser than alpha.
bool denser_than(const DetGraph& core, const DensityNotion& notion, const NotionIndex& idx,
                 const Rational& alpha) {
    FlowNetwork net = build_network(core, notion, idx, alpha);
    MaxflowResult mf = max_flow(net);
    return mf.value < full_value(notion, idx.mu, alpha.den);
}

// Exact optimum plus the solved network at alpha = rho*, on the pruned core.
// Returns false for a degenerate (zero-density) world.
bool solve_exact(const DetGraph& g, const DensityNotion& notion, const DensestOptions& opts,
                 SolveContext& ctx) {
    auto items = collect_items(g, notion, opts.max_pattern_nodes);
    if (items.empty()) return false;
    PeelTrace trace = peel_trace(g, items);
    Rational rho_tilde = trace.best;
    ctx.core = prune_by_degree(g, items, ceil_of(rho_tilde));
    ctx.idx = build_index(ctx.core, notion, opts.max_pattern_nodes);

    const std::int64_t n_c = static_cast<std::int64_t>(ctx.core.order());
    Rational lo = rho_tilde;
    Rational hi(ctx.idx.mu);
    if (!denser_than(ctx.core, notion, ctx.idx, lo)) {
        ctx.rho = lo;  // the peeling bound is already optimal
    } else {
        const Rational gap(1, n_c * (n_c - 1));
        while (hi - lo >= gap) {
            Rational mid = (lo + hi) * Rational(1, 2);
            if (denser_than(ctx.core, notion, ctx.idx, mid))
                lo = mid;
            else
                hi = mid;
        }
        ctx.rho = simplest_rational_in(lo, hi);
    }
    // one exact max-flow at the snapped optimum; saturation verifies rho*
    ctx.net = build_network(ctx.core, notion, ctx.idx, ctx.rho);
    ctx.flow = max_flow(ctx.net);
    if (ctx.flow.value != full_value(notion, ctx.idx.mu, ctx.rho.den))
        throw std::logic_error("snapped optimum failed the saturation check");
    return true;
}

using Bitmask = std::vector<std::uint64_t>;

void mask_or(Bitmask& a, const Bitmask& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
}

NodeSet mask_to_set(const Bitmask& m) {
    std::vector<NodeId> out;
    for (std::size_t w = 0; w < m.size(); ++w) {
        std::uint64_t bits = m[w];
        while (bits) {
            unsigned bit = static_cast<unsigned>(__builtin_ctzll(bits));
            out.push_back(static_cast<NodeId>(w * 64 + bit));
            bits &= bits - 1;
        }
    }
    NodeSet s;
    s.members = std::move(out);  // already sorted, unique
    return s;
}

// Recursive independent-component-set enumeration (one densest subgraph per
// independent set). `cand` holds component indices still combinable with the
// current selection, ascending; removing the pivot before recursing makes
// every selection appear exactly once.
struct IndependentSetEnum {
    const std::vector<Bitmask>& closure_vmask;  // per comp: vertices of C + des(C)
    const std::vector<Bitmask>& related;        // per comp: des(C) + anc(C) + self, as comp bits
    std::size_t words;
    std::size_t cap;
    std::vector<NodeSet>& out;

    void run(const std::vector<std::int32_t>& cand, const Bitmask& cur, bool emit) {
        if (emit) {
            if (out.size() >= cap)
                throw EnumerationCapError(out.size(), "densest-subgraph enumeration cap exceeded");
            out.push_back(mask_to_set(cur));
        }
        for (std::size_t i = 0; i < cand.size(); ++i) {
            std::int32_t c = cand[i];
            std::vector<std::int32_t> next;
            next.reserve(cand.size() - i);
            for (std::size_t j = i + 1; j < cand.size(); ++j) {
                std::int32_t d = cand[j];
                if (!((related[c][d >> 6] >> (d & 63)) & 1u)) next.push_back(d);
            }
            Bitmask merged = cur;
            mask_or(merged, closure_vmask[c]);
            run(next, merged, true);
        }
    }
};

}  // namespace

Rational peel_lower_bound(const DetGraph& g, const DensityNotion& notion,
                          const DensestOptions& opts) {
    if (g.order() == 0) return Rational(0);
    auto items = collect_items(g, notion, opts.max_pattern_nodes);
    if (items.empty()) return Rational(0);
    return peel_trace(g, items).best;
}

DetGraph core_prune(const DetGraph& g, const DensityNotion& notion, std::uint32_t k,
                    const DensestOptions& opts) {
    if (k == 0) return g;
    auto items = collect_items(g, notion, opts.max_pattern_nodes);
    return prune_by_degree(g, items, k);
}

Rational optimal_density(const DetGraph& g, const DensityNotion& notion,
                         const DensestOptions& opts) {
    SolveContext ctx;
    if (!solve_exact(g, notion, opts, ctx)) return Rational(0);
    return ctx.rho;
}

DensestResult enumerate_all_densest(const DetGraph& g, const DensityNotion& notion,
                                    const DensestOptions& opts) {
    DensestResult result;
    SolveContext ctx;
    if (!solve_exact(g, notion, opts, ctx)) {
        // Zero-density world: every singleton attains density 0. Flagged so
        // the estimator can skip the round's harvest.
        result.degenerate = true;
        result.optimum = Rational(0);
        if (g.order() <= opts.enumeration_cap) {
            for (NodeId v : g.nodes) result.all_densest.push_back(NodeSet({v}));
            std::vector<NodeId> all(g.nodes);
            result.maximal = NodeSet(std::move(all));
        }
        return result;
    }
    result.optimum = ctx.rho;

    ComponentDag dag = residual_scc_dag(ctx.net, ctx.flow.residual);
    const std::int32_t K = static_cast<std::int32_t>(dag.components.size());
    const std::size_t vwords = (g.universe + 63) / 64;
    const std::size_t cwords = (static_cast<std::size_t>(K) + 63) / 64;

    // descendant closure over the full DAG, components in topological order
    std::vector<Bitmask> desc(K, Bitmask(cwords, 0));
    std::vector<Bitmask> closure_vmask(K, Bitmask(vwords, 0));
    for (std::int32_t c = K - 1; c >= 0; --c) {
        for (NodeId v : dag.vertex_mask[c].members) closure_vmask[c][v >> 6] |= 1ULL << (v & 63);
        for (std::int32_t child : dag.dag_edges[c]) {
            desc[c][child >> 6] |= 1ULL << (child & 63);
            mask_or(desc[c], desc[child]);
            mask_or(closure_vmask[c], closure_vmask[child]);
        }
    }
    std::vector<Bitmask> related(K, Bitmask(cwords, 0));
    for (std::int32_t c = 0; c < K; ++c) {
        related[c] = desc[c];
        related[c][c >> 6] |= 1ULL << (c & 63);
    }
    for (std::int32_t c = 0; c < K; ++c)
        for (std::int32_t d = 0; d < K; ++d)
            if ((desc[c][d >> 6] >> (d & 63)) & 1u) related[d][c >> 6] |= 1ULL << (c & 63);

    std::vector<std::int32_t> cand;
    Bitmask maximal(vwords, 0);
    for (std::int32_t c = 0; c < K; ++c) {
        if (!dag.non_trivial(c)) continue;
        if (dag.vertex_mask[c].empty()) continue;
        cand.push_back(c);
        for (NodeId v : dag.vertex_mask[c].members) maximal[v >> 6] |= 1ULL << (v & 63);
    }
    IndependentSetEnum en{closure_vmask, related, vwords, opts.enumeration_cap,
                          result.all_densest};
    en.run(cand, Bitmask(vwords, 0), false);
    std::sort(result.all_densest.begin(), result.all_densest.end());
    result.maximal = mask_to_set(maximal);
    return result;
}

MaximalDensest maximal_densest(const DetGraph& g, const DensityNotion& notion,
                               const DensestOptions& opts) {
    MaximalDensest md;
    SolveContext ctx;
    if (!solve_exact(g, notion, opts, ctx)) {
        md.degenerate = true;
        md.optimum = Rational(0);
        std::vector<NodeId> all(g.nodes);
        md.set = NodeSet(std::move(all));
        return md;
    }
    md.optimum = ctx.rho;
    ComponentDag dag = residual_scc_dag(ctx.net, ctx.flow.residual);
    std::vector<NodeId> verts;
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(dag.components.size()); ++c)
        if (dag.non_trivial(c))
            verts.insert(verts.end(), dag.vertex_mask[c].members.begin(),
                         dag.vertex_mask[c].members.end());
    md.set = NodeSet(std::move(verts));
    return md;
}

std::vector<NodeSet> heuristic_pattern_dense(const DetGraph& g, const Pattern& psi,
                                             const DensestOptions& opts) {
    auto notion = DensityNotion::pattern(psi);
    auto items = collect_items(g, notion, opts.max_pattern_nodes);
    if (items.empty()) return {};
    PeelTrace trace = peel_trace(g, items);

    // (k_max, psi)-core: nodes whose core number reaches k_max
    std::vector<NodeId> core_nodes;
    for (NodeId v : g.nodes)
        if (trace.core_number[v] == trace.k_max) core_nodes.push_back(v);
    NodeSet core_set(core_nodes);
    Rational core_density = induced_density_exact(g, core_set, notion);

    struct Entry {
        Rational density;
        NodeSet set;
    };
    std::vector<Entry> picked;
    picked.push_back({core_density, core_set});
    // intermediate peeling subgraphs strictly denser than the core
    for (std::size_t i = 0; i < trace.removal_order.size(); ++i) {
        if (trace.density[i] > core_density) {
            std::vector<NodeId> alive(trace.removal_order.begin() + i, trace.removal_order.end());
            picked.push_back({trace.density[i], NodeSet(std::move(alive))});
        }
    }
    std::sort(picked.begin(), picked.end(), [](const Entry& a, const Entry& b) {
        if (a.density != b.density) return b.density < a.density;
        if (a.set.size() != b.set.size()) return a.set.size() > b.set.size();
        return a.set < b.set;
    });
    std::vector<NodeSet> out;
    for (auto& e : picked)
        if (out.empty() || out.back() != e.set) out.push_back(std::move(e.set));
    return out;
}

}  // namespace udense
