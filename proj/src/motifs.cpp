#include "udense/motifs.hpp"

#include <map>
#include <unordered_set>

namespace udense {

namespace {

// Degeneracy order via repeated minimum-degree removal (bucket queue).
std::vector<NodeId> degeneracy_order(const DetGraph& g) {
    const std::size_t n = g.universe;
    std::vector<std::size_t> deg(n, 0);
    std::size_t max_deg = 0;
    for (NodeId v : g.nodes) {
        deg[v] = g.adj[v].size();
        max_deg = std::max(max_deg, deg[v]);
    }
    std::vector<std::vector<NodeId>> buckets(max_deg + 1);
    for (NodeId v : g.nodes) buckets[deg[v]].push_back(v);
    std::vector<char> removed(n, 0);
    std::vector<NodeId> order;
    order.reserve(g.order());
    std::size_t cur = 0;
    while (order.size() < g.order()) {
        while (cur < buckets.size() && buckets[cur].empty()) ++cur;
        if (cur >= buckets.size()) break;
        NodeId v = buckets[cur].back();
        buckets[cur].pop_back();
        if (removed[v] || deg[v] != cur) continue;  // stale bucket entry
        removed[v] = 1;
        order.push_back(v);
        for (NodeId u : g.adj[v]) {
            if (!removed[u]) {
                --deg[u];
                buckets[deg[u]].push_back(u);
                if (deg[u] < cur) cur = deg[u];
            }
        }
    }
    return order;
}

void extend_clique(const std::vector<std::vector<NodeId>>& out_adj,
                   std::vector<NodeId>& current, const std::vector<NodeId>& cands,
                   int remaining, std::vector<std::vector<NodeId>>& result) {
    if (remaining == 0) {
        std::vector<NodeId> clique = current;
        std::sort(clique.begin(), clique.end());
        result.push_back(std::move(clique));
        return;
    }
    for (NodeId u : cands) {
        std::vector<NodeId> next;
        if (remaining > 1) {
            // out-neighbors sit strictly later in the degeneracy order, so each
            // clique is emitted once, members in rank order
            const auto& ou = out_adj[u];
            for (NodeId w : cands)
                if (std::binary_search(ou.begin(), ou.end(), w)) next.push_back(w);
        }
        current.push_back(u);
        extend_clique(out_adj, current, next, remaining - 1, result);
        current.pop_back();
    }
}

}  // namespace

CliqueIndex list_h_cliques(const DetGraph& g, int h) {
    if (h < 2) throw std::invalid_argument("clique order must be at least 2");
    CliqueIndex idx;
    idx.h = h;
    idx.clique_degree.assign(g.universe, 0);

    // Orient edges forward along a degeneracy order; every clique is then
    // rooted at its earliest vertex.
    auto order = degeneracy_order(g);
    std::vector<std::size_t> rank(g.universe, 0);
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    std::vector<std::vector<NodeId>> out_adj(g.universe);
    for (NodeId v : g.nodes)
        for (NodeId u : g.adj[v])
            if (rank[v] < rank[u]) out_adj[v].push_back(u);
    for (auto& a : out_adj) std::sort(a.begin(), a.end());

    std::vector<NodeId> current;
    for (NodeId v : g.nodes) {
        current.assign(1, v);
        extend_clique(out_adj, current, out_adj[v], h - 1, idx.cliques);
        current.clear();
    }
    std::sort(idx.cliques.begin(), idx.cliques.end());

    for (const auto& clique : idx.cliques)
        for (NodeId v : clique) ++idx.clique_degree[v];

    // lambda = clique minus one member; the dropped member completes it.
    std::map<std::vector<NodeId>, std::vector<NodeId>> lambdas;
    for (const auto& clique : idx.cliques) {
        for (std::size_t drop = 0; drop < clique.size(); ++drop) {
            std::vector<NodeId> lam;
            lam.reserve(clique.size() - 1);
            for (std::size_t i = 0; i < clique.size(); ++i)
                if (i != drop) lam.push_back(clique[i]);
            lambdas[std::move(lam)].push_back(clique[drop]);
        }
    }
    for (auto& [members, completions] : lambdas) {
        CliqueIndex::Lambda lam;
        lam.members = members;
        lam.completions = completions;
        std::sort(lam.completions.begin(), lam.completions.end());
        idx.lambda_set.push_back(std::move(lam));
    }
    return idx;
}

namespace {

// Search order over pattern vertices: start at the highest-degree vertex,
// then grow so each next vertex touches an already-placed one.
std::vector<std::size_t> pattern_search_order(const Pattern& psi) {
    const std::size_t q = psi.node_count;
    std::vector<std::vector<std::size_t>> padj(q);
    for (const auto& e : psi.edges) {
        padj[e.first].push_back(e.second);
        padj[e.second].push_back(e.first);
    }
    std::vector<std::size_t> order;
    std::vector<char> placed(q, 0);
    std::size_t best = 0;
    for (std::size_t i = 1; i < q; ++i)
        if (padj[i].size() > padj[best].size()) best = i;
    order.push_back(best);
    placed[best] = 1;
    while (order.size() < q) {
        std::size_t pick = q;
        std::size_t pick_links = 0;
        for (std::size_t i = 0; i < q; ++i) {
            if (placed[i]) continue;
            std::size_t links = 0;
            for (std::size_t j : padj[i])
                if (placed[j]) ++links;
            if (links > 0 && (pick == q || links > pick_links ||
                              (links == pick_links && padj[i].size() > padj[pick].size()))) {
                pick = i;
                pick_links = links;
            }
        }
        // connected pattern guarantees pick != q
        order.push_back(pick);
        placed[pick] = 1;
    }
    return order;
}

struct EmbeddingSearch {
    const DetGraph& g;
    const Pattern& psi;
    std::vector<std::size_t> order;                    // pattern vertex order
    std::vector<std::size_t> step_of;                  // inverse of order
    std::vector<std::vector<std::size_t>> back_edges;  // per step: earlier steps adjacent in psi
    std::vector<NodeId> image;                         // image[step]
    std::vector<char> used;
    std::unordered_set<std::string> seen_edge_sets;
    std::vector<std::vector<std::pair<NodeId, NodeId>>>* out;
    std::size_t raw_embeddings = 0;

    EmbeddingSearch(const DetGraph& g_, const Pattern& psi_)
        : g(g_), psi(psi_), order(pattern_search_order(psi_)), used(g_.universe, 0) {
        const std::size_t q = psi.node_count;
        step_of.resize(q);
        for (std::size_t s = 0; s < q; ++s) step_of[order[s]] = s;
        back_edges.resize(q);
        for (const auto& e : psi.edges) {
            std::size_t sa = step_of[e.first], sb = step_of[e.second];
            if (sa > sb) std::swap(sa, sb);
            back_edges[sb].push_back(sa);
        }
        image.resize(q);
    }

    void record() {
        ++raw_embeddings;
        std::vector<std::pair<NodeId, NodeId>> edge_list;
        edge_list.reserve(psi.edges.size());
        for (const auto& e : psi.edges) {
            NodeId a = image[step_of[e.first]];
            NodeId b = image[step_of[e.second]];
            if (a > b) std::swap(a, b);
            edge_list.push_back({a, b});
        }
        std::sort(edge_list.begin(), edge_list.end());
        std::string key;
        key.reserve(edge_list.size() * 8);
        for (const auto& e : edge_list) {
            key.append(reinterpret_cast<const char*>(&e.first), sizeof(NodeId));
            key.append(reinterpret_cast<const char*>(&e.second), sizeof(NodeId));
        }
        if (seen_edge_sets.insert(std::move(key)).second) out->push_back(std::move(edge_list));
    }

    void search(std::size_t step) {
        if (step == order.size()) {
            record();
            return;
        }
        const auto& back = back_edges[step];
        // candidates: world neighbors of the first mapped back-edge endpoint
        const auto& base = g.adj[image[back[0]]];
        for (NodeId cand : base) {
            if (used[cand]) continue;
            bool ok = true;
            for (std::size_t bi = 1; bi < back.size(); ++bi) {
                if (!g.has_edge(image[back[bi]], cand)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            image[step] = cand;
            used[cand] = 1;
            search(step + 1);
            used[cand] = 0;
        }
    }

    void run(std::vector<std::vector<std::pair<NodeId, NodeId>>>& result) {
        out = &result;
        for (NodeId root : g.nodes) {
            image[0] = root;
            used[root] = 1;
            search(1);
            used[root] = 0;
        }
    }
};

}  // namespace

InstanceIndex list_pattern_instances(const DetGraph& g, const Pattern& psi,
                                     std::size_t max_pattern_nodes) {
    if (psi.node_count > max_pattern_nodes)
        throw TooLargeError("pattern has " + std::to_string(psi.node_count) +
                            " nodes, cap is " + std::to_string(max_pattern_nodes));
    InstanceIndex idx;
    idx.pattern = psi;
    idx.pattern_degree.assign(g.universe, 0);

    std::vector<std::vector<std::pair<NodeId, NodeId>>> instances;
    if (psi.node_count == 2) {
        // single edge: instances are exactly the edges
        for (const auto& e : g.edges) instances.push_back({{e.first, e.second}});
    } else {
        EmbeddingSearch search(g, psi);
        search.run(instances);
    }
    idx.mu = instances.size();

    std::map<NodeSet, std::vector<std::vector<std::pair<NodeId, NodeId>>>> by_nodes;
    for (auto& inst : instances) {
        std::vector<NodeId> nodes;
        for (const auto& e : inst) {
            nodes.push_back(e.first);
            nodes.push_back(e.second);
        }
        by_nodes[NodeSet(std::move(nodes))].push_back(std::move(inst));
    }
    for (auto& [nodes, insts] : by_nodes) {
        for (NodeId v : nodes.members)
            idx.pattern_degree[v] += static_cast<std::uint32_t>(insts.size());
        InstanceIndex::Group grp;
        grp.nodes = nodes;
        std::sort(insts.begin(), insts.end());
        grp.instances = std::move(insts);
        idx.groups.push_back(std::move(grp));
    }
    return idx;
}

namespace {

std::vector<NodeId> active_members(const DetGraph& g, const NodeSet& s) {
    std::vector<NodeId> keep;
    for (NodeId v : s.members) {
        if (v >= g.universe) throw std::invalid_argument("node id out of range");
        if (g.is_active(v)) keep.push_back(v);
    }
    return keep;
}

}  // namespace

Rational induced_density_exact(const DetGraph& g, const NodeSet& s, const DensityNotion& notion) {
    if (s.empty()) throw std::invalid_argument("density of an empty node set");
    DetGraph sub = g.induced(active_members(g, s));
    std::int64_t count = 0;
    switch (notion.kind) {
        case DensityNotion::Kind::Edge:
            count = static_cast<std::int64_t>(sub.edges.size());
            break;
        case DensityNotion::Kind::Clique:
            count = static_cast<std::int64_t>(list_h_cliques(sub, notion.h).mu());
            break;
        case DensityNotion::Kind::Pattern:
            count = static_cast<std::int64_t>(
                list_pattern_instances(sub, notion.psi, notion.psi.node_count).mu);
            break;
    }
    return Rational(count, static_cast<std::int64_t>(s.size()));
}

double induced_density(const DetGraph& g, const NodeSet& s, const DensityNotion& notion) {
    return induced_density_exact(g, s, notion).to_double();
}

double induced_density(const World& w, const NodeSet& s, const DensityNotion& notion) {
    return induced_density(materialize(w), s, notion);
}

}  // namespace udense
