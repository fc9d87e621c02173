#include "udense/metrics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "udense/maxflow.hpp"
#include "udense/motifs.hpp"

namespace udense {

namespace {

constexpr std::int64_t WEIGHT_SCALE = 1'000'000;  // probability quantization

DetGraph skeleton(const UncertainGraph& g) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges) edges.push_back({e.u, e.v});
    return DetGraph::from_edges(g.node_count, std::move(edges));
}

double edge_prob(const UncertainGraph& g, NodeId u, NodeId v) {
    for (const auto& [nbr, p] : g.adjacency[u])
        if (nbr == v) return p;
    throw std::logic_error("edge lookup failed");
}

double instance_weight(const UncertainGraph& g,
                       const std::vector<std::pair<NodeId, NodeId>>& inst_edges) {
    double w = 1.0;
    for (const auto& e : inst_edges) w *= edge_prob(g, e.first, e.second);
    return w;
}

double clique_weight(const UncertainGraph& g, const std::vector<NodeId>& clique) {
    double w = 1.0;
    for (std::size_t i = 0; i < clique.size(); ++i)
        for (std::size_t j = i + 1; j < clique.size(); ++j)
            w *= edge_prob(g, clique[i], clique[j]);
    return w;
}

}  // namespace

double expected_density(const UncertainGraph& g, const NodeSet& set,
                        const DensityNotion& notion) {
    if (set.empty()) throw std::invalid_argument("expected density of an empty set");
    DetGraph sub = skeleton(g).induced(set.members);
    double total = 0.0;
    switch (notion.kind) {
        case DensityNotion::Kind::Edge:
            for (const auto& e : sub.edges) total += edge_prob(g, e.first, e.second);
            break;
        case DensityNotion::Kind::Clique: {
            auto idx = list_h_cliques(sub, notion.h);
            for (const auto& clique : idx.cliques) total += clique_weight(g, clique);
            break;
        }
        case DensityNotion::Kind::Pattern: {
            auto idx = list_pattern_instances(sub, notion.psi, notion.psi.node_count);
            for (const auto& grp : idx.groups)
                for (const auto& inst : grp.instances) total += instance_weight(g, inst);
            break;
        }
    }
    return total / static_cast<double>(set.size());
}

ExpectedDensest expected_densest_subgraph(const UncertainGraph& g, const DensityNotion& notion) {
    ExpectedDensest out;
    DetGraph skel = skeleton(g);

    // integer weights in 1e-6 units
    std::vector<std::int64_t> edge_w;
    CliqueIndex cidx;
    InstanceIndex pidx;
    std::vector<std::int64_t> clique_w;
    std::vector<std::vector<std::int64_t>> group_w;
    std::int64_t total_w = 0;
    switch (notion.kind) {
        case DensityNotion::Kind::Edge:
            for (const auto& e : skel.edges)
                edge_w.push_back(std::llround(edge_prob(g, e.first, e.second) * WEIGHT_SCALE));
            for (auto w : edge_w) total_w += w;
            break;
        case DensityNotion::Kind::Clique:
            cidx = list_h_cliques(skel, notion.h);
            for (const auto& clique : cidx.cliques)
                clique_w.push_back(std::llround(clique_weight(g, clique) * WEIGHT_SCALE));
            for (auto w : clique_w) total_w += w;
            break;
        case DensityNotion::Kind::Pattern:
            pidx = list_pattern_instances(skel, notion.psi);
            for (const auto& grp : pidx.groups) {
                std::vector<std::int64_t> ws;
                for (const auto& inst : grp.instances) {
                    ws.push_back(std::llround(instance_weight(g, inst) * WEIGHT_SCALE));
                    total_w += ws.back();
                }
                group_w.push_back(std::move(ws));
            }
            break;
    }
    if (total_w == 0) {
        // all quantized weights vanished; every set scores 0
        std::vector<NodeId> all(skel.nodes);
        out.set = NodeSet(std::move(all));
        out.density = 0.0;
        return out;
    }

    auto build = [&](const Rational& alpha) {
        switch (notion.kind) {
            case DensityNotion::Kind::Edge:
                return build_weighted_edge_flow_network(skel, edge_w, alpha);
            case DensityNotion::Kind::Clique:
                return build_weighted_clique_flow_network(skel, cidx, clique_w, alpha);
            case DensityNotion::Kind::Pattern:
                return build_weighted_pattern_flow_network(skel, pidx, group_w, alpha);
        }
        throw std::logic_error("unknown notion");
    };
    const std::int64_t unit = static_cast<std::int64_t>(notion.unit_size());
    auto denser_than = [&](const Rational& alpha) {
        MaxflowResult mf = max_flow(build(alpha));
        return mf.value < unit * total_w * alpha.den;
    };

    const std::int64_t n = static_cast<std::int64_t>(g.node_count);
    Rational lo(0), hi(total_w);
    Rational rho;
    if (!denser_than(lo)) {
        rho = lo;
    } else {
        const Rational gap = n >= 2 ? Rational(1, n * (n - 1)) : Rational(1);
        while (hi - lo >= gap) {
            Rational mid = (lo + hi) * Rational(1, 2);
            if (denser_than(mid))
                lo = mid;
            else
                hi = mid;
        }
        rho = simplest_rational_in(lo, hi);
    }
    FlowNetwork net = build(rho);
    MaxflowResult mf = max_flow(net);
    if (mf.value != unit * total_w * rho.den)
        throw std::logic_error("weighted optimum failed the saturation check");
    auto side = max_min_cut_source_side(net, mf.residual);
    std::vector<NodeId> verts;
    for (std::int32_t node : side)
        if (net.vertex_of_node[node] != FlowNetwork::NO_VERTEX)
            verts.push_back(net.vertex_of_node[node]);
    out.set = NodeSet(std::move(verts));
    out.density = rho.to_double() / static_cast<double>(WEIGHT_SCALE);
    return out;
}

double probabilistic_density(const UncertainGraph& g, const NodeSet& set) {
    if (set.size() < 2) throw std::invalid_argument("probabilistic density needs |U| >= 2");
    double sum = 0.0;
    for (const auto& e : g.edges)
        if (set.contains(e.u) && set.contains(e.v)) sum += e.p;
    const double pairs = 0.5 * static_cast<double>(set.size()) *
                         static_cast<double>(set.size() - 1);
    return sum / pairs;
}

double probabilistic_clustering_coefficient(const UncertainGraph& g, const NodeSet& set) {
    // weighted triangles and wedge pairs inside the set
    double tri = 0.0, wedge = 0.0;
    const auto& members = set.members;
    for (NodeId u : members) {
        if (u >= g.node_count) throw std::invalid_argument("node id out of range");
        std::vector<std::pair<NodeId, double>> nbrs;
        for (const auto& [v, p] : g.adjacency[u])
            if (set.contains(v)) nbrs.push_back({v, p});
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                wedge += nbrs[i].second * nbrs[j].second;
                NodeId a = nbrs[i].first, b = nbrs[j].first;
                // closing edge makes this wedge a triangle; each triangle is
                // seen from all three corners, matching the 3x numerator
                for (const auto& [w, p] : g.adjacency[a])
                    if (w == b) tri += nbrs[i].second * nbrs[j].second * p;
            }
    }
    if (wedge == 0.0) return 0.0;
    return tri / wedge;
}

double purity(const NodeSet& set, const std::map<NodeId, int>& labels) {
    if (set.empty()) throw std::invalid_argument("purity of an empty set");
    std::map<int, std::size_t> freq;
    for (NodeId v : set.members) {
        auto it = labels.find(v);
        if (it == labels.end())
            throw std::invalid_argument("node " + std::to_string(v) + " has no community label");
        ++freq[it->second];
    }
    std::size_t best = 0;
    for (const auto& [community, count] : freq) best = std::max(best, count);
    return static_cast<double>(best) / static_cast<double>(set.size());
}

std::map<NodeId, int> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open labels file: " + path);
    std::map<NodeId, int> labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::int64_t node, community;
        if (!(ls >> node >> community))
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected \"node community\"");
        labels[static_cast<NodeId>(node)] = static_cast<int>(community);
    }
    return labels;
}

double rank_f1(const std::vector<NodeSet>& ours, const std::vector<NodeSet>& exact) {
    if (ours.size() != exact.size())
        throw std::invalid_argument("rankings have different lengths");
    if (ours.empty()) throw std::invalid_argument("empty rankings");
    double total = 0.0;
    for (std::size_t i = 0; i < ours.size(); ++i) {
        const std::size_t inter = set_intersection(ours[i], exact[i]).size();
        const std::size_t denom = ours[i].size() + exact[i].size();
        total += denom == 0 ? 0.0 : 2.0 * static_cast<double>(inter) / static_cast<double>(denom);
    }
    return total / static_cast<double>(ours.size());
}

}  // namespace udense
