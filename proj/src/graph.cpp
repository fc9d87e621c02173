#include "udense/graph.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace udense {

namespace {

void validate_edges(std::size_t n, const std::vector<UncertainGraph::Edge>& edges) {
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& e : edges) {
        if (e.u == e.v) throw ParseError("self-loop on node " + std::to_string(e.u));
        if (e.u >= n || e.v >= n) throw ParseError("edge endpoint out of range");
        if (!(e.p > 0.0 && e.p <= 1.0))
            throw ParseError("edge probability outside (0,1]: " + std::to_string(e.p));
        if (!seen.insert({e.u, e.v}).second)
            throw ParseError("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
}

}  // namespace

UncertainGraph UncertainGraph::from_edges(std::size_t n, std::vector<Edge> edges) {
    for (auto& e : edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    validate_edges(n, edges);
    UncertainGraph g;
    g.node_count = n;
    g.edges = std::move(edges);
    g.adjacency.assign(n, {});
    for (const auto& e : g.edges) {
        g.adjacency[e.u].push_back({e.v, e.p});
        g.adjacency[e.v].push_back({e.u, e.p});
    }
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
    g.original_ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.original_ids[i] = static_cast<std::int64_t>(i);
    return g;
}

namespace {

// Strips trailing CR (CRLF input) and leading/trailing blanks.
std::string trim_line(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

}  // namespace

UncertainGraph parse_uncertain_graph(std::istream& in, const std::string& name) {
    struct RawEdge {
        std::int64_t u, v;
        double p;
    };
    std::vector<RawEdge> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim_line(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        RawEdge e;
        if (!(ls >> e.u >> e.v >> e.p)) {
            throw ParseError(name + ":" + std::to_string(lineno) + ": expected \"u v p\"");
        }
        std::string extra;
        if (ls >> extra)
            throw ParseError(name + ":" + std::to_string(lineno) + ": trailing token '" + extra + "'");
        if (e.u < 0 || e.v < 0)
            throw ParseError(name + ":" + std::to_string(lineno) + ": negative node id");
        if (e.u == e.v)
            throw ParseError(name + ":" + std::to_string(lineno) + ": self-loop");
        if (!(e.p > 0.0 && e.p <= 1.0))
            throw ParseError(name + ":" + std::to_string(lineno) + ": probability outside (0,1]");
        raw.push_back(e);
    }
    // Normalize ids to [0, n) by ascending numeric rank.
    std::map<std::int64_t, NodeId> remap;
    for (const auto& e : raw) {
        remap.emplace(e.u, 0);
        remap.emplace(e.v, 0);
    }
    NodeId next = 0;
    for (auto& kv : remap) kv.second = next++;
    std::vector<UncertainGraph::Edge> edges;
    edges.reserve(raw.size());
    for (const auto& e : raw) {
        NodeId u = remap[e.u], v = remap[e.v];
        if (u > v) std::swap(u, v);
        edges.push_back({u, v, e.p});
    }
    try {
        auto g = UncertainGraph::from_edges(remap.size(), std::move(edges));
        g.original_ids.clear();
        for (const auto& kv : remap) g.original_ids.push_back(kv.first);
        return g;
    } catch (const ParseError& pe) {
        throw ParseError(name + ": " + pe.what());
    }
}

UncertainGraph load_uncertain_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);
    return parse_uncertain_graph(in, path);
}

ProbabilityModel ProbabilityModel::exponential_cdf(double mu, double floor) {
    if (mu <= 0.0) throw std::invalid_argument("exponential cdf mean must be positive");
    ProbabilityModel m;
    m.kind = Kind::ExponentialCdf;
    m.mu = mu;
    m.floor = floor;
    return m;
}

ProbabilityModel ProbabilityModel::reciprocal_degree(double floor) {
    ProbabilityModel m;
    m.kind = Kind::ReciprocalDegree;
    m.floor = floor;
    return m;
}

UncertainGraph assign_probabilities(std::size_t node_count,
                                    const std::vector<CountEdge>& edges,
                                    const ProbabilityModel& model) {
    std::vector<UncertainGraph::Edge> out;
    out.reserve(edges.size());
    if (model.kind == ProbabilityModel::Kind::ExponentialCdf) {
        for (const auto& e : edges) {
            if (e.t < 0) throw std::invalid_argument("negative interaction count");
            double p = 1.0 - std::exp(-e.t / model.mu);
            if (p <= 0.0) p = model.floor;
            if (p > 1.0) p = 1.0;
            out.push_back({e.u, e.v, p});
        }
    } else {
        std::vector<std::size_t> deg(node_count, 0);
        for (const auto& e : edges) {
            if (e.u >= node_count || e.v >= node_count)
                throw std::invalid_argument("edge endpoint out of range");
            ++deg[e.u];
            ++deg[e.v];
        }
        for (const auto& e : edges) {
            std::size_t d = std::max(deg[e.u], deg[e.v]);
            double p = d > 0 ? 1.0 / static_cast<double>(d) : model.floor;
            out.push_back({e.u, e.v, p});
        }
    }
    return UncertainGraph::from_edges(node_count, std::move(out));
}

World::World(const UncertainGraph& g, std::uint64_t mask) {
    parent = &g;
    const std::size_t m = g.edge_count();
    if (m > 64) throw TooLargeError("mask constructor supports at most 64 edges");
    present.assign((m + 63) / 64, 0);
    log_prob = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const bool on = (mask >> i) & 1u;
        if (on) {
            present[i >> 6] |= 1ULL << (i & 63);
            log_prob += std::log(g.edges[i].p);
        } else {
            log_prob += std::log1p(-g.edges[i].p);
        }
    }
}

std::size_t World::present_count() const {
    std::size_t c = 0;
    for (std::uint64_t w : present) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

World sample_world(const UncertainGraph& g, std::uint64_t seed, std::uint64_t round) {
    World w;
    w.parent = &g;
    const std::size_t m = g.edge_count();
    w.present.assign((m + 63) / 64, 0);
    double lp = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double p = g.edges[i].p;
        if (stream_uniform(seed, round, i) < p) {
            w.present[i >> 6] |= 1ULL << (i & 63);
            lp += std::log(p);
        } else {
            lp += std::log1p(-p);
        }
    }
    w.log_prob = lp;
    return w;
}

bool DetGraph::has_edge(NodeId u, NodeId v) const {
    const auto& nbrs = adj[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

DetGraph DetGraph::from_edges(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges) {
    DetGraph g;
    g.universe = n;
    g.active.assign(n, 1);
    g.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.nodes[i] = static_cast<NodeId>(i);
    g.adj.assign(n, {});
    for (auto& e : edges) {
        if (e.first > e.second) std::swap(e.first, e.second);
        g.adj[e.first].push_back(e.second);
        g.adj[e.second].push_back(e.first);
    }
    std::sort(edges.begin(), edges.end());
    g.edges = std::move(edges);
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

DetGraph DetGraph::induced(const std::vector<NodeId>& keep) const {
    DetGraph g;
    g.universe = universe;
    g.active.assign(universe, 0);
    for (NodeId v : keep) g.active[v] = 1;
    g.nodes = keep;
    std::sort(g.nodes.begin(), g.nodes.end());
    g.adj.assign(universe, {});
    for (const auto& e : edges) {
        if (g.active[e.first] && g.active[e.second]) {
            g.edges.push_back(e);
            g.adj[e.first].push_back(e.second);
            g.adj[e.second].push_back(e.first);
        }
    }
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

DetGraph materialize(const World& w) {
    const UncertainGraph& g = *w.parent;
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(w.present_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        if (w.edge_present(i)) edges.push_back({g.edges[i].u, g.edges[i].v});
    return DetGraph::from_edges(g.node_count, std::move(edges));
}

namespace {

std::size_t count_automorphisms(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::vector<std::vector<char>> am(n, std::vector<char>(n, 0));
    for (const auto& e : edges) am[e.first][e.second] = am[e.second][e.first] = 1;
    std::vector<NodeId> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<NodeId>(i);
    std::size_t count = 0;
    do {
        bool ok = true;
        for (const auto& e : edges) {
            if (!am[perm[e.first]][perm[e.second]]) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

bool is_connected(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    if (n == 0) return false;
    std::vector<std::vector<NodeId>> adj(n);
    for (const auto& e : edges) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                ++visited;
                stack.push_back(u);
            }
    }
    return visited == n;
}

}  // namespace

Pattern Pattern::from_edges(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges) {
    if (n < 2) throw ParseError("pattern needs at least two nodes");
    std::set<std::pair<NodeId, NodeId>> seen;
    for (auto& e : edges) {
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first == e.second) throw ParseError("pattern self-loop");
        if (e.second >= n) throw ParseError("pattern node id out of range");
        if (!seen.insert(e).second) throw ParseError("duplicate pattern edge");
    }
    if (!is_connected(n, edges)) throw ParseError("pattern must be connected");
    std::sort(edges.begin(), edges.end());
    Pattern p;
    p.node_count = n;
    p.edges = std::move(edges);
    p.automorphism_count = count_automorphisms(n, p.edges);
    return p;
}

Pattern Pattern::parse(std::istream& in, const std::string& name) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::string line;
    std::size_t lineno = 0;
    NodeId max_id = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim_line(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::int64_t a, b;
        if (!(ls >> a >> b))
            throw ParseError(name + ":" + std::to_string(lineno) + ": expected \"a b\"");
        if (a < 0 || b < 0)
            throw ParseError(name + ":" + std::to_string(lineno) + ": negative node id");
        edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
        max_id = std::max({max_id, static_cast<NodeId>(a), static_cast<NodeId>(b)});
    }
    if (edges.empty()) throw ParseError(name + ": empty pattern");
    return from_edges(max_id + 1, std::move(edges));
}

Pattern Pattern::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open pattern file: " + path);
    return parse(in, path);
}

Pattern Pattern::single_edge() { return from_edges(2, {{0, 1}}); }

Pattern Pattern::clique(std::size_t h) {
    if (h < 2) throw std::invalid_argument("clique pattern needs h >= 2");
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId a = 0; a < h; ++a)
        for (NodeId b = a + 1; b < h; ++b) edges.push_back({a, b});
    return from_edges(h, std::move(edges));
}

Pattern Pattern::star(std::size_t leaves) {
    if (leaves < 1) throw std::invalid_argument("star needs at least one leaf");
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 1; i <= leaves; ++i) edges.push_back({0, i});
    return from_edges(leaves + 1, std::move(edges));
}

Pattern Pattern::diamond() {
    return from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

DensityNotion DensityNotion::clique(int h) {
    if (h < 2) throw std::invalid_argument("clique density needs h >= 2");
    DensityNotion n;
    n.kind = Kind::Clique;
    n.h = h;
    return n;
}

DensityNotion DensityNotion::pattern(Pattern psi) {
    DensityNotion n;
    n.kind = Kind::Pattern;
    n.psi = std::move(psi);
    return n;
}

std::string DensityNotion::to_string() const {
    switch (kind) {
        case Kind::Edge:
            return "edge";
        case Kind::Clique:
            return "clique:" + std::to_string(h);
        case Kind::Pattern:
            return "pattern:" + std::to_string(psi.node_count) + "n" +
                   std::to_string(psi.edges.size()) + "e";
    }
    return "?";
}

std::size_t DensityNotion::unit_size() const {
    switch (kind) {
        case Kind::Edge:
            return 2;
        case Kind::Clique:
            return static_cast<std::size_t>(h);
        case Kind::Pattern:
            return psi.node_count;
    }
    return 2;
}

}  // namespace udense
