#include "udense/maxflow.hpp"

#include <limits>
#include <map>
#include <ostream>
#include <queue>

namespace udense {

std::int32_t FlowNetwork::add_node(NodeId vertex) {
    out.emplace_back();
    vertex_of_node.push_back(vertex);
    return node_count++;
}

void FlowNetwork::add_arc(std::int32_t from, std::int32_t to, std::int64_t cap,
                          std::int64_t rev_cap) {
    out[from].push_back(static_cast<std::int32_t>(arcs.size()));
    arcs.push_back({to, cap});
    out[to].push_back(static_cast<std::int32_t>(arcs.size()));
    arcs.push_back({from, rev_cap});
}

namespace {

struct Dinic {
    const FlowNetwork& net;
    std::vector<std::int64_t>& res;
    std::vector<std::int32_t> level;
    std::vector<std::size_t> iter;

    Dinic(const FlowNetwork& n, std::vector<std::int64_t>& r)
        : net(n), res(r), level(n.node_count), iter(n.node_count) {}

    bool bfs() {
        std::fill(level.begin(), level.end(), -1);
        std::queue<std::int32_t> q;
        level[net.source] = 0;
        q.push(net.source);
        while (!q.empty()) {
            std::int32_t v = q.front();
            q.pop();
            for (std::int32_t a : net.out[v]) {
                if (res[a] > 0 && level[net.arcs[a].to] < 0) {
                    level[net.arcs[a].to] = level[v] + 1;
                    q.push(net.arcs[a].to);
                }
            }
        }
        return level[net.sink] >= 0;
    }

    std::int64_t dfs(std::int32_t v, std::int64_t limit) {
        if (v == net.sink) return limit;
        for (; iter[v] < net.out[v].size(); ++iter[v]) {
            std::int32_t a = net.out[v][iter[v]];
            std::int32_t to = net.arcs[a].to;
            if (res[a] > 0 && level[to] == level[v] + 1) {
                std::int64_t pushed = dfs(to, std::min(limit, res[a]));
                if (pushed > 0) {
                    res[a] -= pushed;
                    res[a ^ 1] += pushed;
                    return pushed;
                }
            }
        }
        level[v] = -1;
        return 0;
    }

    std::int64_t run() {
        std::int64_t flow = 0;
        while (bfs()) {
            std::fill(iter.begin(), iter.end(), 0);
            std::int64_t pushed;
            while ((pushed = dfs(net.source, std::numeric_limits<std::int64_t>::max())) > 0)
                flow += pushed;
        }
        return flow;
    }
};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    __int128 r = static_cast<__int128>(a) * b;
    if (r > std::numeric_limits<std::int64_t>::max() || r < 0)
        throw std::overflow_error("capacity overflow");
    return static_cast<std::int64_t>(r);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    __int128 r = static_cast<__int128>(a) + b;
    if (r > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("capacity overflow");
    return static_cast<std::int64_t>(r);
}

// placeholder for "infinite" arcs; finalized once all finite capacity is known
constexpr std::int64_t INF_PLACEHOLDER = -1;

void finalize_infinite(FlowNetwork& net) {
    std::int64_t total = 0;
    for (const auto& a : net.arcs)
        if (a.cap > 0) total = checked_add(total, a.cap);
    // residuals on these arcs can grow by the finite total during the solve
    if (total > std::numeric_limits<std::int64_t>::max() / 4)
        throw std::overflow_error("capacity overflow");
    std::int64_t inf = total + 1;
    for (auto& a : net.arcs)
        if (a.cap == INF_PLACEHOLDER) a.cap = inf;
}

}  // namespace

MaxflowResult max_flow(const FlowNetwork& net) {
    MaxflowResult r;
    r.residual.resize(net.arcs.size());
    for (std::size_t i = 0; i < net.arcs.size(); ++i) r.residual[i] = net.arcs[i].cap;
    Dinic d(net, r.residual);
    r.value = d.run();
    return r;
}

FlowNetwork build_edge_flow_network(const DetGraph& g, const Rational& alpha) {
    if (alpha.num < 0) throw std::invalid_argument("alpha must be non-negative");
    const std::int64_t a = alpha.num, b = alpha.den;
    FlowNetwork net;
    net.scale = b;
    net.source = net.add_node();
    net.sink = net.add_node();
    std::vector<std::int32_t> id(g.universe, -1);
    for (NodeId v : g.nodes) id[v] = net.add_node(v);
    for (NodeId v : g.nodes) {
        net.add_arc(net.source, id[v], checked_mul(static_cast<std::int64_t>(g.degree(v)), b));
        net.add_arc(id[v], net.sink, checked_mul(2, a));
    }
    for (const auto& e : g.edges) net.add_arc(id[e.first], id[e.second], b, b);
    return net;
}

FlowNetwork build_weighted_edge_flow_network(const DetGraph& g,
                                             const std::vector<std::int64_t>& edge_weight,
                                             const Rational& alpha) {
    const std::int64_t a = alpha.num, b = alpha.den;
    FlowNetwork net;
    net.scale = b;
    net.source = net.add_node();
    net.sink = net.add_node();
    std::vector<std::int32_t> id(g.universe, -1);
    std::vector<std::int64_t> wdeg(g.universe, 0);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        wdeg[g.edges[i].first] = checked_add(wdeg[g.edges[i].first], edge_weight[i]);
        wdeg[g.edges[i].second] = checked_add(wdeg[g.edges[i].second], edge_weight[i]);
    }
    for (NodeId v : g.nodes) id[v] = net.add_node(v);
    for (NodeId v : g.nodes) {
        net.add_arc(net.source, id[v], checked_mul(wdeg[v], b));
        net.add_arc(id[v], net.sink, checked_mul(2, a));
    }
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        std::int64_t c = checked_mul(edge_weight[i], b);
        net.add_arc(id[g.edges[i].first], id[g.edges[i].second], c, c);
    }
    return net;
}

namespace {

FlowNetwork build_clique_network_impl(const DetGraph& g, const CliqueIndex& idx,
                                      const std::vector<std::int64_t>* clique_weight,
                                      const Rational& alpha) {
    const std::int64_t a = alpha.num, b = alpha.den;
    const std::int64_t h = idx.h;
    FlowNetwork net;
    net.scale = b;
    net.source = net.add_node();
    net.sink = net.add_node();
    std::vector<std::int32_t> id(g.universe, -1);
    for (NodeId v : g.nodes) id[v] = net.add_node(v);

    // weighted clique degree (unit weights in the exact case)
    std::vector<std::int64_t> wdeg(g.universe, 0);
    for (std::size_t c = 0; c < idx.cliques.size(); ++c) {
        std::int64_t w = clique_weight ? (*clique_weight)[c] : 1;
        for (NodeId v : idx.cliques[c]) wdeg[v] = checked_add(wdeg[v], w);
    }
    for (NodeId v : g.nodes) {
        net.add_arc(net.source, id[v], checked_mul(wdeg[v], b));
        net.add_arc(id[v], net.sink, checked_mul(h, a));
    }

    // weight lookup by clique tuple, needed only in the weighted case
    std::map<std::vector<NodeId>, std::int64_t> weight_of;
    if (clique_weight)
        for (std::size_t c = 0; c < idx.cliques.size(); ++c)
            weight_of[idx.cliques[c]] = (*clique_weight)[c];

    for (const auto& lam : idx.lambda_set) {
        std::int32_t ln = net.add_node();
        for (NodeId v : lam.members) net.add_arc(ln, id[v], INF_PLACEHOLDER, 0);
        for (NodeId v : lam.completions) {
            std::int64_t w = b;
            if (clique_weight) {
                std::vector<NodeId> clique = lam.members;
                clique.push_back(v);
                std::sort(clique.begin(), clique.end());
                w = checked_mul(weight_of.at(clique), b);
            }
            net.add_arc(id[v], ln, w, 0);
        }
    }
    finalize_infinite(net);
    return net;
}

}  // namespace

FlowNetwork build_clique_flow_network(const DetGraph& g, const CliqueIndex& idx,
                                      const Rational& alpha) {
    return build_clique_network_impl(g, idx, nullptr, alpha);
}

FlowNetwork build_weighted_clique_flow_network(const DetGraph& g, const CliqueIndex& idx,
                                               const std::vector<std::int64_t>& clique_weight,
                                               const Rational& alpha) {
    return build_clique_network_impl(g, idx, &clique_weight, alpha);
}

namespace {

FlowNetwork build_pattern_network_impl(const DetGraph& g, const InstanceIndex& idx,
                                       const std::vector<std::vector<std::int64_t>>* instance_weight,
                                       const Rational& alpha) {
    const std::int64_t a = alpha.num, b = alpha.den;
    const std::int64_t q = static_cast<std::int64_t>(idx.pattern.node_count);
    FlowNetwork net;
    net.scale = b;
    net.source = net.add_node();
    net.sink = net.add_node();
    std::vector<std::int32_t> id(g.universe, -1);
    for (NodeId v : g.nodes) id[v] = net.add_node(v);

    std::vector<std::int64_t> wdeg(g.universe, 0);
    for (std::size_t gi = 0; gi < idx.groups.size(); ++gi) {
        std::int64_t gw = 0;
        if (instance_weight) {
            for (std::int64_t w : (*instance_weight)[gi]) gw = checked_add(gw, w);
        } else {
            gw = static_cast<std::int64_t>(idx.groups[gi].multiplicity());
        }
        for (NodeId v : idx.groups[gi].nodes.members) wdeg[v] = checked_add(wdeg[v], gw);
    }
    for (NodeId v : g.nodes) {
        net.add_arc(net.source, id[v], checked_mul(wdeg[v], b));
        net.add_arc(id[v], net.sink, checked_mul(q, a));
    }
    for (std::size_t gi = 0; gi < idx.groups.size(); ++gi) {
        std::int64_t gw = 0;
        if (instance_weight) {
            for (std::int64_t w : (*instance_weight)[gi]) gw = checked_add(gw, w);
        } else {
            gw = static_cast<std::int64_t>(idx.groups[gi].multiplicity());
        }
        std::int32_t ln = net.add_node();
        for (NodeId v : idx.groups[gi].nodes.members) {
            // lambda'->v' carries |g|(q-1)b, v'->lambda' carries |g|b
            net.add_arc(id[v], ln, checked_mul(gw, b), checked_mul(checked_mul(gw, q - 1), b));
        }
    }
    return net;
}

}  // namespace

FlowNetwork build_pattern_flow_network(const DetGraph& g, const InstanceIndex& idx,
                                       const Rational& alpha) {
    return build_pattern_network_impl(g, idx, nullptr, alpha);
}

FlowNetwork build_weighted_pattern_flow_network(const DetGraph& g, const InstanceIndex& idx,
                                                const std::vector<std::vector<std::int64_t>>& instance_weight,
                                                const Rational& alpha) {
    return build_pattern_network_impl(g, idx, &instance_weight, alpha);
}

ComponentDag residual_scc_dag(const FlowNetwork& net, const std::vector<std::int64_t>& residual) {
    const std::int32_t n = net.node_count;
    // Tarjan, iterative.
    std::vector<std::int32_t> index(n, -1), lowlink(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<std::int32_t> stack;
    std::int32_t next_index = 0, comp_count = 0;

    struct Frame {
        std::int32_t v;
        std::size_t ai;
    };
    std::vector<Frame> call;
    for (std::int32_t root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            bool descended = false;
            while (f.ai < net.out[f.v].size()) {
                std::int32_t a = net.out[f.v][f.ai];
                ++f.ai;
                if (residual[a] <= 0) continue;
                std::int32_t w = net.arcs[a].to;
                if (index[w] == -1) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                    descended = true;
                    break;
                } else if (on_stack[w]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[w]);
                }
            }
            if (descended) continue;
            // finished v
            std::int32_t v = f.v;
            if (lowlink[v] == index[v]) {
                while (true) {
                    std::int32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = comp_count;
                    if (w == v) break;
                }
                ++comp_count;
            }
            call.pop_back();
            if (!call.empty())
                lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
        }
    }

    // Tarjan emits components in reverse topological order; flip ids so the
    // DAG is numbered topologically.
    ComponentDag dag;
    dag.component_of.resize(n);
    for (std::int32_t v = 0; v < n; ++v) dag.component_of[v] = comp_count - 1 - comp[v];
    dag.components.assign(comp_count, {});
    for (std::int32_t v = 0; v < n; ++v) dag.components[dag.component_of[v]].push_back(v);
    dag.scc_of_source = dag.component_of[net.source];
    dag.scc_of_sink = dag.component_of[net.sink];

    std::vector<std::vector<std::int32_t>> edge_sets(comp_count);
    for (std::int32_t v = 0; v < n; ++v) {
        for (std::int32_t a : net.out[v]) {
            if (residual[a] <= 0) continue;
            std::int32_t cu = dag.component_of[v], cw = dag.component_of[net.arcs[a].to];
            if (cu != cw) edge_sets[cu].push_back(cw);
        }
    }
    dag.dag_edges.resize(comp_count);
    for (std::int32_t c = 0; c < comp_count; ++c) {
        auto& es = edge_sets[c];
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());
        dag.dag_edges[c] = std::move(es);
    }

    dag.vertex_mask.resize(comp_count);
    for (std::int32_t c = 0; c < comp_count; ++c) {
        std::vector<NodeId> verts;
        for (std::int32_t node : dag.components[c])
            if (net.vertex_of_node[node] != FlowNetwork::NO_VERTEX)
                verts.push_back(net.vertex_of_node[node]);
        dag.vertex_mask[c] = NodeSet(std::move(verts));
    }
    return dag;
}

std::int64_t flow_divergence(const FlowNetwork& net, const std::vector<std::int64_t>& residual,
                             std::int32_t node) {
    std::int64_t div = 0;
    for (std::int32_t a : net.out[node]) div += net.arcs[a].cap - residual[a];
    return div;
}

std::vector<std::int32_t> max_min_cut_source_side(const FlowNetwork& net,
                                                  const std::vector<std::int64_t>& residual) {
    // reverse reachability from t over residual arcs
    std::vector<char> reaches_t(net.node_count, 0);
    std::vector<std::int32_t> stack{net.sink};
    reaches_t[net.sink] = 1;
    while (!stack.empty()) {
        std::int32_t v = stack.back();
        stack.pop_back();
        for (std::int32_t a : net.out[v]) {
            // arc a^1 enters v; usable in the residual graph iff residual[a^1] > 0
            std::int32_t u = net.arcs[a].to;
            if (!reaches_t[u] && residual[a ^ 1] > 0) {
                reaches_t[u] = 1;
                stack.push_back(u);
            }
        }
    }
    std::vector<std::int32_t> side;
    for (std::int32_t v = 0; v < net.node_count; ++v)
        if (!reaches_t[v]) side.push_back(v);
    return side;
}

void dump_dimacs(const FlowNetwork& net, std::ostream& os) {
    std::size_t arc_count = 0;
    for (const auto& a : net.arcs)
        if (a.cap > 0) ++arc_count;
    os << "p max " << net.node_count << ' ' << arc_count << '\n';
    os << "n " << net.source + 1 << " s\n";
    os << "n " << net.sink + 1 << " t\n";
    for (std::int32_t v = 0; v < net.node_count; ++v)
        for (std::int32_t ai : net.out[v])
            if (net.arcs[ai].cap > 0)
                os << "a " << v + 1 << ' ' << net.arcs[ai].to + 1 << ' ' << net.arcs[ai].cap
                   << '\n';
}

}  // namespace udense
