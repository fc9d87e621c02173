#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "udense/graph.hpp"
#include "udense/motifs.hpp"

namespace udense {

/// Integer-capacity flow network. Rational parameters alpha = a/b are
/// handled by premultiplying every capacity by b (the `scale` field), so
/// saturation tests stay exact. Arcs come in pairs: arc i and arc i^1 are
/// each other's reverse.
struct FlowNetwork {
    struct Arc {
        std::int32_t to;
        std::int64_t cap;
    };
    std::int32_t node_count = 0;
    std::int32_t source = 0;
    std::int32_t sink = 0;
    std::int64_t scale = 1;
    std::vector<Arc> arcs;
    std::vector<std::vector<std::int32_t>> out;  // arc ids per node

    // mapping between graph vertices and network nodes; -1 for s, t, lambdas
    std::vector<NodeId> vertex_of_node;  // node -> raw vertex id or NO_VERTEX
    static constexpr NodeId NO_VERTEX = ~NodeId(0);

    std::int32_t add_node(NodeId vertex = NO_VERTEX);
    /// Adds the arc pair (from->to, cap) / (to->from, rev_cap).
    void add_arc(std::int32_t from, std::int32_t to, std::int64_t cap, std::int64_t rev_cap = 0);
};

struct MaxflowResult {
    std::int64_t value = 0;
    std::vector<std::int64_t> residual;  // per arc, indexed like net.arcs
};

/// Dinic with integer capacities; exact max-flow = min-cut value.
MaxflowResult max_flow(const FlowNetwork& net);

/// Goldberg construction for edge density at alpha = a/b:
/// s->v has deg(v)*b, v->t has 2a, and each graph edge contributes a
/// bidirected pair of capacity b.
FlowNetwork build_edge_flow_network(const DetGraph& g, const Rational& alpha);

/// Clique-density network: s->v carries deg(v,h)*b, v->t carries h*a,
/// lambda->v is infinite for members, v->lambda carries b per completion.
/// Infinite capacity is (total finite capacity + 1); overflow throws.
FlowNetwork build_clique_flow_network(const DetGraph& g, const CliqueIndex& idx,
                                      const Rational& alpha);

/// Pattern-density network over instance groups: s->v carries deg(v,psi)*b,
/// v->t carries |V_psi|*a, group arcs carry |g|*(|V_psi|-1)*b downward and
/// |g|*b upward.
FlowNetwork build_pattern_flow_network(const DetGraph& g, const InstanceIndex& idx,
                                       const Rational& alpha);

// weighted variants for the expected-density baseline; weights are integer
// (probability mass premultiplied by the quantization factor)
FlowNetwork build_weighted_edge_flow_network(const DetGraph& g,
                                             const std::vector<std::int64_t>& edge_weight,
                                             const Rational& alpha);
FlowNetwork build_weighted_clique_flow_network(const DetGraph& g, const CliqueIndex& idx,
                                               const std::vector<std::int64_t>& clique_weight,
                                               const Rational& alpha);
FlowNetwork build_weighted_pattern_flow_network(const DetGraph& g, const InstanceIndex& idx,
                                                const std::vector<std::vector<std::int64_t>>& instance_weight,
                                                const Rational& alpha);

/// SCC condensation of the residual graph (arcs with remaining capacity).
/// Component ids are in topological order of the DAG.
struct ComponentDag {
    std::vector<std::int32_t> component_of;            // per network node
    std::vector<std::vector<std::int32_t>> components;  // network nodes per component
    std::vector<std::vector<std::int32_t>> dag_edges;   // deduplicated adjacency
    std::int32_t scc_of_source = -1;
    std::int32_t scc_of_sink = -1;
    std::vector<NodeSet> vertex_mask;  // graph vertices inside each component

    bool non_trivial(std::int32_t c) const { return c != scc_of_source && c != scc_of_sink; }
};

ComponentDag residual_scc_dag(const FlowNetwork& net, const std::vector<std::int64_t>& residual);

/// Net out-minus-in flow at a node; zero at every non-terminal for a valid flow.
std::int64_t flow_divergence(const FlowNetwork& net, const std::vector<std::int64_t>& residual,
                             std::int32_t node);

/// Source side of the maximal minimum cut: nodes with no residual path to t.
std::vector<std::int32_t> max_min_cut_source_side(const FlowNetwork& net,
                                                  const std::vector<std::int64_t>& residual);

/// DIMACS max-flow text format, for cross-validation with external solvers.
void dump_dimacs(const FlowNetwork& net, std::ostream& os);

}  // namespace udense
