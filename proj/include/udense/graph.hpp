#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "udense/common.hpp"

namespace udense {

/// Undirected uncertain graph: every edge carries an independent existence
/// probability p in (0, 1]. Node ids are dense in [0, node_count).
/// Immutable after construction and safe to share across threads.
struct UncertainGraph {
    struct Edge {
        NodeId u, v;  // u < v
        double p;
    };

    std::size_t node_count = 0;
    std::vector<Edge> edges;
    // per node: sorted (neighbor, probability) pairs
    std::vector<std::vector<std::pair<NodeId, double>>> adjacency;
    // original ids as they appeared in the input file, when loaded from disk;
    // original_ids[i] is the raw label of normalized node i
    std::vector<std::int64_t> original_ids;

    std::size_t edge_count() const { return edges.size(); }

    static UncertainGraph from_edges(std::size_t n, std::vector<Edge> edges);
};

/// Reads "u v p" lines (whitespace separated, '#' comments, LF or CRLF).
/// Sparse ids are normalized to [0, n) by ascending numeric rank.
UncertainGraph load_uncertain_graph(const std::string& path);
UncertainGraph parse_uncertain_graph(std::istream& in, const std::string& name);

/// Edge-probability models for raw interaction-count data.
struct ProbabilityModel {
    enum class Kind { ExponentialCdf, ReciprocalDegree };
    Kind kind;
    double mu = 20.0;        // mean of the exponential cdf
    double floor = 1e-9;     // probability floor when a formula yields 0

    static ProbabilityModel exponential_cdf(double mu, double floor = 1e-9);
    static ProbabilityModel reciprocal_degree(double floor = 1e-9);
};

struct CountEdge {
    NodeId u, v;
    double t;  // interaction count (exponential model); ignored by reciprocal
};

UncertainGraph assign_probabilities(std::size_t node_count,
                                    const std::vector<CountEdge>& edges,
                                    const ProbabilityModel& model);

/// One possible world: membership bitset over the parent's edge index plus
/// the natural log of its probability. Owned by a single worker per round.
struct World {
    const UncertainGraph* parent = nullptr;
    std::vector<std::uint64_t> present;  // bitset, length ceil(m/64)
    double log_prob = 0.0;

    World() = default;
    /// Builds the world for an explicit membership mask (bit i = edge i).
    World(const UncertainGraph& g, std::uint64_t mask);

    bool edge_present(std::size_t i) const {
        return (present[i >> 6] >> (i & 63)) & 1u;
    }
    std::size_t present_count() const;
};

/// Samples each edge independently with its probability; the random stream
/// is a pure function of (seed, round, edge index).
World sample_world(const UncertainGraph& g, std::uint64_t seed, std::uint64_t round);

/// Materialized deterministic graph (a possible world, possibly restricted
/// to an active node subset by core pruning). Node ids stay in the parent's
/// id space.
struct DetGraph {
    std::size_t universe = 0;          // parent id space size
    std::vector<NodeId> nodes;         // active nodes, ascending
    std::vector<std::pair<NodeId, NodeId>> edges;  // u < v, both active
    std::vector<std::vector<NodeId>> adj;          // indexed by raw id
    std::vector<char> active;                      // indexed by raw id

    std::size_t order() const { return nodes.size(); }
    bool is_active(NodeId v) const { return active[v] != 0; }
    std::size_t degree(NodeId v) const { return adj[v].size(); }
    bool has_edge(NodeId u, NodeId v) const;

    static DetGraph from_edges(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges);
    /// Induced subgraph on `keep` (raw ids preserved).
    DetGraph induced(const std::vector<NodeId>& keep) const;
};

DetGraph materialize(const World& w);

/// Small connected template graph with its automorphism count precomputed.
struct Pattern {
    std::size_t node_count = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;  // a < b
    std::size_t automorphism_count = 1;

    static Pattern from_edges(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges);
    static Pattern load(const std::string& path);
    static Pattern parse(std::istream& in, const std::string& name);

    static Pattern single_edge();
    static Pattern clique(std::size_t h);
    static Pattern star(std::size_t leaves);  // 2-star = star(2), 3-star = star(3)
    static Pattern diamond();                 // K4 minus one edge
};

struct DensityNotion {
    enum class Kind { Edge, Clique, Pattern };
    Kind kind = Kind::Edge;
    int h = 2;        // clique order, Kind::Clique only
    Pattern psi;      // Kind::Pattern only

    static DensityNotion edge() { return {}; }
    static DensityNotion clique(int h);
    static DensityNotion pattern(Pattern psi);

    std::string to_string() const;
    /// Nodes in one density unit: 2 for an edge, h for a clique, |V_psi| else.
    std::size_t unit_size() const;
};

/// rho(G[U]) for the requested notion: edges / h-cliques / psi-instances in
/// the induced subgraph, divided by |U|. Throws on an empty set.
double induced_density(const World& w, const NodeSet& s, const DensityNotion& notion);
double induced_density(const DetGraph& g, const NodeSet& s, const DensityNotion& notion);
Rational induced_density_exact(const DetGraph& g, const NodeSet& s, const DensityNotion& notion);

}  // namespace udense
