#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "udense/estimators.hpp"
#include "udense/graph.hpp"
#include "udense/jsonout.hpp"
#include "udense/metrics.hpp"
#include "udense/oracle.hpp"

namespace {

using nlohmann::ordered_json;
using namespace udense;

DensityNotion parse_density(const std::string& spec) {
    if (spec == "edge") return DensityNotion::edge();
    if (spec.rfind("clique:", 0) == 0) {
        try {
            return DensityNotion::clique(std::stoi(spec.substr(7)));
        } catch (const std::logic_error&) {
            throw CLI::ValidationError("--density", "bad clique order in '" + spec + "'");
        }
    }
    if (spec.rfind("pattern:", 0) == 0) {
        return DensityNotion::pattern(Pattern::load(spec.substr(8)));
    }
    throw CLI::ValidationError("--density", "expected edge | clique:<h> | pattern:<file>");
}

NodeSet parse_set(const std::string& spec) {
    std::vector<NodeId> ids;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            ids.push_back(static_cast<NodeId>(std::stoul(tok)));
        } catch (const std::logic_error&) {
            throw CLI::ValidationError("--set", "bad node id '" + tok + "'");
        }
    }
    if (ids.empty()) throw CLI::ValidationError("--set", "expected comma-separated node ids");
    return NodeSet(std::move(ids));
}

ordered_json nodes_json(const NodeSet& s) {
    ordered_json arr = ordered_json::array();
    for (NodeId v : s.members) arr.push_back(v);
    return arr;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + out_path);
        out << text;
    }
}

void add_remap_warning(const UncertainGraph& g, std::vector<std::string>& warnings) {
    for (std::size_t i = 0; i < g.original_ids.size(); ++i) {
        if (g.original_ids[i] != static_cast<std::int64_t>(i)) {
            warnings.push_back("input node ids were renormalized to 0.." +
                               std::to_string(g.node_count - 1));
            return;
        }
    }
}

ordered_json estimate_json(const EstimateResult& res, const std::vector<std::string>& extra_warnings,
                           std::size_t lm = 0) {
    ordered_json j;
    j["mode"] = res.mode;
    j["notion"] = res.notion;
    j["k"] = res.k;
    if (lm > 0) j["lm"] = lm;
    j["theta"] = res.theta;
    j["seed"] = res.seed;
    ordered_json results = ordered_json::array();
    for (const auto& e : res.ranked) {
        ordered_json r;
        r["nodes"] = nodes_json(e.set);
        r["estimate"] = e.estimate;
        results.push_back(std::move(r));
    }
    j["results"] = std::move(results);
    ordered_json warnings = ordered_json::array();
    for (const auto& w : extra_warnings) warnings.push_back(w);
    for (const auto& w : res.warnings) warnings.push_back(w);
    j["warnings"] = std::move(warnings);
    return j;
}

struct EstimateArgs {
    std::string graph_path;
    std::string density = "edge";
    std::size_t k = 1;
    std::size_t lm = 1;
    std::uint64_t theta = 0;  // 0 = auto ladder
    bool auto_theta = false;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    bool heuristic = false;
    bool bounds = false;
    std::string out;
};

void add_common(CLI::App* cmd, EstimateArgs& args, bool with_lm) {
    cmd->add_option("--graph", args.graph_path, "uncertain graph file (lines: u v p)")
        ->required();
    cmd->add_option("--density", args.density, "edge | clique:<h> | pattern:<file>");
    cmd->add_option("--k", args.k, "number of result sets");
    if (with_lm) cmd->add_option("--lm", args.lm, "minimum nucleus size");
    cmd->add_option("--theta", args.theta, "number of sampled worlds");
    cmd->add_flag("--auto-theta", args.auto_theta,
                  "doubling ladder, stop when the top-k stabilizes");
    cmd->add_option("--seed", args.seed, "random seed");
    cmd->add_option("--threads", args.threads, "sampling worker count");
    cmd->add_flag("--heuristic", args.heuristic,
                  "pattern notions: harvest core-decomposition sets instead of exact enumeration");
    cmd->add_flag("--bounds", args.bounds,
                  "attach oracle-backed accuracy bounds (small graphs only)");
    cmd->add_option("--out", args.out, "output file (default stdout)");
}

int run_estimate(const EstimateArgs& args, bool nds) {
    UncertainGraph g = load_uncertain_graph(args.graph_path);
    DensityNotion notion = parse_density(args.density);
    EstimatorOptions opts;
    opts.threads = args.threads;
    opts.heuristic = args.heuristic;

    EstimateResult res;
    if (args.theta == 0 || args.auto_theta) {
        AutoThetaResult lad = auto_theta(g, notion, args.k, args.lm, nds, args.seed, opts);
        res = lad.final;
    } else if (nds) {
        res = estimate_topk_nds(g, notion, args.k, args.lm, args.theta, args.seed, opts);
    } else {
        res = estimate_topk_mpds(g, notion, args.k, args.theta, args.seed, opts);
    }

    std::vector<std::string> warnings;
    add_remap_warning(g, warnings);
    ordered_json j = estimate_json(res, warnings, nds ? args.lm : 0);

    if (args.bounds) {
        ordered_json b;
        if (nds) {
            NdsBounds nb = nds_bounds(g, notion, args.k, args.lm, res.theta);
            b["closure"] = nb.closure_bound;
            b["return"] = nb.return_bound;
        } else {
            auto exact = exact_topk(g, notion, std::size_t(1) << 20);
            std::vector<double> taus;
            for (std::size_t i = 0; i < std::min(args.k, exact.size()); ++i)
                taus.push_back(exact[i].score);
            b["inclusion"] = mpds_inclusion_bound(taus, res.theta);
            std::vector<double> topk1 = taus;
            topk1.push_back(exact.size() > args.k ? exact[args.k].score : 0.0);
            std::vector<double> all;
            for (const auto& r : exact) all.push_back(r.score);
            b["return"] = mpds_return_bound(topk1, all, res.theta);
        }
        j["bounds"] = std::move(b);
    }
    write_output(args.out, dump_fixed(j));
    return 0;
}

std::uint64_t parse_u64_field(const std::string& s) { return std::stoull(s); }

UncertainGraph make_synthetic(const std::string& spec, std::uint64_t seed) {
    // er:<n>:<p>  |  ba:<n>:<attach>
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) throw CLI::ValidationError("--synthetic", "expected er:<n>:<p> or ba:<n>:<m>");
    const std::uint64_t n = parse_u64_field(parts[1]);
    std::vector<UncertainGraph::Edge> edges;
    std::uint64_t draw = 0;
    auto uni = [&] { return stream_uniform(seed, 0xbe9c5ULL, draw++); };
    if (parts[0] == "er") {
        const double p_edge = std::stod(parts[2]);
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                if (uni() < p_edge) edges.push_back({u, v, 0.0});
    } else if (parts[0] == "ba") {
        const std::uint64_t attach = parse_u64_field(parts[2]);
        std::vector<NodeId> targets;  // repeated by degree
        for (NodeId v = 0; v < std::min<std::uint64_t>(attach + 1, n); ++v)
            for (NodeId u = 0; u < v; ++u) {
                edges.push_back({u, v, 0.0});
                targets.push_back(u);
                targets.push_back(v);
            }
        for (NodeId v = static_cast<NodeId>(std::min<std::uint64_t>(attach + 1, n)); v < n; ++v) {
            std::vector<NodeId> chosen;
            while (chosen.size() < attach && chosen.size() < v) {
                NodeId t = targets[static_cast<std::size_t>(uni() * targets.size())];
                if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
                    chosen.push_back(t);
            }
            for (NodeId t : chosen) {
                edges.push_back({std::min(t, v), std::max(t, v), 0.0});
                targets.push_back(t);
                targets.push_back(v);
            }
        }
    } else {
        throw CLI::ValidationError("--synthetic", "unknown model: " + parts[0]);
    }
    for (auto& e : edges) {
        double u = uni();
        e.p = u <= 0.0 ? 1e-9 : u;  // uniform (0,1)
    }
    return UncertainGraph::from_edges(n, std::move(edges));
}

int run_bench(const std::string& graph_path, const std::string& synthetic,
              const std::string& density, std::size_t k, std::size_t lm, bool nds,
              std::uint64_t seed, std::size_t threads, const std::string& out_path) {
    UncertainGraph g = synthetic.empty() ? load_uncertain_graph(graph_path)
                                         : make_synthetic(synthetic, seed);
    DensityNotion notion = parse_density(density);
    EstimatorOptions opts;
    opts.threads = threads;

    // exact reference when the oracle can handle the graph
    std::vector<NodeSet> exact_sets;
    bool have_exact = false;
    try {
        if (nds) {
            for (auto& r : exact_topk_nds(g, notion, k, lm)) exact_sets.push_back(r.set);
        } else {
            for (auto& r : exact_topk(g, notion, k)) exact_sets.push_back(r.set);
        }
        have_exact = true;
    } catch (const TooLargeError&) {
    }

    std::ostringstream tsv;
    tsv << "theta\truntime_ms\tjaccard\tf1\n";
    CandidatePool pool;
    std::uint64_t done = 0;
    std::vector<EstimateResult::Entry> prev;
    for (int rung = 0; rung <= 8; ++rung) {
        const std::uint64_t theta = 10ULL << rung;
        auto t0 = std::chrono::steady_clock::now();
        if (nds)
            extend_nds_pool(g, notion, done, theta, seed, opts, pool);
        else
            extend_mpds_pool(g, notion, done, theta, seed, opts, pool);
        EstimateResult res = nds ? nds_from_pool(pool, k, lm) : mpds_from_pool(pool, k);
        auto t1 = std::chrono::steady_clock::now();
        done = theta;
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        tsv << theta << '\t';
        {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3f", ms);
            tsv << buf << '\t';
        }
        if (rung == 0)
            tsv << "-";
        else {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4f", topk_jaccard(prev, res.ranked));
            tsv << buf;
        }
        tsv << '\t';
        if (have_exact && res.ranked.size() == exact_sets.size() && !exact_sets.empty()) {
            std::vector<NodeSet> ours;
            for (const auto& e : res.ranked) ours.push_back(e.set);
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4f", rank_f1(ours, exact_sets));
            tsv << buf;
        } else {
            tsv << "-";
        }
        tsv << '\n';
        prev = res.ranked;
    }
    write_output(out_path, tsv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"most probable densest subgraphs in uncertain graphs"};
    app.require_subcommand(1);

    EstimateArgs mpds_args, nds_args;
    auto* mpds_cmd = app.add_subcommand("mpds", "top-k most probable densest subgraphs");
    add_common(mpds_cmd, mpds_args, false);
    auto* nds_cmd = app.add_subcommand("nds", "top-k nucleus densest subgraphs");
    add_common(nds_cmd, nds_args, true);

    // oracle
    std::string o_graph, o_density = "edge", o_set, o_out;
    std::size_t o_k = 0, o_lm = 1;
    bool o_nds = false, o_matching = false;
    auto* oracle_cmd = app.add_subcommand("oracle", "exact ground truth by exhaustive enumeration");
    oracle_cmd->add_option("--graph", o_graph, "uncertain graph file")->required();
    oracle_cmd->add_option("--density", o_density, "edge | clique:<h> | pattern:<file>");
    oracle_cmd->add_option("--set", o_set, "node set for tau/gamma, e.g. 1,3");
    oracle_cmd->add_option("--k", o_k, "exact top-k");
    oracle_cmd->add_flag("--nds", o_nds, "rank by containment probability (closed sets)");
    oracle_cmd->add_option("--lm", o_lm, "minimum nucleus size for --nds");
    oracle_cmd->add_flag("--matching-check", o_matching,
                         "matching-count identity on the file's deterministic skeleton");
    oracle_cmd->add_option("--out", o_out, "output file (default stdout)");

    std::string e_graph, e_density = "edge", e_out;
    auto* eds_cmd = app.add_subcommand("eds", "expected densest subgraph baseline");
    eds_cmd->add_option("--graph", e_graph, "uncertain graph file")->required();
    eds_cmd->add_option("--density", e_density, "edge | clique:<h> | pattern:<file>");
    eds_cmd->add_option("--out", e_out, "output file (default stdout)");

    std::string m_graph, m_set, m_labels, m_ours, m_exact, m_out;
    auto* metrics_cmd = app.add_subcommand("metrics", "PD, PCC, purity and rank-averaged F1");
    metrics_cmd->add_option("--graph", m_graph, "uncertain graph file");
    metrics_cmd->add_option("--set", m_set, "node set, e.g. 1,3");
    metrics_cmd->add_option("--labels", m_labels, "community labels file (lines: node community)");
    metrics_cmd->add_option("--ours", m_ours, "result JSON to score");
    metrics_cmd->add_option("--exact", m_exact, "reference result JSON");
    metrics_cmd->add_option("--out", m_out, "output file (default stdout)");

    std::string b_graph, b_synthetic, b_density = "edge", b_out;
    std::size_t b_k = 1, b_lm = 1, b_threads = 1;
    std::uint64_t b_seed = 1;
    bool b_nds = false;
    auto* bench_cmd = app.add_subcommand("bench", "theta-doubling convergence ladder (TSV)");
    bench_cmd->add_option("--graph", b_graph, "uncertain graph file");
    bench_cmd->add_option("--synthetic", b_synthetic, "er:<n>:<p> or ba:<n>:<m>");
    bench_cmd->add_option("--density", b_density, "edge | clique:<h> | pattern:<file>");
    bench_cmd->add_option("--k", b_k, "number of result sets");
    bench_cmd->add_option("--lm", b_lm, "minimum nucleus size (with --nds)");
    bench_cmd->add_flag("--nds", b_nds, "benchmark the nucleus estimator");
    bench_cmd->add_option("--seed", b_seed, "random seed");
    bench_cmd->add_option("--threads", b_threads, "sampling worker count");
    bench_cmd->add_option("--out", b_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (mpds_cmd->parsed()) return run_estimate(mpds_args, false);
        if (nds_cmd->parsed()) return run_estimate(nds_args, true);

        if (oracle_cmd->parsed()) {
            UncertainGraph g = load_uncertain_graph(o_graph);
            DensityNotion notion = parse_density(o_density);
            ordered_json j;
            j["mode"] = "oracle";
            j["notion"] = notion.to_string();
            std::vector<std::string> warnings;
            add_remap_warning(g, warnings);
            if (o_matching) {
                std::vector<std::pair<NodeId, NodeId>> det_edges;
                for (const auto& e : g.edges) det_edges.push_back({e.u, e.v});
                auto mi = matching_identity_check(
                    DetGraph::from_edges(g.node_count, std::move(det_edges)));
                j["check"] = "matching-identity";
                j["lhs"] = mi.lhs;
                j["rhs"] = mi.rhs;
                j["matchings"] = mi.matchings;
                j["match"] = mi.lhs == mi.rhs;
            } else if (!o_set.empty()) {
                NodeSet set = parse_set(o_set);
                j["set"] = nodes_json(set);
                j["tau"] = exact_tau(g, set, notion);
                j["gamma"] = exact_gamma(g, set, notion);
            } else if (o_k > 0) {
                j["k"] = o_k;
                auto ranked = o_nds ? exact_topk_nds(g, notion, o_k, o_lm)
                                    : exact_topk(g, notion, o_k);
                if (o_nds) j["lm"] = o_lm;
                ordered_json results = ordered_json::array();
                for (const auto& r : ranked) {
                    ordered_json e;
                    e["nodes"] = nodes_json(r.set);
                    e["estimate"] = r.score;
                    results.push_back(std::move(e));
                }
                j["results"] = std::move(results);
            } else {
                std::cerr << "oracle: one of --set, --k, --matching-check is required\n";
                return 2;
            }
            ordered_json warr = ordered_json::array();
            for (const auto& w : warnings) warr.push_back(w);
            j["warnings"] = std::move(warr);
            write_output(o_out, dump_fixed(j));
            return 0;
        }

        if (eds_cmd->parsed()) {
            UncertainGraph g = load_uncertain_graph(e_graph);
            DensityNotion notion = parse_density(e_density);
            auto eds = expected_densest_subgraph(g, notion);
            ordered_json j;
            j["mode"] = "eds";
            j["notion"] = notion.to_string();
            ordered_json results = ordered_json::array();
            ordered_json entry;
            entry["nodes"] = nodes_json(eds.set);
            entry["estimate"] = eds.density;
            results.push_back(std::move(entry));
            j["results"] = std::move(results);
            std::vector<std::string> warnings;
            add_remap_warning(g, warnings);
            ordered_json warr = ordered_json::array();
            for (const auto& w : warnings) warr.push_back(w);
            j["warnings"] = std::move(warr);
            write_output(e_out, dump_fixed(j));
            return 0;
        }

        if (metrics_cmd->parsed()) {
            ordered_json j;
            j["mode"] = "metrics";
            if (!m_ours.empty() || !m_exact.empty()) {
                if (m_ours.empty() || m_exact.empty()) {
                    std::cerr << "metrics: --ours and --exact go together\n";
                    return 2;
                }
                auto load_sets = [](const std::string& path) {
                    std::ifstream in(path);
                    if (!in) throw std::runtime_error("cannot open " + path);
                    auto doc = nlohmann::ordered_json::parse(in);
                    std::vector<NodeSet> sets;
                    for (const auto& r : doc.at("results")) {
                        std::vector<NodeId> ids;
                        for (const auto& v : r.at("nodes")) ids.push_back(v.get<NodeId>());
                        sets.push_back(NodeSet(std::move(ids)));
                    }
                    return sets;
                };
                j["rank_f1"] = rank_f1(load_sets(m_ours), load_sets(m_exact));
            } else {
                if (m_graph.empty() || m_set.empty()) {
                    std::cerr << "metrics: --graph and --set are required\n";
                    return 2;
                }
                UncertainGraph g = load_uncertain_graph(m_graph);
                NodeSet set = parse_set(m_set);
                j["set"] = nodes_json(set);
                if (set.size() >= 2) j["pd"] = probabilistic_density(g, set);
                j["pcc"] = probabilistic_clustering_coefficient(g, set);
                if (!m_labels.empty()) j["purity"] = purity(set, load_labels(m_labels));
            }
            write_output(m_out, dump_fixed(j));
            return 0;
        }

        if (bench_cmd->parsed()) {
            if (b_graph.empty() == b_synthetic.empty()) {
                std::cerr << "bench: exactly one of --graph / --synthetic is required\n";
                return 2;
            }
            return run_bench(b_graph, b_synthetic, b_density, b_k, b_lm, b_nds, b_seed,
                             b_threads, b_out);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
