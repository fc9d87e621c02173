#include "udense/estimators.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <thread>

#include "udense/oracle.hpp"

namespace udense {

namespace {

// Runs rounds [begin, end) split across workers; each worker fills a local
// pool, merged afterwards. Counts are keyed by canonical NodeSet and merged
// by addition, so the result is independent of the partitioning.
template <typename RoundFn>
void run_rounds(std::uint64_t begin, std::uint64_t end, std::size_t threads, RoundFn&& fn,
                CandidatePool& pool) {
    threads = std::max<std::size_t>(1, threads);
    const std::uint64_t total = end - begin;
    if (threads == 1 || total < 2 * threads) {
        fn(begin, end, pool);
        pool.rounds += total;
        return;
    }
    std::vector<CandidatePool> locals(threads);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::uint64_t lo = begin + chunk * t;
        const std::uint64_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([&, t, lo, hi] {
            try {
                fn(lo, hi, locals[t]);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (std::size_t t = 0; t < threads; ++t)
        if (errors[t]) std::rethrow_exception(errors[t]);
    for (auto& local : locals) {
        for (const auto& [set, c] : local.counts) pool.counts[set] += c;
        pool.degenerate_rounds += local.degenerate_rounds;
    }
    pool.rounds += total;
}

std::vector<NodeSet> harvest_heuristic(const DetGraph& world, const DensityNotion& notion,
                                       const DensestOptions& opts) {
    return heuristic_pattern_dense(world, notion.psi, opts);
}

}  // namespace

void extend_mpds_pool(const UncertainGraph& g, const DensityNotion& notion,
                      std::uint64_t round_begin, std::uint64_t round_end, std::uint64_t seed,
                      const EstimatorOptions& opts, CandidatePool& pool) {
    const bool heuristic = opts.heuristic && notion.kind == DensityNotion::Kind::Pattern;
    auto body = [&](std::uint64_t lo, std::uint64_t hi, CandidatePool& local) {
        for (std::uint64_t r = lo; r < hi; ++r) {
            DetGraph world = materialize(sample_world(g, seed, r));
            try {
                if (heuristic) {
                    auto sets = harvest_heuristic(world, notion, opts.densest);
                    if (sets.empty()) {
                        ++local.degenerate_rounds;
                    } else {
                        for (auto& s : sets) ++local.counts[s];
                    }
                } else {
                    DensestResult dr = enumerate_all_densest(world, notion, opts.densest);
                    if (dr.degenerate) {
                        ++local.degenerate_rounds;
                    } else {
                        for (auto& s : dr.all_densest) ++local.counts[s];
                    }
                }
            } catch (EnumerationCapError& e) {
                e.round = r;
                throw;
            }
        }
    };
    run_rounds(round_begin, round_end, opts.threads, body, pool);
}

void extend_nds_pool(const UncertainGraph& g, const DensityNotion& notion,
                     std::uint64_t round_begin, std::uint64_t round_end, std::uint64_t seed,
                     const EstimatorOptions& opts, CandidatePool& pool) {
    const bool heuristic = opts.heuristic && notion.kind == DensityNotion::Kind::Pattern;
    auto body = [&](std::uint64_t lo, std::uint64_t hi, CandidatePool& local) {
        for (std::uint64_t r = lo; r < hi; ++r) {
            DetGraph world = materialize(sample_world(g, seed, r));
            try {
                if (heuristic) {
                    auto sets = harvest_heuristic(world, notion, opts.densest);
                    if (sets.empty())
                        ++local.degenerate_rounds;
                    else
                        ++local.counts[sets.front()];
                } else {
                    MaximalDensest md = maximal_densest(world, notion, opts.densest);
                    if (md.degenerate)
                        ++local.degenerate_rounds;
                    else
                        ++local.counts[md.set];
                }
            } catch (EnumerationCapError& e) {
                e.round = r;
                throw;
            }
        }
    };
    run_rounds(round_begin, round_end, opts.threads, body, pool);
}

EstimateResult mpds_from_pool(const CandidatePool& pool, std::size_t k) {
    EstimateResult res;
    res.mode = "mpds";
    res.theta = pool.rounds;
    res.k = k;
    std::vector<std::pair<NodeSet, std::uint64_t>> entries(pool.counts.begin(),
                                                           pool.counts.end());
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (entries.size() > k) entries.resize(k);
    for (auto& [set, count] : entries)
        res.ranked.push_back(
            {set, static_cast<double>(count) / static_cast<double>(pool.rounds)});
    if (res.ranked.size() < k)
        res.warnings.push_back("only " + std::to_string(res.ranked.size()) +
                               " distinct candidate sets appeared in " +
                               std::to_string(pool.rounds) + " rounds");
    return res;
}

EstimateResult nds_from_pool(const CandidatePool& pool, std::size_t k, std::size_t l_m,
                             const MineOptions& opts) {
    EstimateResult res;
    res.mode = "nds";
    res.theta = pool.rounds;
    res.k = k;
    TransactionDb db;
    for (const auto& [set, c] : pool.counts) db.add(set, static_cast<double>(c));
    auto closed = mine_topk_closed(db, k, l_m, opts);
    for (auto& c : closed)
        res.ranked.push_back({std::move(c.set), c.support / static_cast<double>(pool.rounds)});
    if (res.ranked.size() < k)
        res.warnings.push_back("only " + std::to_string(res.ranked.size()) +
                               " closed sets of size >= " + std::to_string(l_m) + " exist");
    return res;
}

EstimateResult estimate_topk_mpds(const UncertainGraph& g, const DensityNotion& notion,
                                  std::size_t k, std::uint64_t theta, std::uint64_t seed,
                                  const EstimatorOptions& opts) {
    if (k < 1 || theta < 1) throw std::invalid_argument("k and theta must be at least 1");
    log_info("mpds: theta=" + std::to_string(theta) + " seed=" + std::to_string(seed) +
             " notion=" + notion.to_string());
    CandidatePool pool;
    extend_mpds_pool(g, notion, 0, theta, seed, opts, pool);
    EstimateResult res = mpds_from_pool(pool, k);
    res.notion = notion.to_string();
    res.seed = seed;
    return res;
}

EstimateResult estimate_topk_nds(const UncertainGraph& g, const DensityNotion& notion,
                                 std::size_t k, std::size_t l_m, std::uint64_t theta,
                                 std::uint64_t seed, const EstimatorOptions& opts) {
    if (k < 1 || theta < 1 || l_m < 1)
        throw std::invalid_argument("k, l_m and theta must be at least 1");
    CandidatePool pool;
    extend_nds_pool(g, notion, 0, theta, seed, opts, pool);
    EstimateResult res = nds_from_pool(pool, k, l_m, opts.mine);
    res.notion = notion.to_string();
    res.seed = seed;
    return res;
}

double topk_jaccard(const std::vector<EstimateResult::Entry>& a,
                    const std::vector<EstimateResult::Entry>& b) {
    std::set<NodeSet> sa, sb, all;
    for (const auto& e : a) sa.insert(e.set);
    for (const auto& e : b) sb.insert(e.set);
    if (sa.empty() && sb.empty()) return 1.0;
    std::size_t inter = 0;
    for (const auto& s : sa)
        if (sb.count(s)) ++inter;
    all = sa;
    all.insert(sb.begin(), sb.end());
    return static_cast<double>(inter) / static_cast<double>(all.size());
}

AutoThetaResult auto_theta(const UncertainGraph& g, const DensityNotion& notion, std::size_t k,
                           std::size_t l_m, bool nds, std::uint64_t seed,
                           const EstimatorOptions& opts) {
    AutoThetaResult out;
    CandidatePool pool;
    std::uint64_t done = 0;
    for (int rung = 0; rung <= 8; ++rung) {
        const std::uint64_t theta = 10ULL << rung;
        auto t0 = std::chrono::steady_clock::now();
        if (nds)
            extend_nds_pool(g, notion, done, theta, seed, opts, pool);
        else
            extend_mpds_pool(g, notion, done, theta, seed, opts, pool);
        done = theta;
        LadderRung lr;
        lr.theta = theta;
        lr.result = nds ? nds_from_pool(pool, k, l_m, opts.mine) : mpds_from_pool(pool, k);
        lr.result.notion = notion.to_string();
        lr.result.seed = seed;
        auto t1 = std::chrono::steady_clock::now();
        lr.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (!out.rungs.empty())
            lr.jaccard = topk_jaccard(out.rungs.back().result.ranked, lr.result.ranked);
        log_debug("theta ladder rung " + std::to_string(theta) + ": jaccard " +
                  std::to_string(lr.jaccard));
        const bool converged = lr.jaccard == 1.0;
        out.rungs.push_back(std::move(lr));
        if (converged) {
            out.converged = true;
            break;
        }
    }
    out.final = out.rungs.back().result;
    if (!out.converged)
        out.final.warnings.push_back("theta ladder exhausted without top-k convergence");
    return out;
}

double mpds_inclusion_bound(const std::vector<double>& true_taus, std::uint64_t theta) {
    double miss = 0.0;
    for (double tau : true_taus) {
        if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("tau outside [0,1]");
        miss += std::pow(1.0 - tau, static_cast<double>(theta));
    }
    return std::max(0.0, 1.0 - miss);
}

double mpds_return_bound(const std::vector<double>& true_taus,
                         const std::vector<double>& candidate_taus, std::uint64_t theta) {
    if (true_taus.size() < 2)
        throw std::invalid_argument("need the top-(k+1) true values");
    for (std::size_t i = 1; i < true_taus.size(); ++i)
        if (true_taus[i] > true_taus[i - 1])
            throw std::invalid_argument("true taus must be sorted descending");
    const std::size_t k = true_taus.size() - 1;
    const double mid = 0.5 * (true_taus[k - 1] + true_taus[k]);
    double include = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        include += std::pow(1.0 - true_taus[i], static_cast<double>(theta));
    const double first = std::max(0.0, 1.0 - include);
    double sep = 0.0;
    for (double tau : candidate_taus) {
        const double d = std::fabs(tau - mid);
        sep += std::exp(-2.0 * d * d * static_cast<double>(theta));
    }
    const double second = std::max(0.0, 1.0 - sep);
    return first * second;
}

NdsBounds nds_bounds(const UncertainGraph& g, const DensityNotion& notion, std::size_t k,
                     std::size_t l_m, std::uint64_t theta) {
    NdsBounds out;
    // exact closed sets with their gammas, via the oracle's world sweep
    auto worlds = enumerate_worlds(g, notion);
    TransactionDb db;
    for (const auto& w : worlds)
        if (!w.degenerate) db.add(w.maximal_densest, w.prob);
    auto closed = mine_all_closed(db, l_m);
    if (closed.empty()) return out;

    const std::size_t kk = std::min(k, closed.size());
    // worlds whose maximal densest subgraph contains some true top-k set
    double miss = 0.0;
    for (const auto& w : worlds) {
        if (w.degenerate) continue;
        bool in_g = false;
        for (std::size_t i = 0; i < kk && !in_g; ++i)
            in_g = closed[i].set.is_subset_of(w.maximal_densest);
        if (in_g) miss += std::pow(1.0 - w.prob, static_cast<double>(theta));
    }
    out.closure_bound = std::max(0.0, 1.0 - miss);

    const double gamma_k = closed[kk - 1].support;
    const double gamma_next = closed.size() > kk ? closed[kk].support : 0.0;
    const double mid = 0.5 * (gamma_k + gamma_next);
    double sep = 0.0;
    for (const auto& c : closed) {
        const double d = std::fabs(c.support - mid);
        sep += std::exp(-2.0 * d * d * static_cast<double>(theta));
    }
    out.return_bound = out.closure_bound * std::max(0.0, 1.0 - sep);
    return out;
}

}  // namespace udense
