#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pivotcc/clustering.hpp"
#include "pivotcc/oracle.hpp"
#include "pivotcc/query_rate.hpp"
#include "pivotcc/rng.hpp"

namespace pivotcc {

namespace detail {

// One pivot round shared by the pivot algorithms. alive is consumed: the
// pivot is swapped to the back, the rest partially shuffled so that the
// first `probes` entries form the query sample. Returns the formed cluster
// (sorted) and rewrites alive to the surviving nodes, preserving their
// post-shuffle order.
inline std::vector<NodeId> pivot_round(std::vector<NodeId>& alive, QueryOracle& oracle,
                                       std::uint64_t probes, Rng& rng, RoundRecord& record) {
    const std::size_t m = alive.size();
    assert(m >= 2 && probes >= 1 && probes <= m - 1);

    std::size_t pivot_idx = static_cast<std::size_t>(rng.below(m));
    std::swap(alive[pivot_idx], alive[m - 1]);
    NodeId pivot = alive[m - 1];
    alive.pop_back();
    rng.shuffle_prefix(alive, static_cast<std::size_t>(probes));

    record.pivot = pivot;
    record.residual_size = static_cast<NodeId>(m);
    record.sample_size = static_cast<NodeId>(probes);

    std::vector<char> positive(alive.size(), 0);
    bool found = false;
    for (std::size_t i = 0; i < probes; ++i) {
        positive[i] = oracle.query(pivot, alive[i]) > 0;
        found |= positive[i] != 0;
    }

    std::vector<NodeId> cluster{pivot};
    if (found) {
        for (std::size_t i = probes; i < alive.size(); ++i)
            positive[i] = oracle.query(pivot, alive[i]) > 0;
        std::vector<NodeId> survivors;
        survivors.reserve(alive.size());
        for (std::size_t i = 0; i < alive.size(); ++i)
            (positive[i] ? cluster : survivors).push_back(alive[i]);
        alive = std::move(survivors);
    }
    record.probe_failed = !found;
    record.cluster_size = static_cast<NodeId>(cluster.size());
    std::sort(cluster.begin(), cluster.end());
    return cluster;
}

inline std::vector<NodeId> all_nodes(NodeId n) {
    std::vector<NodeId> v(n);
    for (NodeId i = 0; i < n; ++i) v[i] = i;
    return v;
}

inline RunResult finish(NodeId n, std::vector<std::vector<NodeId>> clusters, RunTrace trace) {
    RunResult result{Clustering::from_clusters(n, std::move(clusters)), std::move(trace)};
    return result;
}

} // namespace detail

/**
 * KwikCluster: draw a random pivot, query its similarity to every remaining
 * node, cluster it with its positive neighbors, recurse on the rest. Uses at
 * most n^2 queries and needs no query rate function.
 */
inline RunResult kwikcluster(QueryOracle& oracle, Seed seed) {
    const NodeId n = oracle.instance().num_nodes();
    const std::uint64_t start_queries = oracle.queries_issued();
    Rng rng(seed);
    std::vector<NodeId> alive = detail::all_nodes(n);
    std::vector<std::vector<NodeId>> clusters;
    RunTrace trace;
    while (true) {
        if (alive.empty()) break;
        if (alive.size() == 1) {
            clusters.push_back({alive[0]});
            break;
        }
        RoundRecord rec{};
        clusters.push_back(detail::pivot_round(alive, oracle, alive.size() - 1, rng, rec));
        trace.rounds.push_back(rec);
    }
    trace.stopped_by = StopReason::exhausted;
    trace.total_queries = oracle.queries_issued() - start_queries;
    return detail::finish(n, std::move(clusters), std::move(trace));
}

/**
 * Budgeted pivot clustering with query rate f. Each round probes the pivot
 * against ceil(f(|V_r|-1)) sampled nodes (without replacement) and commits to
 * a full scan only if a positive label shows up; otherwise the pivot becomes
 * a singleton. The recursion stops after ceil(f(n-1)) rounds, emitting the
 * remaining nodes as singleton clusters. Total queries never exceed
 * n * ceil(f(n)).
 */
inline RunResult acc(QueryOracle& oracle, const QueryRateFunction& f, Seed seed) {
    const NodeId n = oracle.instance().num_nodes();
    const std::uint64_t start_queries = oracle.queries_issued();
    f.validate(n > 0 ? n : 1);
    Rng rng(seed);
    std::vector<NodeId> alive = detail::all_nodes(n);
    std::vector<std::vector<NodeId>> clusters;
    RunTrace trace;
    trace.stopped_by = StopReason::exhausted;
    const std::uint64_t round_cap = n >= 2 ? f.sample_count(n - 1) : 0;
    for (std::uint64_t r = 1;; ++r) {
        if (alive.empty()) break;
        if (alive.size() == 1) {
            clusters.push_back({alive[0]});
            break;
        }
        if (r > round_cap) {
            for (NodeId v : alive) clusters.push_back({v});
            trace.leftover_singletons = static_cast<NodeId>(alive.size());
            trace.stopped_by = StopReason::round_cap;
            break;
        }
        RoundRecord rec{};
        std::uint64_t probes = f.sample_count(alive.size() - 1);
        clusters.push_back(detail::pivot_round(alive, oracle, probes, rng, rec));
        trace.rounds.push_back(rec);
    }
    trace.total_queries = oracle.queries_issued() - start_queries;
    assert(trace.total_queries <= static_cast<std::uint64_t>(n) * (n > 0 ? f.sample_count(n) : 0));
    return detail::finish(n, std::move(clusters), std::move(trace));
}

/**
 * ACC with early stopping. Before each pivot round the residual density is
 * tested: if the residual pair count is at most 2n^2/f(n) the run stops with
 * all remaining nodes as singletons; otherwise ceil(C(|V_r|,2) f(n)/n^2)
 * pairs are probed uniformly at random (with replacement, counted against
 * the query total), and the run also stops if none of them is positive.
 * There is no round cap.
 */
inline RunResult access(QueryOracle& oracle, const QueryRateFunction& f, Seed seed) {
    const NodeId n = oracle.instance().num_nodes();
    const std::uint64_t start_queries = oracle.queries_issued();
    f.validate(n > 0 ? n : 1);
    Rng rng(seed);
    std::vector<NodeId> alive = detail::all_nodes(n);
    std::vector<std::vector<NodeId>> clusters;
    RunTrace trace;
    trace.stopped_by = StopReason::exhausted;
    if (n > 0) {
        const double f_n = f(n);
        const double n_sq = static_cast<double>(n) * static_cast<double>(n);
        const double density_threshold = 2.0 * n_sq / f_n;
        while (true) {
            const std::size_t m = alive.size();
            const double residual_pairs = static_cast<double>(pair_count(m));
            if (residual_pairs <= density_threshold) {
                for (NodeId v : alive) clusters.push_back({v});
                trace.leftover_singletons = static_cast<NodeId>(m);
                trace.stopped_by = StopReason::density_stop;
                break;
            }
            auto probe_pairs =
                static_cast<std::uint64_t>(std::ceil(residual_pairs * f_n / n_sq));
            bool found = false;
            for (std::uint64_t t = 0; t < probe_pairs; ++t) {
                std::size_t i = static_cast<std::size_t>(rng.below(m));
                std::size_t j = static_cast<std::size_t>(rng.below(m - 1));
                if (j >= i) ++j;
                found |= oracle.query(alive[i], alive[j]) > 0;
            }
            if (!found) {
                for (NodeId v : alive) clusters.push_back({v});
                trace.leftover_singletons = static_cast<NodeId>(m);
                trace.stopped_by = StopReason::probe_stop;
                break;
            }
            RoundRecord rec{};
            std::uint64_t probes = f.sample_count(m - 1);
            clusters.push_back(detail::pivot_round(alive, oracle, probes, rng, rec));
            trace.rounds.push_back(rec);
        }
    }
    trace.total_queries = oracle.queries_issued() - start_queries;
    return detail::finish(n, std::move(clusters), std::move(trace));
}

struct AcrResult {
    Clustering clustering;
    std::uint64_t total_queries = 0;
};

/// Default amplification run count, 48 * ceil(ln(n/p)).
inline std::uint32_t acr_default_runs(NodeId n, double p = 0.1) {
    if (n == 0 || p <= 0 || p >= 1) throw parameter_error("acr_default_runs: need n >= 1, p in (0,1)");
    return static_cast<std::uint32_t>(
        48 * std::ceil(std::log(static_cast<double>(n) / p)));
}

/**
 * Amplified cluster recovery: runs ACC independently `runs` times, tags every
 * node of each output cluster with the cluster's smallest node id, and gives
 * each node its most frequent tag across runs (ties toward the smaller tag).
 * Nodes sharing a final tag form the output clusters. Each run draws its own
 * child seed and owns a fresh oracle; query totals are summed over runs.
 */
inline AcrResult acr(const LabeledInstance& instance, const QueryRateFunction& f,
                     std::uint32_t runs, Seed seed) {
    if (runs < 1) throw parameter_error("acr needs at least one run");
    const NodeId n = instance.num_nodes();
    AcrResult result;
    std::vector<std::vector<NodeId>> tags(n);
    for (auto& t : tags) t.reserve(runs);
    for (std::uint32_t k = 0; k < runs; ++k) {
        QueryOracle oracle(instance);
        RunResult run = acc(oracle, f, derive_seed(seed, kStreamAcrRun, k));
        result.total_queries += oracle.queries_issued();
        for (const auto& cluster : run.clustering.clusters) {
            NodeId tag = cluster.front();  // members are sorted: min-tagging
            for (NodeId v : cluster) tags[v].push_back(tag);
        }
    }

    std::vector<NodeId> final_tag(n);
    for (NodeId v = 0; v < n; ++v) {
        auto& t = tags[v];
        std::sort(t.begin(), t.end());
        NodeId best = t.front();
        std::size_t best_count = 0;
        for (std::size_t i = 0; i < t.size();) {
            std::size_t j = i;
            while (j < t.size() && t[j] == t[i]) ++j;
            if (j - i > best_count) {
                best_count = j - i;
                best = t[i];
            }
            i = j;
        }
        final_tag[v] = best;
    }

    std::vector<NodeId> distinct = final_tag;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::vector<NodeId>> clusters(distinct.size());
    for (NodeId v = 0; v < n; ++v) {
        auto it = std::lower_bound(distinct.begin(), distinct.end(), final_tag[v]);
        clusters[static_cast<std::size_t>(it - distinct.begin())].push_back(v);
    }
    result.clustering = Clustering::from_clusters(n, std::move(clusters));
    return result;
}

} // namespace pivotcc
