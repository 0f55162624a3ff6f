#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <unordered_set>
#include <vector>

#include "pivotcc/clustering.hpp"
#include "pivotcc/errors.hpp"
#include "pivotcc/instance.hpp"

namespace pivotcc {

/**
 * Disagreement cost of a clustering: positive pairs split across clusters
 * plus negative pairs sharing a cluster. Computed from the positive edge
 * list in O(n + |E|) plus the cluster-size term, instead of scanning all
 * C(n,2) pairs; cost_reference below is the pair-scan used for differential
 * testing.
 */
inline std::uint64_t cost(const LabeledInstance& instance, const Clustering& clustering) {
    const NodeId n = instance.num_nodes();
    clustering.validate(n);
    std::uint64_t split_positives = 0;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : instance.neighbors(u))
            if (u < v && clustering.cluster_of[u] != clustering.cluster_of[v])
                ++split_positives;
    std::uint64_t co_clustered_pairs = 0;
    for (const auto& members : clustering.clusters)
        co_clustered_pairs += pair_count(members.size());
    std::uint64_t intra_positives = instance.positive_edge_count() - split_positives;
    return split_positives + (co_clustered_pairs - intra_positives);
}

inline std::uint64_t cost_reference(const LabeledInstance& instance,
                                    const Clustering& clustering) {
    const NodeId n = instance.num_nodes();
    clustering.validate(n);
    std::uint64_t mistakes = 0;
    for (NodeId u = 0; u + 1 < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) {
            bool together = clustering.cluster_of[u] == clustering.cluster_of[v];
            bool positive = instance.has_edge(u, v);
            if (together != positive) ++mistakes;
        }
    return mistakes;
}

struct BadTriangleStats {
    std::uint64_t total_bad_triangles;
    std::uint64_t packing_size;  // greedy maximal edge-disjoint packing; lower-bounds OPT
};

/**
 * Counts triples whose labels are {+,+,-} and greedily packs edge-disjoint
 * ones. Every bad triangle has a unique apex (the node on both positive
 * edges), so the scan enumerates each exactly once via the apex. The greedy
 * order is apex ascending, then the negative pair in lexicographic order,
 * which makes the packing deterministic.
 */
inline BadTriangleStats bad_triangle_stats(const LabeledInstance& instance,
                                           NodeId max_nodes = 2000) {
    const NodeId n = instance.num_nodes();
    if (n > max_nodes)
        throw capacity_error("bad_triangle_stats: n = " + std::to_string(n) +
                             " exceeds the scan cap of " + std::to_string(max_nodes));
    BadTriangleStats stats{0, 0};
    std::unordered_set<std::uint64_t> used;
    auto key = [n](NodeId a, NodeId b) {
        if (a > b) std::swap(a, b);
        return static_cast<std::uint64_t>(a) * n + b;
    };
    for (NodeId w = 0; w < n; ++w) {
        const auto& nbrs = instance.neighbors(w);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                NodeId u = nbrs[i], v = nbrs[j];
                if (instance.has_edge(u, v)) continue;
                ++stats.total_bad_triangles;
                if (!used.count(key(u, v)) && !used.count(key(u, w)) &&
                    !used.count(key(v, w))) {
                    used.insert(key(u, v));
                    used.insert(key(u, w));
                    used.insert(key(v, w));
                    ++stats.packing_size;
                }
            }
    }
    return stats;
}

struct KnitCertificate {
    double epsilon_star;  // smallest eps for which the set is (1-eps)-knit
    std::uint64_t internal_edges;
    std::uint64_t cut_edges;

    bool is_knit(double eps) const { return eps >= epsilon_star - 1e-12; }
};

// Smallest eps such that C has at least (1-eps) C(|C|,2) internal positive
// pairs and at most eps C(|C|,2) cut edges.
inline KnitCertificate knit_check(const LabeledInstance& instance,
                                  std::span<const NodeId> c) {
    if (c.size() < 2) throw parameter_error("knit_check needs |C| >= 2");
    std::vector<bool> in_c(instance.num_nodes(), false);
    for (NodeId v : c) {
        if (v >= instance.num_nodes() || in_c[v])
            throw parameter_error("C must be a set of in-range nodes");
        in_c[v] = true;
    }
    std::uint64_t internal_twice = 0, cut = 0;
    for (NodeId v : c)
        for (NodeId u : instance.neighbors(v))
            (in_c[u] ? internal_twice : cut) += 1;
    std::uint64_t internal = internal_twice / 2;
    double denom = static_cast<double>(pair_count(c.size()));
    double eps_internal = 1.0 - static_cast<double>(internal) / denom;
    double eps_cut = static_cast<double>(cut) / denom;
    return {std::max(eps_internal, eps_cut), internal, cut};
}

struct StrongKnitCertificate {
    bool neighborhoods_contained;  // N_v inside C for every member
    double epsilon_star;           // infinity when containment fails

    bool is_strongly_knit(double eps) const {
        return neighborhoods_contained && eps >= epsilon_star - 1e-12;
    }
};

// Strong variant: fails outright if any member has a neighbor outside C;
// otherwise eps* = 1 - min_v |N_v| / (|C|-1).
inline StrongKnitCertificate strongly_knit_check(const LabeledInstance& instance,
                                                 std::span<const NodeId> c) {
    if (c.size() < 2) throw parameter_error("strongly_knit_check needs |C| >= 2");
    std::vector<bool> in_c(instance.num_nodes(), false);
    for (NodeId v : c) {
        if (v >= instance.num_nodes() || in_c[v])
            throw parameter_error("C must be a set of in-range nodes");
        in_c[v] = true;
    }
    std::size_t min_degree = c.size();
    for (NodeId v : c) {
        const auto& nbrs = instance.neighbors(v);
        for (NodeId u : nbrs)
            if (!in_c[u])
                return {false, std::numeric_limits<double>::infinity()};
        min_degree = std::min(min_degree, nbrs.size());
    }
    double eps = 1.0 - static_cast<double>(min_degree) / static_cast<double>(c.size() - 1);
    return {true, eps};
}

struct RecoveryMatch {
    NodeId cluster_id;
    std::uint64_t distance;  // |C xor C_hat| for the best output cluster
};

/// Finds the output cluster minimizing symmetric difference with the latent
/// set C; ties go to the smaller cluster id. Distance 0 iff C appears
/// verbatim in the clustering.
inline RecoveryMatch recovery_distance(std::span<const NodeId> latent,
                                       const Clustering& clustering) {
    std::vector<bool> in_latent(clustering.num_nodes(), false);
    for (NodeId v : latent) in_latent[v] = true;
    RecoveryMatch best{0, std::numeric_limits<std::uint64_t>::max()};
    for (NodeId id = 0; id < clustering.clusters.size(); ++id) {
        const auto& members = clustering.clusters[id];
        std::uint64_t common = 0;
        for (NodeId v : members) common += in_latent[v];
        std::uint64_t dist = latent.size() + members.size() - 2 * common;
        if (dist < best.distance) best = {id, dist};
    }
    return best;
}

} // namespace pivotcc
