#pragma once

#include <cstdint>
#include <cstdio>
#include <vector>

#include "pivotcc/clustering.hpp"
#include "pivotcc/errors.hpp"
#include "pivotcc/instance.hpp"
#include "pivotcc/oracle.hpp"
#include "pivotcc/rng.hpp"

namespace pivotcc {

// Enumeration caps. Bell numbers explode quickly; these are the practical
// desk limits. Both can be overridden per call, with a warning on stderr.
constexpr NodeId kMaxExactNodes = 13;
constexpr NodeId kMaxVcNodes = 6;

namespace detail {

inline void warn_capacity_override(const char* what, NodeId n, NodeId cap) {
    std::fprintf(stderr,
                 "pivotcc: warning: %s running with n = %u above the default cap %u; "
                 "expect a long enumeration\n",
                 what, n, cap);
}

// Visits every partition of {0..n-1} as a restricted growth string, in
// lexicographic RGS order (the all-zeros string, i.e. one big cluster,
// comes first). Callback may return false to stop early.
template <typename Visit>
void for_each_partition(NodeId n, Visit&& visit) {
    if (n == 0) return;
    std::vector<NodeId> a(n, 0);
    std::vector<NodeId> b(n, 1);  // b[i] = 1 + max(a[0..i-1]); b[0] unused
    while (true) {
        if (!visit(static_cast<const std::vector<NodeId>&>(a))) return;
        NodeId j = n;
        for (NodeId i = n; i-- > 1;)
            if (a[i] < b[i]) {
                j = i;
                break;
            }
        if (j == n) return;
        ++a[j];
        for (NodeId i = j + 1; i < n; ++i) {
            b[i] = std::max(b[i - 1], static_cast<NodeId>(a[i - 1] + 1));
            a[i] = 0;
        }
    }
}

inline Clustering clustering_from_rgs(NodeId n, const std::vector<NodeId>& rgs) {
    NodeId k = 0;
    for (NodeId c : rgs) k = std::max(k, static_cast<NodeId>(c + 1));
    std::vector<std::vector<NodeId>> parts(k);
    for (NodeId v = 0; v < n; ++v) parts[rgs[v]].push_back(v);
    return Clustering::from_clusters(n, std::move(parts));
}

} // namespace detail

struct ExactResult {
    std::uint64_t opt_cost;
    Clustering argmin;  // first minimizer in RGS enumeration order
};

/**
 * Exact optimum by enumerating all set partitions of V in restricted
 * growth string order. The returned clustering is the lexicographically
 * first argmin in that order. Capped at n <= 13 by default.
 */
inline ExactResult exact_opt(const LabeledInstance& instance, NodeId max_nodes = kMaxExactNodes) {
    const NodeId n = instance.num_nodes();
    if (n > max_nodes)
        throw capacity_error("exact_opt: n = " + std::to_string(n) + " exceeds cap " +
                             std::to_string(max_nodes));
    if (max_nodes > kMaxExactNodes && n > kMaxExactNodes)
        detail::warn_capacity_override("exact_opt", n, kMaxExactNodes);
    if (n == 0) return {0, Clustering{}};

    std::vector<std::vector<bool>> pos(n, std::vector<bool>(n, false));
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : instance.neighbors(u)) pos[u][v] = true;

    std::uint64_t best = ~std::uint64_t{0};
    std::vector<NodeId> best_rgs;
    detail::for_each_partition(n, [&](const std::vector<NodeId>& a) {
        std::uint64_t mistakes = 0;
        for (NodeId u = 0; u + 1 < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                if ((a[u] == a[v]) != pos[u][v]) ++mistakes;
        if (mistakes < best) {
            best = mistakes;
            best_rgs = a;
        }
        return true;
    });
    return {best, detail::clustering_from_rgs(n, best_rgs)};
}

/**
 * ERM over the partition class: draws `samples` pairs uniformly at random
 * with replacement, queries each one (repeats are re-queried and re-counted),
 * and returns the partition with the fewest disagreements on the weighted
 * sample, ties toward the first partition in RGS order.
 */
inline Clustering erm_cc(QueryOracle& oracle, std::uint64_t samples, Seed seed,
                         NodeId max_nodes = kMaxExactNodes) {
    const NodeId n = oracle.instance().num_nodes();
    if (n > max_nodes)
        throw capacity_error("erm_cc: n = " + std::to_string(n) + " exceeds cap " +
                             std::to_string(max_nodes));
    if (max_nodes > kMaxExactNodes && n > kMaxExactNodes)
        detail::warn_capacity_override("erm_cc", n, kMaxExactNodes);
    if (samples < 1) throw parameter_error("erm_cc needs at least one sample");
    if (n < 2) throw parameter_error("erm_cc needs at least two nodes");

    const std::uint64_t all_pairs = pair_count(n);
    Rng rng(derive_seed(seed, kStreamErm));
    struct SampledPair {
        NodeId u, v;
        bool positive;
        std::uint64_t weight;
    };
    std::vector<std::vector<std::uint64_t>> weight(n, std::vector<std::uint64_t>(n, 0));
    std::vector<std::vector<bool>> label(n, std::vector<bool>(n, false));
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::uint64_t idx = rng.below(all_pairs);
        NodeId u = 0;
        std::uint64_t row = n - 1;
        while (idx >= row) {
            idx -= row;
            --row;
            ++u;
        }
        NodeId v = static_cast<NodeId>(u + 1 + idx);
        label[u][v] = oracle.query(u, v) > 0;  // consistent across repeats
        ++weight[u][v];
    }
    std::vector<SampledPair> sampled;
    for (NodeId u = 0; u + 1 < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (weight[u][v] > 0) sampled.push_back({u, v, label[u][v], weight[u][v]});

    std::uint64_t best = ~std::uint64_t{0};
    std::vector<NodeId> best_rgs;
    detail::for_each_partition(n, [&](const std::vector<NodeId>& a) {
        std::uint64_t mistakes = 0;
        for (const auto& p : sampled)
            if ((a[p.u] == a[p.v]) != p.positive) mistakes += p.weight;
        if (mistakes < best) {
            best = mistakes;
            best_rgs = a;
        }
        return true;
    });
    return detail::clustering_from_rgs(n, best_rgs);
}

/**
 * Brute-force shattering check over the class of partition-induced pair
 * labelings (+1 iff co-clustered). Returns the largest k such that some
 * k-subset of the C(n,2) pairs is shattered; the star around node 0 is a
 * spanning tree witnessing k = n-1, and no n-subset survives because any n
 * edges contain a cycle.
 */
inline NodeId vc_shattering_check(NodeId n, NodeId max_nodes = kMaxVcNodes) {
    if (n < 3) throw parameter_error("vc_shattering_check needs n >= 3");
    if (n > max_nodes)
        throw capacity_error("vc_shattering_check: n = " + std::to_string(n) +
                             " exceeds cap " + std::to_string(max_nodes));
    if (max_nodes > kMaxVcNodes && n > kMaxVcNodes)
        detail::warn_capacity_override("vc_shattering_check", n, kMaxVcNodes);

    const NodeId num_pairs = static_cast<NodeId>(pair_count(n));
    std::vector<std::uint32_t> masks;  // one co-clustering bitmask per partition
    detail::for_each_partition(n, [&](const std::vector<NodeId>& a) {
        std::uint32_t mask = 0;
        NodeId bit = 0;
        for (NodeId u = 0; u + 1 < n; ++u)
            for (NodeId v = u + 1; v < n; ++v, ++bit)
                if (a[u] == a[v]) mask |= std::uint32_t{1} << bit;
        masks.push_back(mask);
        return true;
    });

    auto shattered = [&](const std::vector<NodeId>& subset) {
        const NodeId k = static_cast<NodeId>(subset.size());
        std::vector<bool> seen(std::size_t{1} << k, false);
        std::uint32_t distinct = 0;
        for (std::uint32_t mask : masks) {
            std::uint32_t pattern = 0;
            for (NodeId j = 0; j < k; ++j)
                pattern |= ((mask >> subset[j]) & 1u) << j;
            if (!seen[pattern]) {
                seen[pattern] = true;
                if (++distinct == (std::uint32_t{1} << k)) return true;
            }
        }
        return false;
    };

    auto exists_shattered = [&](NodeId k) {
        std::vector<NodeId> subset(k);
        for (NodeId i = 0; i < k; ++i) subset[i] = i;
        while (true) {
            if (shattered(subset)) return true;
            // next k-combination of {0..num_pairs-1} in lex order
            NodeId i = k;
            while (i-- > 0)
                if (subset[i] != num_pairs - k + i) break;
            if (i >= k) return false;  // wrapped: i underflowed
            ++subset[i];
            for (NodeId j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
        }
    };

    // exists_shattered is monotone nonincreasing in k (subsets of a
    // shattered set are shattered), so the dimension is the largest k for
    // which it holds. Small k witnesses sit at the front of the combination
    // order (prefixes of the star around node 0), so the scan up is cheap
    // until the first failing k.
    NodeId k = 0;
    while (k < num_pairs && exists_shattered(k + 1)) ++k;
    return k;
}

} // namespace pivotcc
