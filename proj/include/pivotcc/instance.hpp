#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pivotcc/errors.hpp"
#include "pivotcc/rng.hpp"

namespace pivotcc {

using NodeId = std::uint32_t;

inline std::uint64_t pair_count(std::uint64_t n) { return n * (n - 1) / 2; }

/**
 * A labeled instance (V, sigma): n nodes with a {-1,+1} similarity on every
 * unordered pair of distinct nodes. Only the positive pairs are stored, as a
 * sorted adjacency list per node; any pair not present is -1. Instances are
 * immutable after construction and safe to share across concurrent readers.
 *
 * Node ids are dense 0-based integers. For n up to kDenseLookupLimit a packed
 * bit matrix backs sigma() with an O(1) lookup; larger instances fall back to
 * binary search in the adjacency lists.
 */
class LabeledInstance {
public:
    static constexpr NodeId kDenseLookupLimit = 8192;

    LabeledInstance() = default;

    // Builds an instance from a positive-edge list. Validates node range,
    // rejects self-loops and duplicate edges; symmetry holds by construction.
    static LabeledInstance from_edges(NodeId n,
                                      std::vector<std::pair<NodeId, NodeId>> edges) {
        LabeledInstance inst;
        inst.n_ = n;
        inst.adj_.assign(n, {});
        for (auto& [u, v] : edges) {
            if (u == v) throw parameter_error("self-loop edge (" + std::to_string(u) + ")");
            if (u >= n || v >= n)
                throw parameter_error("edge endpoint out of range: " + std::to_string(u) +
                                      " " + std::to_string(v));
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw parameter_error("duplicate edge in edge list");
        for (const auto& [u, v] : edges) {
            inst.adj_[u].push_back(v);
            inst.adj_[v].push_back(u);
        }
        for (auto& nbrs : inst.adj_) std::sort(nbrs.begin(), nbrs.end());
        inst.edge_count_ = edges.size();
        inst.build_dense_();
        return inst;
    }

    NodeId num_nodes() const { return n_; }
    std::uint64_t positive_edge_count() const { return edge_count_; }

    const std::vector<NodeId>& neighbors(NodeId v) const { return adj_[v]; }

    bool has_edge(NodeId u, NodeId v) const {
        if (u == v) return false;
        if (!bits_.empty()) {
            std::uint64_t idx = static_cast<std::uint64_t>(u) * n_ + v;
            return (bits_[idx >> 6] >> (idx & 63)) & 1;
        }
        const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        NodeId other = adj_[u].size() <= adj_[v].size() ? v : u;
        return std::binary_search(a.begin(), a.end(), other);
    }

    // sigma(u,v) in {-1,+1}; u != v required.
    int sigma(NodeId u, NodeId v) const {
        if (u == v || u >= n_ || v >= n_)
            throw parameter_error("sigma requires two distinct in-range nodes");
        return has_edge(u, v) ? +1 : -1;
    }

    bool operator==(const LabeledInstance& other) const {
        return n_ == other.n_ && adj_ == other.adj_;
    }

private:
    void build_dense_() {
        bits_.clear();
        if (n_ == 0 || n_ > kDenseLookupLimit) return;
        std::uint64_t words = (static_cast<std::uint64_t>(n_) * n_ + 63) / 64;
        bits_.assign(words, 0);
        for (NodeId u = 0; u < n_; ++u)
            for (NodeId v : adj_[u]) {
                std::uint64_t idx = static_cast<std::uint64_t>(u) * n_ + v;
                bits_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
            }
    }

    NodeId n_ = 0;
    std::vector<std::vector<NodeId>> adj_;
    std::uint64_t edge_count_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Latent cluster id per node, for generated or ingested datasets whose
/// ground-truth partition is known.
struct GroundTruthPartition {
    std::vector<NodeId> cluster_of;

    NodeId cluster_count() const {
        NodeId k = 0;
        for (NodeId c : cluster_of) k = std::max(k, c + 1);
        return k;
    }

    std::vector<std::vector<NodeId>> clusters() const {
        std::vector<std::vector<NodeId>> out(cluster_count());
        for (NodeId v = 0; v < cluster_of.size(); ++v) out[cluster_of[v]].push_back(v);
        return out;
    }
};

/**
 * Union of disjoint cliques: the positive edges are exactly the intra-cluster
 * pairs, so the optimal clustering cost of the result is 0. Node membership is
 * a seeded random permutation, so cluster members are interleaved across the
 * id range rather than laid out in blocks.
 */
inline std::pair<LabeledInstance, GroundTruthPartition>
generate_clique_union(const std::vector<NodeId>& cluster_sizes, Seed seed) {
    if (cluster_sizes.empty()) throw parameter_error("cluster_sizes must be non-empty");
    for (NodeId s : cluster_sizes)
        if (s < 1) throw parameter_error("cluster sizes must be >= 1");
    NodeId n = std::accumulate(cluster_sizes.begin(), cluster_sizes.end(), NodeId{0});

    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    rng.shuffle_prefix(perm, n);

    GroundTruthPartition gt;
    gt.cluster_of.assign(n, 0);
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::size_t pos = 0;
    for (NodeId c = 0; c < cluster_sizes.size(); ++c) {
        std::size_t begin = pos;
        pos += cluster_sizes[c];
        for (std::size_t i = begin; i < pos; ++i) {
            gt.cluster_of[perm[i]] = c;
            for (std::size_t j = i + 1; j < pos; ++j)
                edges.emplace_back(perm[i], perm[j]);
        }
    }
    return {LabeledInstance::from_edges(n, std::move(edges)), std::move(gt)};
}

/**
 * Flips each unordered pair's label independently with probability
 * p = eta * |E| / C(n,2), where |E| is the input's positive-edge count.
 * The pass visits pairs in fixed (u < v) order with one Bernoulli draw each,
 * so a given (instance, eta, seed) always yields the same instance.
 */
inline LabeledInstance perturb(const LabeledInstance& instance, double eta, Seed seed) {
    if (eta < 0) throw parameter_error("eta must be nonnegative");
    NodeId n = instance.num_nodes();
    double pairs = static_cast<double>(pair_count(n));
    double p = pairs > 0 ? eta * static_cast<double>(instance.positive_edge_count()) / pairs
                         : 0.0;
    if (p > 1.0 + 1e-12)
        throw parameter_error("flip probability eta*|E|/C(n,2) exceeds 1");
    p = std::min(p, 1.0);

    Rng rng(seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u + 1 < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) {
            bool positive = instance.has_edge(u, v);
            if (rng.bernoulli(p)) positive = !positive;
            if (positive) edges.emplace_back(u, v);
        }
    return LabeledInstance::from_edges(n, std::move(edges));
}

/// Random clique partition: every node joins one of d cliques drawn uniformly
/// with replacement; positive edges are exactly the intra-clique pairs.
inline std::pair<LabeledInstance, GroundTruthPartition>
generate_lb_cliques(NodeId n, NodeId d, Seed seed) {
    if (n < 1) throw parameter_error("n must be >= 1");
    if (d < 2) throw parameter_error("d must be >= 2");
    Rng rng(seed);
    GroundTruthPartition gt;
    gt.cluster_of.resize(n);
    for (NodeId v = 0; v < n; ++v) gt.cluster_of[v] = static_cast<NodeId>(rng.below(d));

    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u + 1 < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (gt.cluster_of[u] == gt.cluster_of[v]) edges.emplace_back(u, v);
    return {LabeledInstance::from_edges(n, std::move(edges)), std::move(gt)};
}

/**
 * Planted two-sided construction. Side A (alpha*n nodes, ids 0..alpha*n-1) is
 * split into k = 1/epsilon equal cliques A_1..A_k; side B nodes are mutually
 * negative, and each B node is positively linked to every node of exactly one
 * uniformly chosen A_i. The returned partition is C_i = A_i u {v in B: i_v=i}.
 *
 * Requires 1/epsilon integral and alpha*n divisible by k; sizes are never
 * rounded.
 */
inline std::pair<LabeledInstance, GroundTruthPartition>
generate_lb_planted(NodeId n, double epsilon, double alpha, Seed seed) {
    if (n < 1) throw parameter_error("n must be >= 1");
    if (epsilon <= 0 || epsilon > 0.5) throw parameter_error("epsilon must be in (0, 0.5]");
    double k_real = 1.0 / epsilon;
    auto k = static_cast<NodeId>(std::llround(k_real));
    if (std::abs(k_real - static_cast<double>(k)) > 1e-9)
        throw parameter_error("1/epsilon must be an integer");
    if (alpha <= 0 || alpha >= 1) throw parameter_error("alpha must be in (0,1)");

    double a_real = alpha * static_cast<double>(n);
    auto a_count = static_cast<NodeId>(std::llround(a_real));
    if (std::abs(a_real - static_cast<double>(a_count)) > 1e-9)
        throw parameter_error("alpha*n must be an integer");
    if (a_count % k != 0)
        throw parameter_error("alpha*n = " + std::to_string(a_count) +
                              " is not divisible into k = " + std::to_string(k) +
                              " equal blocks");
    NodeId block = a_count / k;
    if (block < 1) throw parameter_error("A-side blocks would be empty");

    Rng rng(seed);
    GroundTruthPartition gt;
    gt.cluster_of.resize(n);
    for (NodeId v = 0; v < a_count; ++v) gt.cluster_of[v] = v / block;
    for (NodeId v = a_count; v < n; ++v) gt.cluster_of[v] = static_cast<NodeId>(rng.below(k));

    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < k; ++i) {
        NodeId lo = i * block, hi = lo + block;
        for (NodeId u = lo; u < hi; ++u)
            for (NodeId v = u + 1; v < hi; ++v) edges.emplace_back(u, v);
    }
    for (NodeId v = a_count; v < n; ++v) {
        NodeId i = gt.cluster_of[v];
        for (NodeId u = i * block; u < (i + 1) * block; ++u) edges.emplace_back(u, v);
    }
    return {LabeledInstance::from_edges(n, std::move(edges)), std::move(gt)};
}

// --------------------------------------------------------------------------
// Instance files. Text format, byte-exact on save:
//   n <count>
//   u v          one line per positive edge, 0-based, u < v, sorted
// Lines starting with '#' are ignored on load.
// --------------------------------------------------------------------------

enum class InstanceFormat { edge_list };

inline InstanceFormat parse_instance_format(const std::string& name) {
    if (name == "edges" || name == "edge_list") return InstanceFormat::edge_list;
    throw parameter_error("unknown instance format: " + name);
}

inline void save_instance(const LabeledInstance& instance, const std::string& path,
                          InstanceFormat = InstanceFormat::edge_list) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << "n " << instance.num_nodes() << "\n";
    for (NodeId u = 0; u < instance.num_nodes(); ++u)
        for (NodeId v : instance.neighbors(u))
            if (u < v) out << u << " " << v << "\n";
    if (!out) throw io_error("write failed: " + path);
}

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& path, std::size_t line,
                                    const std::string& msg) {
    throw io_error(path + ":" + std::to_string(line) + ": " + msg);
}

} // namespace detail

inline LabeledInstance load_instance(const std::string& path,
                                     InstanceFormat = InstanceFormat::edge_list) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::uint64_t n = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        if (!have_header) {
            std::string tag;
            if (!(fields >> tag >> n) || tag != "n")
                detail::parse_fail(path, lineno, "expected header 'n <count>'");
            std::string rest;
            if (fields >> rest) detail::parse_fail(path, lineno, "trailing tokens in header");
            have_header = true;
            continue;
        }
        std::int64_t u, v;
        if (!(fields >> u >> v)) detail::parse_fail(path, lineno, "expected 'u v' edge line");
        std::string rest;
        if (fields >> rest) detail::parse_fail(path, lineno, "trailing tokens in edge line");
        if (u < 0 || v < 0 || static_cast<std::uint64_t>(u) >= n ||
            static_cast<std::uint64_t>(v) >= n)
            detail::parse_fail(path, lineno, "edge endpoint out of range");
        if (u == v) detail::parse_fail(path, lineno, "self-loop rejected");
        if (u > v)
            detail::parse_fail(path, lineno,
                               "edges must be listed once with u < v (symmetry is implicit)");
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    if (!have_header) detail::parse_fail(path, lineno, "missing 'n <count>' header");
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
        throw io_error(path + ": duplicate edge " + std::to_string(dup->first) + " " +
                       std::to_string(dup->second));
    return LabeledInstance::from_edges(static_cast<NodeId>(n), std::move(edges));
}

// Ground-truth file: one line per node, `node cluster_id`.
inline void save_ground_truth(const GroundTruthPartition& gt, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    for (NodeId v = 0; v < gt.cluster_of.size(); ++v)
        out << v << " " << gt.cluster_of[v] << "\n";
    if (!out) throw io_error("write failed: " + path);
}

inline GroundTruthPartition load_ground_truth(const std::string& path, NodeId n) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    GroundTruthPartition gt;
    gt.cluster_of.assign(n, 0);
    std::vector<bool> seen(n, false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::int64_t v, c;
        if (!(fields >> v >> c) || v < 0 || c < 0)
            detail::parse_fail(path, lineno, "expected 'node cluster_id'");
        if (static_cast<std::uint64_t>(v) >= n)
            detail::parse_fail(path, lineno, "node out of range");
        if (seen[static_cast<NodeId>(v)]) detail::parse_fail(path, lineno, "node listed twice");
        seen[static_cast<NodeId>(v)] = true;
        gt.cluster_of[static_cast<NodeId>(v)] = static_cast<NodeId>(c);
    }
    for (NodeId v = 0; v < n; ++v)
        if (!seen[v]) throw io_error(path + ": node " + std::to_string(v) + " has no cluster");
    // compact cluster ids to 0..k-1 preserving first-seen order
    std::vector<NodeId> remap;
    std::vector<NodeId> compact(gt.cluster_of.size());
    for (NodeId v = 0; v < gt.cluster_of.size(); ++v) {
        NodeId c = gt.cluster_of[v];
        auto it = std::find(remap.begin(), remap.end(), c);
        if (it == remap.end()) {
            remap.push_back(c);
            compact[v] = static_cast<NodeId>(remap.size() - 1);
        } else {
            compact[v] = static_cast<NodeId>(it - remap.begin());
        }
    }
    gt.cluster_of = std::move(compact);
    return gt;
}

} // namespace pivotcc
