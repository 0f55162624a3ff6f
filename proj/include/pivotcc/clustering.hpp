#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pivotcc/errors.hpp"
#include "pivotcc/instance.hpp"

namespace pivotcc {

/// A partition of nodes 0..n-1 into disjoint clusters. Cluster ids follow
/// creation order; members are kept sorted.
struct Clustering {
    std::vector<NodeId> cluster_of;
    std::vector<std::vector<NodeId>> clusters;

    NodeId num_nodes() const { return static_cast<NodeId>(cluster_of.size()); }

    static Clustering from_clusters(NodeId n, std::vector<std::vector<NodeId>> parts) {
        Clustering c;
        c.clusters = std::move(parts);
        c.cluster_of.assign(n, n);
        for (NodeId id = 0; id < c.clusters.size(); ++id) {
            auto& members = c.clusters[id];
            std::sort(members.begin(), members.end());
            for (NodeId v : members) {
                if (v >= n) throw parameter_error("cluster member out of range");
                if (c.cluster_of[v] != n) throw parameter_error("clusters are not disjoint");
                c.cluster_of[v] = id;
            }
        }
        for (NodeId v = 0; v < n; ++v)
            if (c.cluster_of[v] == n)
                throw parameter_error("node " + std::to_string(v) + " not covered");
        return c;
    }

    // Disjoint-cover check against an expected node count.
    void validate(NodeId n) const {
        if (cluster_of.size() != n) throw parameter_error("clustering covers wrong node count");
        std::vector<bool> seen(n, false);
        std::uint64_t total = 0;
        for (NodeId id = 0; id < clusters.size(); ++id)
            for (NodeId v : clusters[id]) {
                if (v >= n || cluster_of[v] != id || seen[v])
                    throw parameter_error("invalid partition");
                seen[v] = true;
                ++total;
            }
        if (total != n) throw parameter_error("partition does not cover all nodes");
    }

    bool operator==(const Clustering& other) const = default;
};

enum class StopReason {
    exhausted,     // residual set emptied
    round_cap,     // hit the round limit; leftovers emitted as singletons
    density_stop,  // residual pair count under the early-stopping threshold
    probe_stop,    // no positive label among the probe sample
};

inline const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::exhausted: return "exhausted";
        case StopReason::round_cap: return "round_cap";
        case StopReason::density_stop: return "density_stop";
        case StopReason::probe_stop: return "probe_stop";
    }
    return "?";
}

/// Per-round record of a pivot algorithm run. The pivot sample is recorded as
/// its size only.
struct RoundRecord {
    NodeId pivot;
    NodeId residual_size;   // |V_r| at the start of the round
    NodeId sample_size;     // pivot probes issued this round
    bool probe_failed;      // no positive label among the pivot probes
    NodeId cluster_size;

    bool operator==(const RoundRecord&) const = default;
};

struct RunTrace {
    std::vector<RoundRecord> rounds;
    std::uint64_t total_queries = 0;
    NodeId leftover_singletons = 0;  // nodes emitted as singletons at a stop
    StopReason stopped_by = StopReason::exhausted;

    bool operator==(const RunTrace&) const = default;
};

struct RunResult {
    Clustering clustering;
    RunTrace trace;
};

} // namespace pivotcc
