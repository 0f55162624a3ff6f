#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "pivotcc/errors.hpp"
#include "pivotcc/instance.hpp"

namespace pivotcc {

/**
 * Mediates all similarity access for one algorithm run: answers sigma(u,v)
 * from the wrapped instance, counts every issued query, and optionally
 * enforces a hard budget. Answers are persistent and consistent because the
 * instance is immutable.
 *
 * Repeated queries of the same pair are counted again; see MemoizingOracle
 * for the opt-in deduplicating wrapper.
 */
class QueryOracle {
public:
    struct Snapshot {
        std::uint64_t queries_issued;
        std::optional<std::uint64_t> budget_remaining;
    };

    explicit QueryOracle(const LabeledInstance& instance,
                         std::optional<std::uint64_t> budget = std::nullopt)
        : instance_(&instance), budget_(budget) {}

    int query(NodeId u, NodeId v) {
        if (u == v || u >= instance_->num_nodes() || v >= instance_->num_nodes())
            throw parameter_error("query requires two distinct in-range nodes");
        if (budget_ && queries_ >= *budget_)
            throw budget_error("query budget of " + std::to_string(*budget_) + " exhausted");
        ++queries_;
        return instance_->has_edge(u, v) ? +1 : -1;
    }

    Snapshot snapshot() const {
        Snapshot s{queries_, std::nullopt};
        if (budget_) s.budget_remaining = *budget_ - queries_;
        return s;
    }

    std::uint64_t queries_issued() const { return queries_; }
    const LabeledInstance& instance() const { return *instance_; }

private:
    const LabeledInstance* instance_;
    std::uint64_t queries_ = 0;
    std::optional<std::uint64_t> budget_;
};

/// Caches answers so a repeated pair is served without touching the inner
/// oracle or its counter. Off by default everywhere; the pivot algorithms
/// never re-query a pair within a run, and amplification runs are charged
/// independently on purpose.
class MemoizingOracle {
public:
    explicit MemoizingOracle(QueryOracle& inner) : inner_(&inner) {}

    int query(NodeId u, NodeId v) {
        if (u > v) std::swap(u, v);
        std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        int label = inner_->query(u, v);
        cache_.emplace(key, label);
        return label;
    }

    std::uint64_t queries_issued() const { return inner_->queries_issued(); }

private:
    QueryOracle* inner_;
    std::unordered_map<std::uint64_t, int> cache_;
};

} // namespace pivotcc
