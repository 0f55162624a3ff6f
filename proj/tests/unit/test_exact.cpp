#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "pivotcc/algorithms.hpp"
#include "pivotcc/exact.hpp"
#include "pivotcc/metrics.hpp"
#include "support/test_instances.hpp"

using namespace pivotcc;
using testsupport::mean;

namespace {

std::uint64_t bell_number(NodeId n) {
    std::uint64_t count = 0;
    detail::for_each_partition(n, [&](const auto&) {
        ++count;
        return true;
    });
    return count;
}

} // namespace

TEST_CASE("partition enumeration visits each partition once") {
    REQUIRE(bell_number(1) == 1);
    REQUIRE(bell_number(3) == 5);
    REQUIRE(bell_number(4) == 15);
    REQUIRE(bell_number(8) == 4140);
}

TEST_CASE("exact_opt on hand-checked fixtures") {
    SECTION("clique union: 0, with the latent partition among the argmins") {
        auto [inst, gt] = generate_clique_union({3, 4}, 1);
        auto result = exact_opt(inst);
        REQUIRE(result.opt_cost == 0);
        REQUIRE(cost(inst, result.argmin) == 0);
    }
    SECTION("single bad triangle: OPT = 1") {
        auto result = exact_opt(testsupport::bad_triangle());
        REQUIRE(result.opt_cost == 1);
        REQUIRE(cost(testsupport::bad_triangle(), result.argmin) == 1);
    }
    SECTION("positive 4-cycle: OPT = 2, first argmin is the single cluster") {
        auto inst = testsupport::positive_four_cycle();
        auto result = exact_opt(inst);
        REQUIRE(result.opt_cost == 2);
        // the all-zeros growth string (one big cluster) is enumerated first
        REQUIRE(result.argmin.clusters.size() == 1);
        REQUIRE(result.argmin.clusters[0] == std::vector<NodeId>{0, 1, 2, 3});
    }
    SECTION("capacity cap") {
        auto inst = testsupport::random_instance(14, 0.5, 0);
        REQUIRE_THROWS_AS(exact_opt(inst), capacity_error);
    }
}

TEST_CASE("exact_opt is invariant under node relabeling") {
    auto inst = testsupport::random_instance(8, 0.45, 17);
    // relabel nodes by the permutation v -> (3v + 1) mod 8 (coprime stride)
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < 8; ++u)
        for (NodeId v : inst.neighbors(u))
            if (u < v) edges.emplace_back((3 * u + 1) % 8, (3 * v + 1) % 8);
    auto relabeled = LabeledInstance::from_edges(8, std::move(edges));
    REQUIRE(exact_opt(inst).opt_cost == exact_opt(relabeled).opt_cost);
}

TEST_CASE("exact_opt lower-bounds every algorithm output") {
    for (Seed seed = 0; seed < 10; ++seed) {
        auto inst = testsupport::random_instance(8, 0.5, 100 + seed);
        auto opt = exact_opt(inst).opt_cost;
        QueryOracle oracle(inst);
        auto kwik = kwikcluster(oracle, seed);
        REQUIRE(cost(inst, kwik.clustering) >= opt);
    }
}

TEST_CASE("erm_cc basics") {
    SECTION("full-information sample on an OPT=0 instance is perfect") {
        auto [inst, gt] = generate_clique_union({3, 2, 2}, 6);
        for (Seed seed = 0; seed < 10; ++seed) {
            QueryOracle oracle(inst);
            // with-replacement coverage of all pairs is near-certain at Q = 40*C(n,2)
            auto clustering = erm_cc(oracle, 40 * pair_count(7), seed);
            REQUIRE(oracle.queries_issued() == 40 * pair_count(7));
            REQUIRE(cost(inst, clustering) == 0);
        }
    }
    SECTION("zero samples are rejected") {
        auto [inst, gt] = generate_clique_union({3, 2}, 0);
        QueryOracle oracle(inst);
        REQUIRE_THROWS_AS(erm_cc(oracle, 0, 1), parameter_error);
    }
    SECTION("capacity cap") {
        auto inst = testsupport::random_instance(14, 0.5, 0);
        QueryOracle oracle(inst);
        REQUIRE_THROWS_AS(erm_cc(oracle, 10, 1), capacity_error);
    }
}

TEST_CASE("erm_cc optimality gap decreases with the sample size") {
    // cliques [4,4] with one intra-pair flipped: OPT = 1
    auto [base, gt] = generate_clique_union({4, 4}, 3);
    std::vector<std::pair<NodeId, NodeId>> edges;
    bool dropped = false;
    for (NodeId u = 0; u < 8; ++u)
        for (NodeId v : base.neighbors(u))
            if (u < v) {
                if (!dropped) {
                    dropped = true;  // flip one intra-cluster pair to -1
                    continue;
                }
                edges.emplace_back(u, v);
            }
    auto inst = LabeledInstance::from_edges(8, std::move(edges));
    auto opt = exact_opt(inst).opt_cost;
    REQUIRE(opt == 1);

    auto mean_gap = [&](std::uint64_t samples) {
        std::vector<double> gaps;
        for (Seed seed = 0; seed < 500; ++seed) {
            QueryOracle oracle(inst);
            auto clustering = erm_cc(oracle, samples, seed);
            auto gap = cost(inst, clustering) - opt;
            gaps.push_back(static_cast<double>(gap));
        }
        return mean(gaps);
    };
    double small = mean_gap(pair_count(8));      // 28 samples
    double large = mean_gap(4 * pair_count(8));  // 112 samples
    REQUIRE(small >= 0.0);
    REQUIRE(large <= small + 1e-9);  // additive error shrinks with Q
}

TEST_CASE("vc shattering dimension is n-1") {
    REQUIRE(vc_shattering_check(3) == 2);
    REQUIRE(vc_shattering_check(4) == 3);
    REQUIRE(vc_shattering_check(5) == 4);
    REQUIRE_THROWS_AS(vc_shattering_check(2), parameter_error);
    REQUIRE_THROWS_AS(vc_shattering_check(7), capacity_error);
}
