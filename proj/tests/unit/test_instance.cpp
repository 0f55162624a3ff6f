#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pivotcc/bench.hpp"
#include "pivotcc/exact.hpp"
#include "pivotcc/instance.hpp"
#include "pivotcc/metrics.hpp"
#include "support/test_instances.hpp"

using namespace pivotcc;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};

Clustering latent_clustering(const GroundTruthPartition& gt) {
    return Clustering::from_clusters(static_cast<NodeId>(gt.cluster_of.size()),
                                     gt.clusters());
}

} // namespace

TEST_CASE("from_edges validates and symmetrizes") {
    auto inst = LabeledInstance::from_edges(4, {{2, 0}, {1, 3}});
    REQUIRE(inst.sigma(0, 2) == +1);
    REQUIRE(inst.sigma(2, 0) == +1);
    REQUIRE(inst.sigma(0, 1) == -1);
    REQUIRE(inst.positive_edge_count() == 2);
    REQUIRE_THROWS_AS(LabeledInstance::from_edges(3, {{1, 1}}), parameter_error);
    REQUIRE_THROWS_AS(LabeledInstance::from_edges(3, {{0, 3}}), parameter_error);
    REQUIRE_THROWS_AS(LabeledInstance::from_edges(3, {{0, 1}, {1, 0}}), parameter_error);
}

TEST_CASE("clique union basics") {
    SECTION("single clique of 3 is a positive triangle") {
        auto [inst, gt] = generate_clique_union({3}, 11);
        REQUIRE(inst.num_nodes() == 3);
        REQUIRE(inst.positive_edge_count() == 3);
        for (NodeId u = 0; u < 3; ++u)
            for (NodeId v = u + 1; v < 3; ++v) REQUIRE(inst.sigma(u, v) == +1);
        REQUIRE(gt.cluster_count() == 1);
    }
    SECTION("all singletons means no positive edges") {
        auto [inst, gt] = generate_clique_union({1, 1, 1}, 5);
        REQUIRE(inst.num_nodes() == 3);
        REQUIRE(inst.positive_edge_count() == 0);
        REQUIRE(gt.cluster_count() == 3);
    }
    SECTION("sizes [2,3]: exact optimum of the result is 0") {
        auto [inst, gt] = generate_clique_union({2, 3}, 99);
        auto exact = exact_opt(inst);
        REQUIRE(exact.opt_cost == 0);
        REQUIRE(cost(inst, latent_clustering(gt)) == 0);
    }
    SECTION("latent partition always has cost 0") {
        auto [inst, gt] = generate_clique_union({4, 1, 7, 2}, 123);
        REQUIRE(cost(inst, latent_clustering(gt)) == 0);
    }
    REQUIRE_THROWS_AS(generate_clique_union({}, 0), parameter_error);
    REQUIRE_THROWS_AS(generate_clique_union({3, 0}, 0), parameter_error);
}

TEST_CASE("perturb with eta = 0 is the identity") {
    auto [inst, gt] = generate_clique_union({5, 5}, 3);
    auto out = perturb(inst, 0.0, 999);
    REQUIRE(out == inst);
}

TEST_CASE("perturb with flip probability 1 yields the complement") {
    auto [inst, gt] = generate_clique_union({3, 2}, 17);
    // eta = C(n,2)/|E| forces p = 1
    double eta = static_cast<double>(pair_count(inst.num_nodes())) /
                 static_cast<double>(inst.positive_edge_count());
    auto out = perturb(inst, eta, 4);
    for (NodeId u = 0; u < inst.num_nodes(); ++u)
        for (NodeId v = u + 1; v < inst.num_nodes(); ++v)
            REQUIRE(out.sigma(u, v) == -inst.sigma(u, v));
    REQUIRE_THROWS_AS(perturb(inst, eta * 1.01, 4), parameter_error);
}

TEST_CASE("perturb flip fraction concentrates around p") {
    auto [inst, gt] = generate_clique_union({5, 5}, 21);
    const double eta = 0.5;
    const double p = eta * static_cast<double>(inst.positive_edge_count()) /
                     static_cast<double>(pair_count(inst.num_nodes()));
    const int trials = 223;  // 223 * 45 pairs > 10000 pair draws
    std::uint64_t pair_draws = 0, flips = 0;
    for (int t = 0; t < trials; ++t) {
        auto out = perturb(inst, eta, 1000 + t);
        for (NodeId u = 0; u < inst.num_nodes(); ++u)
            for (NodeId v = u + 1; v < inst.num_nodes(); ++v) {
                ++pair_draws;
                flips += out.sigma(u, v) != inst.sigma(u, v);
            }
    }
    double expected = static_cast<double>(pair_draws) * p;
    double sigma = std::sqrt(static_cast<double>(pair_draws) * p * (1 - p));
    REQUIRE(std::abs(static_cast<double>(flips) - expected) <= 3 * sigma);
}

TEST_CASE("lb-cliques generator") {
    REQUIRE_THROWS_AS(generate_lb_cliques(6, 1, 0), parameter_error);
    SECTION("clique sizes concentrate around n/d") {
        auto [inst, gt] = generate_lb_cliques(1000, 10, 77);
        std::vector<std::uint64_t> counts(10, 0);
        for (NodeId c : gt.cluster_of) ++counts[c];
        double sigma = std::sqrt(1000 * 0.1 * 0.9);
        for (auto c : counts)
            REQUIRE(std::abs(static_cast<double>(c) - 100.0) <= 3 * sigma);
        REQUIRE(cost(inst, latent_clustering(gt)) == 0);
    }
}

TEST_CASE("lb-planted generator") {
    SECTION("n=20, eps=1/2, alpha=0.9 is accepted with blocks of 9") {
        auto [inst, gt] = generate_lb_planted(20, 0.5, 0.9, 1);
        std::vector<int> block_size(2, 0);
        for (NodeId v = 0; v < 18; ++v) ++block_size[gt.cluster_of[v]];
        REQUIRE(block_size[0] == 9);
        REQUIRE(block_size[1] == 9);
        // every B node has exactly alpha*n*eps = 9 positive edges, all into A
        for (NodeId v = 18; v < 20; ++v) {
            REQUIRE(inst.neighbors(v).size() == 9);
            for (NodeId u : inst.neighbors(v)) REQUIRE(u < 18);
        }
    }
    SECTION("divisibility violations are rejected") {
        REQUIRE_THROWS_AS(generate_lb_planted(21, 0.5, 0.9, 1), parameter_error);  // alpha*n = 18.9
        REQUIRE_THROWS_AS(generate_lb_planted(20, 0.25, 0.9, 1), parameter_error);  // 18 % 4 != 0
        REQUIRE_THROWS_AS(generate_lb_planted(20, 0.4123, 0.9, 1), parameter_error);  // 1/eps not integral
        REQUIRE_NOTHROW(generate_lb_planted(20, 1.0 / 3.0, 0.9, 1));  // 18 % 3 == 0
    }
    SECTION("cost of the planted partition is the same-block B pair count") {
        const NodeId n = 100;
        const double eps = 0.5, alpha = 0.9;
        const NodeId k = 2, a_count = 90;
        std::vector<double> costs;
        for (Seed seed = 0; seed < 200; ++seed) {
            auto [inst, gt] = generate_lb_planted(n, eps, alpha, seed);
            std::uint64_t same_pairs = 0;
            for (NodeId u = a_count; u < n; ++u)
                for (NodeId v = u + 1; v < n; ++v)
                    same_pairs += gt.cluster_of[u] == gt.cluster_of[v];
            auto c = cost(inst, latent_clustering(gt));
            REQUIRE(c == same_pairs);
            costs.push_back(static_cast<double>(c));
        }
        // mean matches C(|B|,2)/k and stays under the (1-alpha)^2 n^2 / k bound
        double expected = static_cast<double>(pair_count(n - a_count)) / k;
        double bound = (1 - alpha) * (1 - alpha) * n * n / k;
        REQUIRE(std::abs(testsupport::mean(costs) - expected) <=
                3 * testsupport::standard_error(costs) + 1e-9);
        REQUIRE(testsupport::mean(costs) < bound);
    }
}

TEST_CASE("instance files round-trip and reject malformed input") {
    TempFile file("pivotcc_inst_test.txt");
    SECTION("save/load round trip") {
        auto [inst, gt] = generate_clique_union({4, 3, 1}, 5);
        save_instance(inst, file.path);
        auto loaded = load_instance(file.path);
        REQUIRE(loaded == inst);
        // save(load(x)) is byte-identical to save(x)
        TempFile second("pivotcc_inst_test2.txt");
        save_instance(loaded, second.path);
        std::ifstream a(file.path), b(second.path);
        std::string sa((std::istreambuf_iterator<char>(a)), {});
        std::string sb((std::istreambuf_iterator<char>(b)), {});
        REQUIRE(sa == sb);
    }
    SECTION("self-loop line is rejected with its line number") {
        std::ofstream out(file.path);
        out << "n 5\n0 1\n3 3\n";
        out.close();
        REQUIRE_THROWS_WITH(load_instance(file.path),
                            Catch::Matchers::ContainsSubstring(":3:") &&
                                Catch::Matchers::ContainsSubstring("self-loop"));
    }
    SECTION("reversed duplicate declaration is rejected") {
        std::ofstream out(file.path);
        out << "n 4\n1 2\n2 1\n";
        out.close();
        REQUIRE_THROWS_AS(load_instance(file.path), io_error);
    }
    SECTION("comments and missing header") {
        std::ofstream out(file.path);
        out << "# comment only\n";
        out.close();
        REQUIRE_THROWS_AS(load_instance(file.path), io_error);
    }
}

TEST_CASE("ground-truth file for a skew-like dataset parses to 900 nodes, 30 clusters") {
    TempFile file("pivotcc_gt_test.txt");
    auto [inst, gt] = pivotcc::make_skew_instance();
    save_ground_truth(gt, file.path);
    auto loaded = load_ground_truth(file.path, 900);
    REQUIRE(loaded.cluster_of.size() == 900);
    REQUIRE(loaded.cluster_count() == 30);
    REQUIRE(loaded.cluster_of == gt.cluster_of);
}
