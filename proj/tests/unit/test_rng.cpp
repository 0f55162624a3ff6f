#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "pivotcc/rng.hpp"

using namespace pivotcc;

TEST_CASE("same seed replays the same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("below stays in range and hits every value") {
    Rng rng(7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        auto v = rng.below(5);
        REQUIRE(v < 5);
        seen.insert(v);
    }
    REQUIRE(seen.size() == 5);
    REQUIRE(rng.below(1) == 0);
}

TEST_CASE("shuffle_prefix yields a k-subset and keeps the multiset") {
    Rng rng(3);
    std::vector<int> items{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    auto sorted = items;
    rng.shuffle_prefix(items, 4);
    std::set<int> prefix(items.begin(), items.begin() + 4);
    REQUIRE(prefix.size() == 4);
    std::sort(items.begin(), items.end());
    REQUIRE(items == sorted);
}

TEST_CASE("derive_seed separates streams") {
    REQUIRE(derive_seed(1, kStreamRun, 0) != derive_seed(1, kStreamRun, 1));
    REQUIRE(derive_seed(1, kStreamRun) != derive_seed(1, kStreamPerturb));
    REQUIRE(derive_seed(1, kStreamRun, 5, 6) == derive_seed(1, kStreamRun, 5, 6));
}
