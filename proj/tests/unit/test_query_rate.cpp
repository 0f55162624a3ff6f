#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pivotcc/query_rate.hpp"

using namespace pivotcc;

TEST_CASE("power laws are valid query rate functions") {
    for (double alpha : {0.0, 0.3, 0.5, 0.7, 1.0}) {
        auto f = QueryRateFunction::power_law(alpha);
        REQUIRE_NOTHROW(f.validate(2000));
    }
    REQUIRE_NOTHROW(QueryRateFunction::identity().validate(2000));
    REQUIRE_THROWS_AS(QueryRateFunction::power_law(1.5), parameter_error);
    REQUIRE_THROWS_AS(QueryRateFunction::power_law(-0.1), parameter_error);
}

TEST_CASE("validate rejects functions outside the definition") {
    QueryRateFunction too_fast([](std::uint64_t m) { return static_cast<double>(m) * m; },
                               "x^2");
    REQUIRE_THROWS_AS(too_fast.validate(10), parameter_error);

    QueryRateFunction wrong_start([](std::uint64_t) { return 2.0; }, "2");
    REQUIRE_THROWS_AS(wrong_start.validate(10), parameter_error);

    QueryRateFunction decreasing([](std::uint64_t m) { return 1.0 / static_cast<double>(m); },
                                 "1/x");
    REQUIRE_THROWS_AS(decreasing.validate(10), parameter_error);
}

TEST_CASE("sample_count is ceil(f(m)) clamped to [1, m]") {
    auto half = QueryRateFunction::power_law(0.5);
    REQUIRE(half.sample_count(1) == 1);
    REQUIRE(half.sample_count(4) == 2);
    REQUIRE(half.sample_count(5) == 3);  // ceil(sqrt(5))
    auto id = QueryRateFunction::identity();
    for (std::uint64_t m : {1ull, 2ull, 17ull, 899ull}) REQUIRE(id.sample_count(m) == m);
    auto flat = QueryRateFunction::power_law(0.0);
    REQUIRE(flat.sample_count(1000) == 1);
}
