#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

#include "pivotcc/errors.hpp"

namespace pivotcc {

/**
 * A query rate function f: it must satisfy f(1) = 1 and
 * f(m) <= f(m+1) <= (1 + 1/m) f(m), which together imply 1 <= f(m) <= m and
 * that f(m)/m is nonincreasing. validate(n) certifies those conditions on
 * the finite range 1..n; the pivot algorithms call it before running.
 */
class QueryRateFunction {
public:
    QueryRateFunction(std::function<double(std::uint64_t)> fn, std::string tag)
        : fn_(std::move(fn)), tag_(std::move(tag)) {}

    double operator()(std::uint64_t m) const { return fn_(m); }
    const std::string& tag() const { return tag_; }

    // ceil(f(m)) clamped to [1, m]; the per-round sample size.
    std::uint64_t sample_count(std::uint64_t m) const {
        if (m == 0) return 0;
        double v = std::ceil(fn_(m));
        if (v < 1) return 1;
        if (v >= static_cast<double>(m)) return m;
        return static_cast<std::uint64_t>(v);
    }

    void validate(std::uint64_t n) const {
        constexpr double slack = 1e-9;
        double prev = fn_(1);
        if (std::abs(prev - 1.0) > slack)
            throw parameter_error("query rate function must have f(1) = 1, got f(1) = " +
                                  std::to_string(prev));
        for (std::uint64_t m = 1; m < n; ++m) {
            double next = fn_(m + 1);
            if (next < prev * (1.0 - slack))
                throw parameter_error("query rate function not monotone at m = " +
                                      std::to_string(m));
            double cap = (1.0 + 1.0 / static_cast<double>(m)) * prev;
            if (next > cap * (1.0 + slack))
                throw parameter_error("query rate function grows too fast at m = " +
                                      std::to_string(m));
            prev = next;
        }
    }

    // f(x) = x^alpha for alpha in [0,1]. alpha = 1 is the full query rate
    // (KwikCluster regime), alpha = 0 is the constant function 1.
    static QueryRateFunction power_law(double alpha) {
        if (alpha < 0 || alpha > 1)
            throw parameter_error("power-law exponent must be in [0,1]");
        return QueryRateFunction(
            [alpha](std::uint64_t m) { return std::pow(static_cast<double>(m), alpha); },
            "x^" + std::to_string(alpha));
    }

    static QueryRateFunction identity() {
        return QueryRateFunction([](std::uint64_t m) { return static_cast<double>(m); }, "x");
    }

private:
    std::function<double(std::uint64_t)> fn_;
    std::string tag_;
};

} // namespace pivotcc
