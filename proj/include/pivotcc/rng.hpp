#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pivotcc {

using Seed = std::uint64_t;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent child seed from a master seed and up to three
// stream tags. Every source of randomness in the library is a named
// stream obtained this way; there is no global RNG state.
inline Seed derive_seed(Seed master, std::uint64_t a, std::uint64_t b = 0,
                        std::uint64_t c = 0) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    return h;
}

// Stream tags for derive_seed. Keeping them in one place guarantees two
// components never alias the same child stream by accident.
enum StreamTag : std::uint64_t {
    kStreamDataset = 0x11,
    kStreamPerturb = 0x22,
    kStreamRun     = 0x33,
    kStreamAcrRun  = 0x44,
    kStreamErm     = 0x55,
};

// Deterministic RNG with explicit helpers. mt19937_64 output is fully
// specified by the standard, and the bounded-draw / double helpers below
// avoid std::uniform_*_distribution, whose output is implementation
// defined. The same seed therefore replays the same stream on any
// conforming compiler.
class Rng {
public:
    explicit Rng(Seed seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased draw from {0, ..., bound-1} via bitmask rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0} >> countl_zero_(bound - 1);
        std::uint64_t v;
        do {
            v = engine_() & mask;
        } while (v >= bound);
        return v;
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Partial Fisher-Yates: after the call, items[0..k) is a uniform
    // k-subset of the input in random order; items[k..) holds the rest.
    template <typename T>
    void shuffle_prefix(std::vector<T>& items, std::size_t k) {
        const std::size_t m = items.size();
        if (k > m) k = m;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(below(m - i));
            std::swap(items[i], items[j]);
        }
    }

private:
    static int countl_zero_(std::uint64_t x) {
        int c = 0;
        for (std::uint64_t probe = std::uint64_t{1} << 63; probe && !(x & probe); probe >>= 1) ++c;
        return c;
    }

    std::mt19937_64 engine_;
};

} // namespace pivotcc
