#pragma once

#include <cstdint>
#include <cstdlib>

#include "kvh/scalar.hpp"

namespace kvh {

// splitmix64: tiny deterministic generator for property tests. The only
// randomized inputs in the project flow through this, seeded by KVH_SEED.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    static uint64_t seed_from_env(uint64_t fallback = 20240817u) {
        if (const char* s = std::getenv("KVH_SEED")) return std::strtoull(s, nullptr, 10);
        return fallback;
    }

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    // Small rational in [-max, max] with denominator 1 or 2; plenty of
    // variety for exercising exact identities without entry blowup.
    Scalar small_scalar(long max = 3) {
        long num = static_cast<long>(below(2 * max + 1)) - max;
        long den = below(2) ? 2 : 1;
        return Scalar(num, den);
    }

private:
    uint64_t state_;
};

}  // namespace kvh
