#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace tldrkit {

// Deterministic cross-platform RNG for dataset splitting. The exact
// algorithm is part of the file-format contract: any reimplementation
// that follows the recipe below reproduces identical splits.
//
//   1. splitmix64 (Steele/Lea/Flood) expands the user seed into the
//      four 64-bit words of xoshiro256** state, in stream order.
//   2. xoshiro256** 1.0 (Blackman/Vigna) generates the draws.
//   3. Bounded draws use plain modulo: j = next() % bound.
//   4. Fisher-Yates runs from the top: for i = n-1 .. 1,
//      swap(a[i], a[j]) with j = bounded(i + 1).

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

class Xoshiro256StarStar {
public:
    explicit Xoshiro256StarStar(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform draw in [0, bound) by modulo reduction. The bias is
    /// irrelevant at corpus sizes and keeps the recipe one line.
    std::uint64_t bounded(std::uint64_t bound) { return next() % bound; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

/// Fisher-Yates permutation of [0, n) under the pinned RNG recipe.
inline std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Xoshiro256StarStar rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.bounded(i));
        std::swap(idx[i - 1], idx[j]);
    }
    return idx;
}

}  // namespace tldrkit
